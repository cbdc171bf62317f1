#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mmph/error.hpp"
#include "mmph/image.hpp"
#include "mmph/morphology.hpp"

namespace mmph {

/// Per-pixel entry times for a nested sequence of binary images.
///
/// at(x, y) is the first stage index at which the pixel is black, or
/// `never` if it stays white through the whole sequence. Finite entries lie
/// in [0, max_level]; origin_offset records which stage holds the original
/// image (stages before it come from extensive operators).
class EntryTimeGrid {
public:
    static constexpr int never = std::numeric_limits<int>::max();

    EntryTimeGrid(int width, int height, std::vector<int> times, int max_level,
                  int origin_offset = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int max_level() const noexcept { return max_level_; }
    int origin_offset() const noexcept { return origin_offset_; }
    std::size_t pixel_count() const noexcept { return times_.size(); }

    int at(int x, int y) const {
        return times_[static_cast<std::size_t>(y) * width_ + x];
    }
    const std::vector<int>& times() const noexcept { return times_; }

    /// Stage t of the filtration: black iff the entry time is <= t.
    BinaryImage level_set(int t) const;

    bool operator==(const EntryTimeGrid&) const = default;

private:
    int width_;
    int height_;
    int max_level_;
    int origin_offset_;
    std::vector<int> times_;
};

enum class FiltrationKind {
    erosion,
    dilation,
    combined_ed,
    opening,
    closing,
    combined_oc,
    sublevel,
    explicit_sequence,
};

const char* to_string(FiltrationKind kind);
FiltrationKind filtration_kind_from_string(const std::string& name);

/// Recipe for a morphological filtration over the square SE family.
/// se_indices must be strictly increasing and >= 1. cap_all_black appends a
/// totally black final stage so that every cycle eventually dies.
struct FiltrationSpec {
    FiltrationKind kind = FiltrationKind::erosion;
    std::vector<int> se_indices;
    bool cap_all_black = true;

    bool operator==(const FiltrationSpec&) const = default;
};

/// The conventional cap for each kind: capped where the final stage is not
/// already the richest image of interest (erosion, opening, combined),
/// uncapped for dilation and closing, which end at the original image.
bool default_cap(FiltrationKind kind);
FiltrationSpec make_spec(FiltrationKind kind, std::vector<int> se_indices);

/// Entry times of an arbitrary nested sequence. Throws NonMonotoneSequence
/// (with stage and pixel) as soon as some stage turns a black pixel white.
EntryTimeGrid from_nested_sequence(const std::vector<BinaryImage>& stages,
                                   int origin_offset = 0);

/// The explicit stage list realizing `spec` on `f`, cap included. Stage
/// order per kind, with B_i = square_se(spec.se_indices[i-1]) and n SEs:
///   erosion      f, erode(f, B_1), ..., erode(f, B_n)
///   dilation     dilate(f, B_n), ..., dilate(f, B_1), f
///   combined_ed  dilation stages, f, erosion stages
///   opening      f, open(f, B_1), ..., open(f, B_n)
///   closing      close(f, B_n), ..., close(f, B_1), f
///   combined_oc  closing stages, f, opening stages
std::vector<BinaryImage> mm_stages(const BinaryImage& f, const FiltrationSpec& spec);

/// from_nested_sequence over mm_stages, with origin_offset 0 for the
/// erosion/opening kinds and n for the others. Every sequence goes through
/// the nestedness check; nothing is assumed.
EntryTimeGrid mm_filtration(const BinaryImage& f, const FiltrationSpec& spec);

/// Sublevel-set filtration: entry time of each pixel is its gray value,
/// max_level is the image's declared max_value.
EntryTimeGrid sublevel_filtration(const GrayscaleImage& f);

/// Checks the commuting square of the threshold-by-SE bifiltration at
/// thresholds t1 <= t2 and square SE indices n1 <= n2 under one of the four
/// one-sided operators. Returns true iff all four inclusions hold.
bool verify_bifiltration_square(const GrayscaleImage& f, FiltrationKind op,
                                int n1, int n2, int t1, int t2);

/// CSV serialization of entry times, one row per line, `inf` for pixels
/// that never enter. parse_grid recovers max_level as the largest finite
/// entry (0 for an all-inf grid) and origin_offset 0; the format carries
/// times only.
std::string serialize_grid(const EntryTimeGrid& grid);
EntryTimeGrid parse_grid(const std::string& bytes);

}  // namespace mmph
