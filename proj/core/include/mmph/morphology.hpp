#pragma once

#include <utility>
#include <vector>

#include "mmph/error.hpp"
#include "mmph/image.hpp"

namespace mmph {

/// Finite set of (dx, dy) probe offsets. Offsets are stored sorted and
/// deduplicated; the origin (0, 0) must be a member, which makes erosion
/// anti-extensive and dilation extensive without further conditions.
class StructuringElement {
public:
    using Offset = std::pair<int, int>;

    explicit StructuringElement(std::vector<Offset> offsets);

    const std::vector<Offset>& offsets() const noexcept { return offsets_; }
    std::size_t size() const noexcept { return offsets_.size(); }

    bool contains(int dx, int dy) const;
    bool subset_of(const StructuringElement& other) const;

    int min_dx() const noexcept { return min_dx_; }
    int max_dx() const noexcept { return max_dx_; }
    int min_dy() const noexcept { return min_dy_; }
    int max_dy() const noexcept { return max_dy_; }

    /// True when the offsets tile the whole bounding box. Rectangles decompose
    /// into a horizontal and a vertical segment, enabling the separable
    /// sliding-window fast path.
    bool is_rectangle() const noexcept { return is_rectangle_; }

    bool operator==(const StructuringElement&) const = default;

private:
    std::vector<Offset> offsets_;
    int min_dx_;
    int max_dx_;
    int min_dy_;
    int max_dy_;
    bool is_rectangle_;
};

/// n-th element of the square family: square_se(1) = {(0, 0)}, and each
/// step widens the square by one, alternating between the lower-right and
/// the upper-left direction. square_se(n) has n^2 offsets and every
/// square_se(k) with k <= n as a subset.
StructuringElement square_se(int n);

/// Erosion: out(x, y) = min over SE offsets (dx, dy) of f(x + dx, y + dy),
/// the min running over probes that land inside the image. Dilation is the
/// max over f(x - dx, y - dy), again clipped to the image. On binary images
/// erosion grows black and dilation shrinks it, because black is 0.
///
/// These entry points dispatch to a separable sliding-window pass for
/// rectangular SEs and to the direct scan otherwise; both agree with the
/// *_reference implementations on every input.
GrayscaleImage erode(const GrayscaleImage& f, const StructuringElement& se);
GrayscaleImage dilate(const GrayscaleImage& f, const StructuringElement& se);
BinaryImage erode(const BinaryImage& f, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& f, const StructuringElement& se);

/// Opening = dilate(erode(f)), closing = erode(dilate(f)), both with the
/// same SE. Idempotent; opening <= f <= closing pointwise.
GrayscaleImage open(const GrayscaleImage& f, const StructuringElement& se);
GrayscaleImage close(const GrayscaleImage& f, const StructuringElement& se);
BinaryImage open(const BinaryImage& f, const StructuringElement& se);
BinaryImage close(const BinaryImage& f, const StructuringElement& se);

/// Direct O(pixels * |SE|) scans, kept as the semantic ground truth.
GrayscaleImage erode_reference(const GrayscaleImage& f, const StructuringElement& se);
GrayscaleImage dilate_reference(const GrayscaleImage& f, const StructuringElement& se);
BinaryImage erode_reference(const BinaryImage& f, const StructuringElement& se);
BinaryImage dilate_reference(const BinaryImage& f, const StructuringElement& se);

}  // namespace mmph
