#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmph/error.hpp"

namespace mmph {

/// Row-major grayscale image with integer values in [0, max_value].
/// Pixel (x, y) addresses column x of row y; row 0 is the top row.
class GrayscaleImage {
public:
    GrayscaleImage(int width, int height, int max_value = 255);
    GrayscaleImage(int width, int height, std::vector<int> values,
                   int max_value = 255);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int max_value() const noexcept { return max_value_; }
    std::size_t pixel_count() const noexcept { return values_.size(); }

    int at(int x, int y) const {
        return values_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, int value);

    const std::vector<int>& values() const noexcept { return values_; }

    bool operator==(const GrayscaleImage&) const = default;

private:
    int width_;
    int height_;
    int max_value_;
    std::vector<int> values_;
};

/// Binary image over {0, 1}. Value 0 is black; black pixels are the
/// foreground and carry the topology throughout the library.
class BinaryImage {
public:
    BinaryImage(int width, int height, std::uint8_t fill = 1);
    BinaryImage(int width, int height, std::vector<std::uint8_t> bits);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return bits_.size(); }

    std::uint8_t at(int x, int y) const {
        return bits_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, std::uint8_t value);
    bool black(int x, int y) const { return at(x, y) == 0; }

    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    bool operator==(const BinaryImage&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

enum class ImageFormat { pgm_ascii, pgm_binary, csv_grid };

/// Decodes a byte string in the given format. P2 and P5 headers may carry
/// '#' comments; CSV grids are plain integers, one row per line.
GrayscaleImage load_image(const std::string& bytes, ImageFormat format);

/// Canonical encoder. load_image(serialize_image(img, F), F) == img for
/// every format F; serialization is byte-deterministic.
std::string serialize_image(const GrayscaleImage& img, ImageFormat format);

/// Reads a file, choosing the format from the P2/P5 magic, with CSV as the
/// fallback for anything else.
GrayscaleImage read_image_file(const std::string& path);
void write_image_file(const GrayscaleImage& img, const std::string& path,
                      ImageFormat format);

/// b(x, y) = 0 (black) iff f(x, y) <= t.
BinaryImage threshold(const GrayscaleImage& f, int t);

/// Sets floor(fraction * pixel_count) distinct pixels to max_value.
///
/// The victim set is reproducible across platforms: a std::mt19937_64
/// seeded with `seed` drives a Fisher-Yates prefix shuffle of the pixel
/// indices, drawing each step as `i + gen() % (n - i)`. No distribution
/// adapters are involved, so identical seeds give identical images
/// everywhere.
GrayscaleImage add_salt_noise(const GrayscaleImage& f, double fraction,
                              std::uint64_t seed);

/// Swaps black and white.
BinaryImage complement(const BinaryImage& b);

/// Pointwise f <= g; throws DimensionMismatch on shape disagreement.
bool image_leq(const GrayscaleImage& f, const GrayscaleImage& g);
bool image_leq(const BinaryImage& f, const BinaryImage& g);

/// Lossless embeddings between the two pixel types. to_binary rejects any
/// value outside {0, 1}.
GrayscaleImage to_grayscale(const BinaryImage& b);
BinaryImage to_binary(const GrayscaleImage& img);

}  // namespace mmph
