#include "mmph/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace mmph {

namespace {

void check_shape(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw EmptyImage("image must have at least one row and one column, got " +
                         std::to_string(width) + "x" + std::to_string(height));
    }
}

std::size_t checked_area(int width, int height) {
    check_shape(width, height);
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

/// Sequential reader over the PGM header area: '#' starts a comment that
/// runs to the end of the line and counts as whitespace.
struct PgmCursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < s.size()) {
            const char c = s[pos];
            if (c == '#') {
                while (pos < s.size() && s[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long long next_int(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) {
            throw MalformedInput(std::string("expected integer for ") + what);
        }
        return std::stoll(s.substr(start, pos - start));
    }

    bool at_end() {
        skip_space_and_comments();
        return pos >= s.size();
    }
};

GrayscaleImage load_pgm(const std::string& bytes, bool binary_raster) {
    const char* magic = binary_raster ? "P5" : "P2";
    if (bytes.size() < 2 || bytes.compare(0, 2, magic) != 0) {
        throw MalformedInput(std::string("missing ") + magic + " magic");
    }
    PgmCursor cur{bytes, 2};
    const long long w = cur.next_int("width");
    const long long h = cur.next_int("height");
    if (w <= 0 || h <= 0) {
        throw EmptyImage("PGM dimensions must be positive, got " +
                         std::to_string(w) + "x" + std::to_string(h));
    }
    const long long maxval = cur.next_int("max value");
    if (maxval < 1 || maxval > 65535) {
        throw MalformedInput("PGM max value must lie in [1, 65535], got " +
                             std::to_string(maxval));
    }
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<int> values;
    values.reserve(n);

    if (binary_raster) {
        if (maxval > 255) {
            throw MalformedInput("two-byte P5 rasters are not supported");
        }
        // Exactly one whitespace byte separates the header from the raster.
        if (cur.pos >= bytes.size() ||
            !std::isspace(static_cast<unsigned char>(bytes[cur.pos]))) {
            throw MalformedInput("P5 header must end with a whitespace byte");
        }
        ++cur.pos;
        if (bytes.size() - cur.pos != n) {
            throw MalformedInput("P5 raster has " + std::to_string(bytes.size() - cur.pos) +
                                 " bytes, expected " + std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const int v = static_cast<unsigned char>(bytes[cur.pos + i]);
            if (v > maxval) {
                throw ValueOutOfRange("pixel value " + std::to_string(v) +
                                      " exceeds declared max " + std::to_string(maxval));
            }
            values.push_back(v);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const long long v = cur.next_int("pixel");
            if (v < 0 || v > maxval) {
                throw ValueOutOfRange("pixel value " + std::to_string(v) +
                                      " outside [0, " + std::to_string(maxval) + "]");
            }
            values.push_back(static_cast<int>(v));
        }
        if (!cur.at_end()) {
            throw MalformedInput("trailing data after P2 raster");
        }
    }
    return GrayscaleImage(static_cast<int>(w), static_cast<int>(h),
                          std::move(values), static_cast<int>(maxval));
}

GrayscaleImage load_csv(const std::string& bytes) {
    std::vector<int> values;
    std::vector<std::size_t> row_widths;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) eol = bytes.size();
        std::string line = bytes.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const bool last = eol == bytes.size();
        pos = eol + 1;
        if (line.empty()) {
            if (last) break;
            throw MalformedInput("empty line inside CSV grid");
        }
        std::size_t cells = 0;
        std::size_t cell_start = 0;
        while (cell_start <= line.size()) {
            std::size_t comma = line.find(',', cell_start);
            if (comma == std::string::npos) comma = line.size();
            std::string cell = line.substr(cell_start, comma - cell_start);
            cell_start = comma + 1;
            const auto first = cell.find_first_not_of(" \t");
            if (first == std::string::npos) {
                throw MalformedInput("empty cell in CSV grid");
            }
            const auto after = cell.find_last_not_of(" \t");
            cell = cell.substr(first, after - first + 1);
            long long v = 0;
            try {
                std::size_t used = 0;
                v = std::stoll(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw MalformedInput("CSV cell is not an integer: '" + cell + "'");
            }
            if (v < 0 || v > 255) {
                throw ValueOutOfRange("CSV pixel value " + std::to_string(v) +
                                      " outside [0, 255]");
            }
            values.push_back(static_cast<int>(v));
            ++cells;
            if (comma == line.size()) break;
        }
        row_widths.push_back(cells);
        if (last) break;
    }
    if (row_widths.empty()) {
        throw EmptyImage("CSV grid has no rows");
    }
    for (std::size_t r = 1; r < row_widths.size(); ++r) {
        if (row_widths[r] != row_widths[0]) {
            throw MalformedInput("CSV row " + std::to_string(r) + " has " +
                                 std::to_string(row_widths[r]) + " cells, expected " +
                                 std::to_string(row_widths[0]));
        }
    }
    return GrayscaleImage(static_cast<int>(row_widths[0]),
                          static_cast<int>(row_widths.size()), std::move(values));
}

}  // namespace

GrayscaleImage::GrayscaleImage(int width, int height, int max_value)
    : GrayscaleImage(width, height, std::vector<int>(checked_area(width, height)),
                     max_value) {}

GrayscaleImage::GrayscaleImage(int width, int height, std::vector<int> values,
                               int max_value)
    : width_(width), height_(height), max_value_(max_value), values_(std::move(values)) {
    check_shape(width, height);
    if (max_value_ < 1) {
        throw ValueOutOfRange("max_value must be at least 1, got " +
                              std::to_string(max_value_));
    }
    const std::size_t expected = static_cast<std::size_t>(width_) * height_;
    if (values_.size() != expected) {
        throw DimensionMismatch("value buffer holds " + std::to_string(values_.size()) +
                                " pixels, shape needs " + std::to_string(expected));
    }
    for (int v : values_) {
        if (v < 0 || v > max_value_) {
            throw ValueOutOfRange("pixel value " + std::to_string(v) + " outside [0, " +
                                  std::to_string(max_value_) + "]");
        }
    }
}

void GrayscaleImage::set(int x, int y, int value) {
    if (value < 0 || value > max_value_) {
        throw ValueOutOfRange("pixel value " + std::to_string(value) + " outside [0, " +
                              std::to_string(max_value_) + "]");
    }
    values_[static_cast<std::size_t>(y) * width_ + x] = value;
}

BinaryImage::BinaryImage(int width, int height, std::uint8_t fill)
    : BinaryImage(width, height,
                  std::vector<std::uint8_t>(checked_area(width, height), fill)) {}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    check_shape(width, height);
    const std::size_t expected = static_cast<std::size_t>(width_) * height_;
    if (bits_.size() != expected) {
        throw DimensionMismatch("bit buffer holds " + std::to_string(bits_.size()) +
                                " pixels, shape needs " + std::to_string(expected));
    }
    for (std::uint8_t b : bits_) {
        if (b > 1) {
            throw ValueOutOfRange("binary pixel must be 0 or 1, got " + std::to_string(b));
        }
    }
}

void BinaryImage::set(int x, int y, std::uint8_t value) {
    if (value > 1) {
        throw ValueOutOfRange("binary pixel must be 0 or 1, got " + std::to_string(value));
    }
    bits_[static_cast<std::size_t>(y) * width_ + x] = value;
}

GrayscaleImage load_image(const std::string& bytes, ImageFormat format) {
    switch (format) {
        case ImageFormat::pgm_ascii: return load_pgm(bytes, false);
        case ImageFormat::pgm_binary: return load_pgm(bytes, true);
        case ImageFormat::csv_grid: return load_csv(bytes);
    }
    throw MalformedInput("unknown image format");
}

std::string serialize_image(const GrayscaleImage& img, ImageFormat format) {
    std::string out;
    switch (format) {
        case ImageFormat::pgm_ascii: {
            out = "P2\n" + std::to_string(img.width()) + " " +
                  std::to_string(img.height()) + "\n" +
                  std::to_string(img.max_value()) + "\n";
            for (int y = 0; y < img.height(); ++y) {
                for (int x = 0; x < img.width(); ++x) {
                    if (x > 0) out += ' ';
                    out += std::to_string(img.at(x, y));
                }
                out += '\n';
            }
            return out;
        }
        case ImageFormat::pgm_binary: {
            if (img.max_value() > 255) {
                throw ValueOutOfRange("P5 supports max_value up to 255, image has " +
                                      std::to_string(img.max_value()));
            }
            out = "P5\n" + std::to_string(img.width()) + " " +
                  std::to_string(img.height()) + "\n" +
                  std::to_string(img.max_value()) + "\n";
            for (int y = 0; y < img.height(); ++y) {
                for (int x = 0; x < img.width(); ++x) {
                    out += static_cast<char>(static_cast<unsigned char>(img.at(x, y)));
                }
            }
            return out;
        }
        case ImageFormat::csv_grid: {
            for (int y = 0; y < img.height(); ++y) {
                for (int x = 0; x < img.width(); ++x) {
                    if (x > 0) out += ',';
                    out += std::to_string(img.at(x, y));
                }
                out += '\n';
            }
            return out;
        }
    }
    throw MalformedInput("unknown image format");
}

GrayscaleImage read_image_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    ImageFormat format = ImageFormat::csv_grid;
    if (bytes.rfind("P2", 0) == 0) format = ImageFormat::pgm_ascii;
    else if (bytes.rfind("P5", 0) == 0) format = ImageFormat::pgm_binary;
    return load_image(bytes, format);
}

void write_image_file(const GrayscaleImage& img, const std::string& path,
                      ImageFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    const std::string bytes = serialize_image(img, format);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write: " + path);
}

BinaryImage threshold(const GrayscaleImage& f, int t) {
    std::vector<std::uint8_t> bits(f.pixel_count());
    const auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        bits[i] = v[i] <= t ? 0 : 1;
    }
    return BinaryImage(f.width(), f.height(), std::move(bits));
}

GrayscaleImage add_salt_noise(const GrayscaleImage& f, double fraction,
                              std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ValueOutOfRange("noise fraction must lie in [0, 1]");
    }
    const std::size_t n = f.pixel_count();
    const std::size_t count = static_cast<std::size_t>(fraction * static_cast<double>(n));
    GrayscaleImage out = f;
    if (count == 0) return out;

    // Fisher-Yates prefix over the raw engine output. gen() % k is biased
    // in general but fully specified, which is what reproducibility needs;
    // std::uniform_int_distribution would not be portable across libraries.
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw Error("image too large for salt noise index table");
    }
    std::vector<std::uint32_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0u);
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen() % (n - i));
        std::swap(indices[i], indices[j]);
        const std::uint32_t p = indices[i];
        out.set(static_cast<int>(p % f.width()), static_cast<int>(p / f.width()),
                f.max_value());
    }
    return out;
}

BinaryImage complement(const BinaryImage& b) {
    std::vector<std::uint8_t> bits(b.pixel_count());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] = b.bits()[i] ^ 1u;
    }
    return BinaryImage(b.width(), b.height(), std::move(bits));
}

bool image_leq(const GrayscaleImage& f, const GrayscaleImage& g) {
    if (f.width() != g.width() || f.height() != g.height()) {
        throw DimensionMismatch("image_leq needs equal shapes");
    }
    for (std::size_t i = 0; i < f.pixel_count(); ++i) {
        if (f.values()[i] > g.values()[i]) return false;
    }
    return true;
}

bool image_leq(const BinaryImage& f, const BinaryImage& g) {
    if (f.width() != g.width() || f.height() != g.height()) {
        throw DimensionMismatch("image_leq needs equal shapes");
    }
    for (std::size_t i = 0; i < f.pixel_count(); ++i) {
        if (f.bits()[i] > g.bits()[i]) return false;
    }
    return true;
}

GrayscaleImage to_grayscale(const BinaryImage& b) {
    std::vector<int> values(b.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = b.bits()[i];
    }
    return GrayscaleImage(b.width(), b.height(), std::move(values), 1);
}

BinaryImage to_binary(const GrayscaleImage& img) {
    std::vector<std::uint8_t> bits(img.pixel_count());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const int v = img.values()[i];
        if (v != 0 && v != 1) {
            throw ValueOutOfRange("to_binary needs pixels in {0, 1}, found " +
                                  std::to_string(v));
        }
        bits[i] = static_cast<std::uint8_t>(v);
    }
    return BinaryImage(img.width(), img.height(), std::move(bits));
}

}  // namespace mmph
