#include "mmph/filtration.hpp"

#include <algorithm>

namespace mmph {

namespace {

void check_se_indices(const std::vector<int>& indices) {
    if (indices.empty()) {
        throw InvalidIndex("morphological filtration needs at least one SE index");
    }
    int prev = 0;
    for (int n : indices) {
        if (n < 1) {
            throw InvalidIndex("SE index must be at least 1, got " + std::to_string(n));
        }
        if (n <= prev) {
            throw InvalidIndex("SE indices must be strictly increasing");
        }
        prev = n;
    }
}

bool one_sided(FiltrationKind kind) {
    return kind == FiltrationKind::erosion || kind == FiltrationKind::dilation ||
           kind == FiltrationKind::opening || kind == FiltrationKind::closing;
}

}  // namespace

EntryTimeGrid::EntryTimeGrid(int width, int height, std::vector<int> times,
                             int max_level, int origin_offset)
    : width_(width),
      height_(height),
      max_level_(max_level),
      origin_offset_(origin_offset),
      times_(std::move(times)) {
    if (width_ <= 0 || height_ <= 0) {
        throw EmptyImage("entry time grid must have positive dimensions");
    }
    const std::size_t expected = static_cast<std::size_t>(width_) * height_;
    if (times_.size() != expected) {
        throw DimensionMismatch("time buffer holds " + std::to_string(times_.size()) +
                                " entries, shape needs " + std::to_string(expected));
    }
    if (max_level_ < 0) {
        throw ValueOutOfRange("max_level must be nonnegative");
    }
    if (origin_offset_ < 0 || origin_offset_ > max_level_) {
        throw ValueOutOfRange("origin_offset must lie in [0, max_level]");
    }
    for (int t : times_) {
        if (t != never && (t < 0 || t > max_level_)) {
            throw ValueOutOfRange("entry time " + std::to_string(t) +
                                  " outside [0, " + std::to_string(max_level_) + "]");
        }
    }
}

BinaryImage EntryTimeGrid::level_set(int t) const {
    std::vector<std::uint8_t> bits(times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) {
        bits[i] = times_[i] <= t ? 0 : 1;
    }
    return BinaryImage(width_, height_, std::move(bits));
}

const char* to_string(FiltrationKind kind) {
    switch (kind) {
        case FiltrationKind::erosion: return "erosion";
        case FiltrationKind::dilation: return "dilation";
        case FiltrationKind::combined_ed: return "combined-ed";
        case FiltrationKind::opening: return "opening";
        case FiltrationKind::closing: return "closing";
        case FiltrationKind::combined_oc: return "combined-oc";
        case FiltrationKind::sublevel: return "sublevel";
        case FiltrationKind::explicit_sequence: return "explicit";
    }
    return "unknown";
}

FiltrationKind filtration_kind_from_string(const std::string& name) {
    if (name == "erosion") return FiltrationKind::erosion;
    if (name == "dilation") return FiltrationKind::dilation;
    if (name == "combined-ed") return FiltrationKind::combined_ed;
    if (name == "opening") return FiltrationKind::opening;
    if (name == "closing") return FiltrationKind::closing;
    if (name == "combined-oc") return FiltrationKind::combined_oc;
    if (name == "sublevel") return FiltrationKind::sublevel;
    if (name == "explicit") return FiltrationKind::explicit_sequence;
    throw MalformedInput("unknown filtration kind: '" + name + "'");
}

bool default_cap(FiltrationKind kind) {
    switch (kind) {
        case FiltrationKind::erosion:
        case FiltrationKind::opening:
        case FiltrationKind::combined_ed:
        case FiltrationKind::combined_oc:
            return true;
        default:
            return false;
    }
}

FiltrationSpec make_spec(FiltrationKind kind, std::vector<int> se_indices) {
    FiltrationSpec spec;
    spec.kind = kind;
    spec.se_indices = std::move(se_indices);
    spec.cap_all_black = default_cap(kind);
    return spec;
}

EntryTimeGrid from_nested_sequence(const std::vector<BinaryImage>& stages,
                                   int origin_offset) {
    if (stages.empty()) {
        throw EmptyImage("nested sequence must contain at least one stage");
    }
    const int w = stages[0].width();
    const int h = stages[0].height();
    std::vector<int> times(static_cast<std::size_t>(w) * h, EntryTimeGrid::never);
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const BinaryImage& stage = stages[s];
        if (stage.width() != w || stage.height() != h) {
            throw DimensionMismatch("stage " + std::to_string(s) +
                                    " differs in shape from stage 0");
        }
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const bool black = stage.black(x, y);
                int& t = times[static_cast<std::size_t>(y) * w + x];
                if (black && t == EntryTimeGrid::never) {
                    t = static_cast<int>(s);
                } else if (!black && t != EntryTimeGrid::never) {
                    throw NonMonotoneSequence(static_cast<int>(s), x, y);
                }
            }
        }
    }
    return EntryTimeGrid(w, h, std::move(times),
                         static_cast<int>(stages.size()) - 1, origin_offset);
}

std::vector<BinaryImage> mm_stages(const BinaryImage& f, const FiltrationSpec& spec) {
    if (spec.kind == FiltrationKind::sublevel ||
        spec.kind == FiltrationKind::explicit_sequence) {
        throw InvalidIndex(std::string("mm_stages does not handle kind '") +
                           to_string(spec.kind) + "'");
    }
    check_se_indices(spec.se_indices);
    std::vector<StructuringElement> ses;
    ses.reserve(spec.se_indices.size());
    for (int n : spec.se_indices) ses.push_back(square_se(n));

    std::vector<BinaryImage> stages;
    const auto grow_side = [&](bool use_open) {
        // Erosion and opening add black as the SE grows, so ascending order.
        for (const auto& se : ses) {
            stages.push_back(use_open ? open(f, se) : erode(f, se));
        }
    };
    const auto shrink_side = [&](bool use_close) {
        // Dilation and closing remove black as the SE grows, so the largest
        // SE comes first and the sequence ends just before f.
        for (auto it = ses.rbegin(); it != ses.rend(); ++it) {
            stages.push_back(use_close ? close(f, *it) : dilate(f, *it));
        }
    };

    switch (spec.kind) {
        case FiltrationKind::erosion:
            stages.push_back(f);
            grow_side(false);
            break;
        case FiltrationKind::opening:
            stages.push_back(f);
            grow_side(true);
            break;
        case FiltrationKind::dilation:
            shrink_side(false);
            stages.push_back(f);
            break;
        case FiltrationKind::closing:
            shrink_side(true);
            stages.push_back(f);
            break;
        case FiltrationKind::combined_ed:
            shrink_side(false);
            stages.push_back(f);
            grow_side(false);
            break;
        case FiltrationKind::combined_oc:
            shrink_side(true);
            stages.push_back(f);
            grow_side(true);
            break;
        default:
            break;
    }
    if (spec.cap_all_black) {
        stages.emplace_back(f.width(), f.height(), std::uint8_t{0});
    }
    return stages;
}

EntryTimeGrid mm_filtration(const BinaryImage& f, const FiltrationSpec& spec) {
    const std::vector<BinaryImage> stages = mm_stages(f, spec);
    int origin = 0;
    if (spec.kind == FiltrationKind::dilation || spec.kind == FiltrationKind::closing ||
        spec.kind == FiltrationKind::combined_ed ||
        spec.kind == FiltrationKind::combined_oc) {
        origin = static_cast<int>(spec.se_indices.size());
    }
    return from_nested_sequence(stages, origin);
}

EntryTimeGrid sublevel_filtration(const GrayscaleImage& f) {
    return EntryTimeGrid(f.width(), f.height(), f.values(), f.max_value(), 0);
}

bool verify_bifiltration_square(const GrayscaleImage& f, FiltrationKind op,
                                int n1, int n2, int t1, int t2) {
    if (!one_sided(op)) {
        throw InvalidIndex(std::string("bifiltration square needs a one-sided kind, got '") +
                           to_string(op) + "'");
    }
    if (n1 < 1 || n2 < n1) {
        throw InvalidIndex("need 1 <= n1 <= n2");
    }
    if (t1 > t2) {
        throw InvalidThresholds("need t1 <= t2");
    }
    const StructuringElement b1 = square_se(n1);
    const StructuringElement b2 = square_se(n2);
    const auto apply = [&](const BinaryImage& g, const StructuringElement& se) {
        switch (op) {
            case FiltrationKind::erosion: return erode(g, se);
            case FiltrationKind::dilation: return dilate(g, se);
            case FiltrationKind::opening: return open(g, se);
            default: return close(g, se);
        }
    };
    const BinaryImage tau1 = threshold(f, t1);
    const BinaryImage tau2 = threshold(f, t2);
    const BinaryImage a11 = apply(tau1, b1);
    const BinaryImage a12 = apply(tau2, b1);
    const BinaryImage a21 = apply(tau1, b2);
    const BinaryImage a22 = apply(tau2, b2);

    // black(X) is a subset of black(Y) exactly when Y <= X pointwise.
    const bool horiz = image_leq(a12, a11) && image_leq(a22, a21);
    bool vert;
    if (op == FiltrationKind::erosion || op == FiltrationKind::opening) {
        // The bigger SE adds black: the arrow points from n1 to n2.
        vert = image_leq(a21, a11) && image_leq(a22, a12);
    } else {
        vert = image_leq(a11, a21) && image_leq(a12, a22);
    }
    return horiz && vert;
}

std::string serialize_grid(const EntryTimeGrid& grid) {
    std::string out;
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            if (x > 0) out += ',';
            const int t = grid.at(x, y);
            if (t == EntryTimeGrid::never) out += "inf";
            else out += std::to_string(t);
        }
        out += '\n';
    }
    return out;
}

EntryTimeGrid parse_grid(const std::string& bytes) {
    std::vector<int> times;
    std::vector<std::size_t> row_widths;
    std::size_t pos = 0;
    int max_finite = 0;
    while (pos <= bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) eol = bytes.size();
        std::string line = bytes.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const bool last = eol == bytes.size();
        pos = eol + 1;
        if (line.empty()) {
            if (last) break;
            throw MalformedInput("empty line inside grid CSV");
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
                throw MalformedInput("empty cell in grid CSV");
            }
            const auto after = cell.find_last_not_of(" \t");
            cell = cell.substr(first, after - first + 1);
            if (cell == "inf") {
                times.push_back(EntryTimeGrid::never);
            } else {
                long long v = 0;
                try {
                    std::size_t used = 0;
                    v = std::stoll(cell, &used);
                    if (used != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw MalformedInput("grid cell is not an integer or inf: '" + cell + "'");
                }
                if (v < 0 || v >= EntryTimeGrid::never) {
                    throw ValueOutOfRange("grid entry " + std::to_string(v) + " out of range");
                }
                times.push_back(static_cast<int>(v));
                max_finite = std::max(max_finite, static_cast<int>(v));
            }
            ++cells;
            if (comma == line.size()) break;
        }
        row_widths.push_back(cells);
        if (last) break;
    }
    if (row_widths.empty()) {
        throw EmptyImage("grid CSV has no rows");
    }
    for (std::size_t r = 1; r < row_widths.size(); ++r) {
        if (row_widths[r] != row_widths[0]) {
            throw MalformedInput("grid CSV row " + std::to_string(r) + " has " +
                                 std::to_string(row_widths[r]) + " cells, expected " +
                                 std::to_string(row_widths[0]));
        }
    }
    return EntryTimeGrid(static_cast<int>(row_widths[0]),
                         static_cast<int>(row_widths.size()), std::move(times),
                         max_finite, 0);
}

}  // namespace mmph
