#include "mmph/morphology.hpp"

#include <algorithm>
#include <set>

namespace mmph {

namespace {

/// out[i] = extremum of in[max(0, i+lo) .. min(n-1, i+hi)] for i in [0, n).
/// Monotone-deque sliding window; requires lo <= 0 <= hi so that every
/// clipped window is nonempty.
template <typename T, bool TakeMin>
void sliding_extremum(const T* in, int n, int lo, int hi, T* out) {
    std::vector<int> dq(static_cast<std::size_t>(n));
    int head = 0;
    int tail = 0;
    int added = -1;
    for (int i = 0; i < n; ++i) {
        const int s = std::max(0, i + lo);
        const int e = std::min(n - 1, i + hi);
        while (added < e) {
            ++added;
            while (tail > head &&
                   (TakeMin ? in[added] <= in[dq[tail - 1]]
                            : in[added] >= in[dq[tail - 1]])) {
                --tail;
            }
            dq[tail++] = added;
        }
        while (dq[head] < s) ++head;
        out[i] = in[dq[head]];
    }
}

/// Separable pass for rectangular SEs: a row filter with the x-extent
/// followed by a column filter with the y-extent. Border clipping factors
/// through because the x and y clamps are independent.
template <typename T, bool TakeMin>
std::vector<T> rect_extremum(const std::vector<T>& in, int w, int h,
                             int xlo, int xhi, int ylo, int yhi) {
    std::vector<T> tmp(in.size());
    for (int y = 0; y < h; ++y) {
        sliding_extremum<T, TakeMin>(in.data() + static_cast<std::size_t>(y) * w, w,
                                     xlo, xhi, tmp.data() + static_cast<std::size_t>(y) * w);
    }
    std::vector<T> out(in.size());
    std::vector<T> col(static_cast<std::size_t>(h));
    std::vector<T> colout(static_cast<std::size_t>(h));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[y] = tmp[static_cast<std::size_t>(y) * w + x];
        sliding_extremum<T, TakeMin>(col.data(), h, ylo, yhi, colout.data());
        for (int y = 0; y < h; ++y) out[static_cast<std::size_t>(y) * w + x] = colout[y];
    }
    return out;
}

template <typename T, bool Erode>
std::vector<T> direct_scan(const std::vector<T>& in, int w, int h,
                           const StructuringElement& se) {
    std::vector<T> out(in.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // The origin offset always probes (x, y) itself, so `best`
            // starts from the pixel's own value.
            T best = in[static_cast<std::size_t>(y) * w + x];
            for (const auto& [dx, dy] : se.offsets()) {
                const int px = Erode ? x + dx : x - dx;
                const int py = Erode ? y + dy : y - dy;
                if (px < 0 || px >= w || py < 0 || py >= h) continue;
                const T v = in[static_cast<std::size_t>(py) * w + px];
                best = Erode ? std::min(best, v) : std::max(best, v);
            }
            out[static_cast<std::size_t>(y) * w + x] = best;
        }
    }
    return out;
}

template <typename T>
std::vector<T> erode_values(const std::vector<T>& in, int w, int h,
                            const StructuringElement& se) {
    if (se.is_rectangle()) {
        return rect_extremum<T, true>(in, w, h, se.min_dx(), se.max_dx(),
                                      se.min_dy(), se.max_dy());
    }
    return direct_scan<T, true>(in, w, h, se);
}

template <typename T>
std::vector<T> dilate_values(const std::vector<T>& in, int w, int h,
                             const StructuringElement& se) {
    if (se.is_rectangle()) {
        // max over f(x - d) for d in [lo, hi] reads the window [x-hi, x-lo].
        return rect_extremum<T, false>(in, w, h, -se.max_dx(), -se.min_dx(),
                                       -se.max_dy(), -se.min_dy());
    }
    return direct_scan<T, false>(in, w, h, se);
}

}  // namespace

StructuringElement::StructuringElement(std::vector<Offset> offsets)
    : offsets_(std::move(offsets)) {
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
    if (!std::binary_search(offsets_.begin(), offsets_.end(), Offset{0, 0})) {
        throw Error("structuring element must contain the origin (0, 0)");
    }
    min_dx_ = max_dx_ = 0;
    min_dy_ = max_dy_ = 0;
    for (const auto& [dx, dy] : offsets_) {
        min_dx_ = std::min(min_dx_, dx);
        max_dx_ = std::max(max_dx_, dx);
        min_dy_ = std::min(min_dy_, dy);
        max_dy_ = std::max(max_dy_, dy);
    }
    const std::size_t box = static_cast<std::size_t>(max_dx_ - min_dx_ + 1) *
                            static_cast<std::size_t>(max_dy_ - min_dy_ + 1);
    is_rectangle_ = offsets_.size() == box;
}

bool StructuringElement::contains(int dx, int dy) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), Offset{dx, dy});
}

bool StructuringElement::subset_of(const StructuringElement& other) const {
    return std::includes(other.offsets_.begin(), other.offsets_.end(),
                         offsets_.begin(), offsets_.end());
}

StructuringElement square_se(int n) {
    if (n < 1) {
        throw InvalidIndex("square SE index must be at least 1, got " + std::to_string(n));
    }
    std::set<StructuringElement::Offset> cur{{0, 0}};
    for (int k = 2; k <= n; ++k) {
        // Even steps extend toward +x/+y, odd steps toward -x/-y, so the
        // family stays nested and centered around the origin.
        const int d = (k % 2 == 0) ? 1 : -1;
        std::set<StructuringElement::Offset> next = cur;
        for (const auto& [dx, dy] : cur) {
            next.insert({dx + d, dy});
            next.insert({dx, dy + d});
            next.insert({dx + d, dy + d});
        }
        cur = std::move(next);
    }
    return StructuringElement(std::vector<StructuringElement::Offset>(cur.begin(), cur.end()));
}

GrayscaleImage erode(const GrayscaleImage& f, const StructuringElement& se) {
    return GrayscaleImage(f.width(), f.height(),
                          erode_values(f.values(), f.width(), f.height(), se),
                          f.max_value());
}

GrayscaleImage dilate(const GrayscaleImage& f, const StructuringElement& se) {
    return GrayscaleImage(f.width(), f.height(),
                          dilate_values(f.values(), f.width(), f.height(), se),
                          f.max_value());
}

BinaryImage erode(const BinaryImage& f, const StructuringElement& se) {
    return BinaryImage(f.width(), f.height(),
                       erode_values(f.bits(), f.width(), f.height(), se));
}

BinaryImage dilate(const BinaryImage& f, const StructuringElement& se) {
    return BinaryImage(f.width(), f.height(),
                       dilate_values(f.bits(), f.width(), f.height(), se));
}

GrayscaleImage open(const GrayscaleImage& f, const StructuringElement& se) {
    return dilate(erode(f, se), se);
}

GrayscaleImage close(const GrayscaleImage& f, const StructuringElement& se) {
    return erode(dilate(f, se), se);
}

BinaryImage open(const BinaryImage& f, const StructuringElement& se) {
    return dilate(erode(f, se), se);
}

BinaryImage close(const BinaryImage& f, const StructuringElement& se) {
    return erode(dilate(f, se), se);
}

GrayscaleImage erode_reference(const GrayscaleImage& f, const StructuringElement& se) {
    return GrayscaleImage(f.width(), f.height(),
                          direct_scan<int, true>(f.values(), f.width(), f.height(), se),
                          f.max_value());
}

GrayscaleImage dilate_reference(const GrayscaleImage& f, const StructuringElement& se) {
    return GrayscaleImage(f.width(), f.height(),
                          direct_scan<int, false>(f.values(), f.width(), f.height(), se),
                          f.max_value());
}

BinaryImage erode_reference(const BinaryImage& f, const StructuringElement& se) {
    return BinaryImage(f.width(), f.height(),
                       direct_scan<std::uint8_t, true>(f.bits(), f.width(), f.height(), se));
}

BinaryImage dilate_reference(const BinaryImage& f, const StructuringElement& se) {
    return BinaryImage(f.width(), f.height(),
                       direct_scan<std::uint8_t, false>(f.bits(), f.width(), f.height(), se));
}

}  // namespace mmph
