#include "mmph/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mmph {

namespace {

constexpr const char* kDimColor[2] = {"#1f77b4", "#d62728"};
constexpr int kMarginLeft = 56;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 16;
constexpr int kMarginBottom = 44;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

/// Tiny element writer; every coordinate goes through px() so documents are
/// byte-stable.
struct Svg {
    int w;
    int h;
    std::string body;

    void rect(double x, double y, double rw, double rh, const char* fill) {
        body += "<rect x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(rw) +
                "\" height=\"" + px(rh) + "\" fill=\"" + fill + "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const char* stroke,
              double sw, bool dashed = false) {
        body += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) +
                "\" y2=\"" + px(y2) + "\" stroke=\"" + std::string(stroke) +
                "\" stroke-width=\"" + px(sw) + "\"";
        if (dashed) body += " stroke-dasharray=\"4 3\"";
        body += "/>\n";
    }
    void circle(double cx, double cy, double r, const char* fill) {
        body += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) +
                "\" fill=\"" + fill + "\" fill-opacity=\"0.85\"/>\n";
    }
    void polygon(const std::string& points, const char* fill) {
        body += "<polygon points=\"" + points + "\" fill=\"" + fill + "\"/>\n";
    }
    void text(double x, double y, const char* anchor, int size,
              const std::string& s, const char* fill = "#333333",
              const std::string& transform = "") {
        body += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
                anchor + "\" font-family=\"monospace\" font-size=\"" +
                std::to_string(size) + "\" fill=\"" + fill + "\"";
        if (!transform.empty()) body += " transform=\"" + transform + "\"";
        body += ">" + s + "</text>\n";
    }
    std::string finish() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               std::to_string(w) + "\" height=\"" + std::to_string(h) +
               "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
               "\">\n" + body + "</svg>\n";
    }
};

struct Frame {
    double lo;
    double hi;
    int w;
    int h;
    int top_band;  // room above hi reserved for the essential line

    double X(double v) const {
        return kMarginLeft + (v - lo) / (hi - lo) * (w - kMarginLeft - kMarginRight);
    }
    double Y(double v) const {
        const double floor_y = h - kMarginBottom;
        return floor_y - (v - lo) / (hi - lo) * (floor_y - kMarginTop - top_band);
    }
};

double finite_extent(const PersistenceDiagram& pd) {
    double hi = 0.0;
    for (const Interval& iv : pd.intervals) {
        hi = std::max(hi, iv.birth);
        if (!iv.essential()) hi = std::max(hi, iv.death);
    }
    return hi > 0.0 ? hi : 1.0;
}

void x_axis(Svg& svg, const Frame& f, const char* title) {
    const double floor_y = f.h - kMarginBottom;
    svg.line(kMarginLeft, floor_y, f.w - kMarginRight, floor_y, "#333333", 1);
    for (int k = 0; k <= 4; ++k) {
        const double v = f.lo + (f.hi - f.lo) * k / 4;
        svg.line(f.X(v), floor_y, f.X(v), floor_y + 4, "#333333", 1);
        svg.text(f.X(v), floor_y + 16, "middle", 10, tick_label(v));
    }
    svg.text((kMarginLeft + f.w - kMarginRight) / 2.0, f.h - 10.0, "middle", 11, title);
}

void y_axis(Svg& svg, const Frame& f, const char* title) {
    svg.line(kMarginLeft, kMarginTop, kMarginLeft, f.h - kMarginBottom, "#333333", 1);
    for (int k = 0; k <= 4; ++k) {
        const double v = f.lo + (f.hi - f.lo) * k / 4;
        svg.line(kMarginLeft - 4, f.Y(v), kMarginLeft, f.Y(v), "#333333", 1);
        svg.text(kMarginLeft - 7, f.Y(v) + 3, "end", 10, tick_label(v));
    }
    svg.text(14, (kMarginTop + f.h - kMarginBottom) / 2.0, "middle", 11, title,
             "#333333",
             "rotate(-90 14 " + px((kMarginTop + f.h - kMarginBottom) / 2.0) + ")");
}

void legend(Svg& svg, int w) {
    svg.circle(w - kMarginRight - 72, kMarginTop + 8, 4, kDimColor[0]);
    svg.text(w - kMarginRight - 64, kMarginTop + 11, "start", 10, "dim 0");
    svg.circle(w - kMarginRight - 72, kMarginTop + 24, 4, kDimColor[1]);
    svg.text(w - kMarginRight - 64, kMarginTop + 27, "start", 10, "dim 1");
}

}  // namespace

std::string emit_svg_diagram(const PersistenceDiagram& pd, const PlotOptions& opts) {
    Svg svg{opts.width, opts.height, {}};
    svg.rect(0, 0, opts.width, opts.height, "#ffffff");

    bool has_inf = false;
    for (const Interval& iv : pd.intervals) has_inf |= iv.essential();

    Frame f{0.0, finite_extent(pd), opts.width, opts.height, has_inf ? 28 : 0};
    const double y_inf = kMarginTop + 10.0;

    x_axis(svg, f, "birth");
    y_axis(svg, f, "death");
    svg.line(f.X(f.lo), f.Y(f.lo), f.X(f.hi), f.Y(f.hi), "#999999", 1, true);
    if (has_inf) {
        svg.line(kMarginLeft, y_inf, opts.width - kMarginRight, y_inf, "#999999", 1, true);
        svg.text(kMarginLeft - 7, y_inf + 3, "end", 10, "inf");
    }

    if (pd.intervals.empty()) {
        svg.text((kMarginLeft + opts.width - kMarginRight) / 2.0,
                 (kMarginTop + opts.height - kMarginBottom) / 2.0, "middle", 12,
                 "(empty diagram)");
    }

    // Intervals are canonicalized, so equal points sit next to each other;
    // each distinct point becomes one marker with a multiplicity note.
    std::size_t i = 0;
    while (i < pd.intervals.size()) {
        const Interval& iv = pd.intervals[i];
        std::size_t j = i;
        while (j < pd.intervals.size() && pd.intervals[j] == iv) ++j;
        const double cx = f.X(iv.birth);
        const double cy = iv.essential() ? y_inf : f.Y(iv.death);
        svg.circle(cx, cy, 4, kDimColor[iv.dim]);
        if (j - i > 1) {
            svg.text(cx + 6, cy - 6, "start", 10, "x" + std::to_string(j - i));
        }
        i = j;
    }
    legend(svg, opts.width);
    return svg.finish();
}

std::string emit_svg_barcode(const PersistenceDiagram& pd, const PlotOptions& opts) {
    Svg svg{opts.width, opts.height, {}};
    svg.rect(0, 0, opts.width, opts.height, "#ffffff");

    Frame f{0.0, finite_extent(pd), opts.width, opts.height, 0};
    x_axis(svg, f, "filtration value");

    if (pd.intervals.empty()) {
        svg.text((kMarginLeft + opts.width - kMarginRight) / 2.0,
                 (kMarginTop + opts.height - kMarginBottom) / 2.0, "middle", 12,
                 "(empty diagram)");
        legend(svg, opts.width);
        return svg.finish();
    }

    const double area = opts.height - kMarginTop - kMarginBottom;
    const double row = std::min(20.0, area / static_cast<double>(pd.intervals.size()));
    const double thickness = std::clamp(row * 0.55, 2.0, 10.0);
    std::size_t dim0 = 0;
    for (const Interval& iv : pd.intervals) {
        if (iv.dim == 0) ++dim0;
    }

    for (std::size_t k = 0; k < pd.intervals.size(); ++k) {
        const Interval& iv = pd.intervals[k];
        const double y = kMarginTop + row * static_cast<double>(k) + row / 2.0;
        const double x1 = f.X(iv.birth);
        if (iv.essential()) {
            const double x2 = opts.width - kMarginRight;
            svg.line(x1, y, x2 - 6, y, kDimColor[iv.dim], thickness);
            svg.polygon(px(x2) + "," + px(y) + " " + px(x2 - 7) + "," + px(y - 4) +
                            " " + px(x2 - 7) + "," + px(y + 4),
                        kDimColor[iv.dim]);
        } else {
            svg.line(x1, y, f.X(iv.death), y, kDimColor[iv.dim], thickness);
        }
    }
    if (dim0 > 0 && dim0 < pd.intervals.size()) {
        const double y_sep = kMarginTop + row * static_cast<double>(dim0);
        svg.line(kMarginLeft, y_sep, opts.width - kMarginRight, y_sep, "#bbbbbb", 1, true);
    }
    legend(svg, opts.width);
    return svg.finish();
}

std::string emit_svg_histogram(const DeathHistogram& hist, const PlotOptions& opts) {
    Svg svg{opts.width, opts.height, {}};
    svg.rect(0, 0, opts.width, opts.height, "#ffffff");

    Frame fx{hist.lo, hist.hi, opts.width, opts.height, 0};
    long long maxc = 1;
    long long total = 0;
    for (long long c : hist.counts) {
        maxc = std::max(maxc, c);
        total += c;
    }
    const double floor_y = opts.height - kMarginBottom;
    const auto Yc = [&](long long c) {
        return floor_y - static_cast<double>(c) / static_cast<double>(maxc) *
                             (floor_y - kMarginTop);
    };

    x_axis(svg, fx, "death");
    svg.line(kMarginLeft, kMarginTop, kMarginLeft, floor_y, "#333333", 1);
    const long long step = std::max<long long>(1, (maxc + 3) / 4);
    for (long long v = 0; v <= maxc; v += step) {
        svg.line(kMarginLeft - 4, Yc(v), kMarginLeft, Yc(v), "#333333", 1);
        svg.text(kMarginLeft - 7, Yc(v) + 3, "end", 10, std::to_string(v));
    }
    svg.text(14, (kMarginTop + floor_y) / 2.0, "middle", 11, "count", "#333333",
             "rotate(-90 14 " + px((kMarginTop + floor_y) / 2.0) + ")");

    const double bin_width = (hist.hi - hist.lo) / static_cast<double>(hist.counts.size());
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        if (hist.counts[k] == 0) continue;
        const double x1 = fx.X(hist.lo + bin_width * static_cast<double>(k));
        const double x2 = fx.X(hist.lo + bin_width * static_cast<double>(k + 1));
        svg.rect(x1 + 0.5, Yc(hist.counts[k]), x2 - x1 - 1.0,
                 floor_y - Yc(hist.counts[k]), kDimColor[0]);
    }
    if (hist.inf_count > 0) {
        svg.text(opts.width - kMarginRight, kMarginTop + 10, "end", 11,
                 "inf: " + std::to_string(hist.inf_count), kDimColor[1]);
    }
    if (total == 0 && hist.inf_count == 0) {
        svg.text((kMarginLeft + opts.width - kMarginRight) / 2.0,
                 (kMarginTop + floor_y) / 2.0, "middle", 12, "(no deaths)");
    }
    return svg.finish();
}

}  // namespace mmph
