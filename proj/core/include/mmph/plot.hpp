#pragma once

#include <string>

#include "mmph/diagram.hpp"

namespace mmph {

struct PlotOptions {
    int width = 480;
    int height = 480;

    bool operator==(const PlotOptions&) const = default;
};

/// Standalone SVG renderers. Output is a pure function of the inputs: the
/// same diagram and options give byte-identical documents, with no
/// timestamps, randomness or locale dependence. Empty diagrams render an
/// annotated empty frame rather than failing.
///
/// Diagram plot: one marker per distinct (dim, birth, death), colored by
/// dimension, with a "xN" annotation for multiplicities above one;
/// essential classes sit on a dashed line above the finite range.
std::string emit_svg_diagram(const PersistenceDiagram& pd, const PlotOptions& opts = {});

/// Barcode: one bar per interval (multiplicity shows as repeated bars),
/// dimension 0 above dimension 1, essential bars running into an arrow at
/// the right edge.
std::string emit_svg_barcode(const PersistenceDiagram& pd, const PlotOptions& opts = {});

/// Histogram: one column per bin; essential intervals are reported in a
/// corner annotation, never binned.
std::string emit_svg_histogram(const DeathHistogram& hist, const PlotOptions& opts = {});

}  // namespace mmph
