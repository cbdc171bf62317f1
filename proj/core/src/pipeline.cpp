#include "mmph/pipeline.hpp"

#include <algorithm>

#include "mmph/cubical.hpp"
#include "mmph/persistence.hpp"

namespace mmph {

double auto_divisor(const FiltrationSpec& spec) {
    const double n = static_cast<double>(spec.se_indices.size());
    switch (spec.kind) {
        case FiltrationKind::erosion:
        case FiltrationKind::dilation:
        case FiltrationKind::opening:
        case FiltrationKind::closing:
            return n + 1.0;
        case FiltrationKind::combined_ed:
        case FiltrationKind::combined_oc:
            return 2.0 * n + 1.0;
        default:
            throw InvalidIndex(std::string("no automatic divisor for kind '") +
                               to_string(spec.kind) + "'");
    }
}

std::vector<PipelineStageResult> pipeline_grayscale(const GrayscaleImage& f,
                                                    const PipelineConfig& cfg) {
    if (cfg.thresholds.empty()) {
        throw InvalidThresholds("pipeline needs at least one threshold");
    }
    int prev = -1;
    for (int t : cfg.thresholds) {
        if (t < 0 || t > f.max_value()) {
            throw InvalidThresholds("threshold " + std::to_string(t) +
                                    " outside [0, " + std::to_string(f.max_value()) + "]");
        }
        if (t <= prev) {
            throw InvalidThresholds("thresholds must be strictly increasing");
        }
        prev = t;
    }
    if (cfg.dims.empty()) {
        throw ValueOutOfRange("pipeline needs at least one homological dimension");
    }
    for (int d : cfg.dims) {
        if (d != 0 && d != 1) {
            throw ValueOutOfRange("homological dimension must be 0 or 1, got " +
                                  std::to_string(d));
        }
    }

    const double divisor = cfg.normalize_output
                               ? (cfg.divisor ? *cfg.divisor : auto_divisor(cfg.filtration))
                               : 1.0;

    GrayscaleImage input = cfg.salt_fraction > 0.0
                               ? add_salt_noise(f, cfg.salt_fraction, cfg.salt_seed)
                               : f;

    std::vector<PipelineStageResult> results;
    results.reserve(cfg.thresholds.size());
    for (int t : cfg.thresholds) {
        const BinaryImage binary = threshold(input, t);
        const EntryTimeGrid grid = mm_filtration(binary, cfg.filtration);
        PersistenceDiagram pd = compute_persistence(build_complex(grid));
        if (cfg.dims.size() < 2) {
            const int keep = cfg.dims[0];
            std::erase_if(pd.intervals,
                          [keep](const Interval& iv) { return iv.dim != keep; });
        }
        if (cfg.normalize_output) {
            pd = normalize(pd, divisor);
        }
        results.push_back({t, std::move(pd)});
    }
    return results;
}

}  // namespace mmph
