#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmph/diagram.hpp"
#include "mmph/filtration.hpp"
#include "mmph/image.hpp"

namespace mmph {

/// End-to-end recipe: optional salt noise, one binarization per threshold,
/// a morphological filtration each, persistence, dimension filtering and
/// normalization. `divisor` empty means the automatic policy (see
/// auto_divisor); normalize_output false keeps raw filtration values.
struct PipelineConfig {
    std::vector<int> thresholds;
    FiltrationSpec filtration = make_spec(FiltrationKind::erosion, {2});
    std::optional<double> divisor;
    bool normalize_output = true;
    std::vector<int> dims = {0, 1};
    double salt_fraction = 0.0;
    std::uint64_t salt_seed = 0;
};

struct PipelineStageResult {
    int threshold;
    PersistenceDiagram diagram;
};

/// The canonical normalization divisor for a morphological spec over n
/// structuring elements: n + 1 for the one-sided kinds, 2n + 1 for the
/// combined ones. One past the last operator stage, i.e. the level of the
/// conceptual all-black image, so essential classes land exactly on 1.
double auto_divisor(const FiltrationSpec& spec);

/// Runs the whole recipe on a grayscale image, one result per threshold in
/// the order given. Thresholds must be strictly increasing and inside
/// [0, max_value]; the filtration kind must be morphological.
std::vector<PipelineStageResult> pipeline_grayscale(const GrayscaleImage& f,
                                                    const PipelineConfig& cfg);

}  // namespace mmph
