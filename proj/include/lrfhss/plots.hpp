#pragma once

#include <filesystem>
#include <vector>

#include "lrfhss/harness.hpp"

namespace lrfhss {

// Renders the sweep as standalone SVG files, one per figure family:
//   <prefix>_f1.svg                detection F1 vs offered frames
//   <prefix>_detection.svg        false positives / false negatives
//   <prefix>_occupancy.svg        matrix occupancy vs offered fragments
//   <prefix>_extraction_fast.svg  payload extraction, fast config
//   <prefix>_extraction_robust.svg payload extraction, robust config
//   <prefix>_timing.svg           decode wall-clock vs offered fragments
// Mean lines ride on min..max bands taken over the runs of each step.
// Returns the paths written.
std::vector<std::filesystem::path> emit_plots(
    const ExperimentConfig& cfg, const std::vector<RunRecord>& records,
    const std::filesystem::path& prefix);

}  // namespace lrfhss
