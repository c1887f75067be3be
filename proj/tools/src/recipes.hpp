#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace fracbeam::cli {

struct RunResult {
    std::vector<std::filesystem::path> files;  ///< relative to cfg.output
    nlohmann::ordered_json summary;
};

/// Runs one validated experiment, writing its data files into cfg.output.
/// Human-facing results (eig JSON, bifurcation intervals) go to `out`.
RunResult run(const ExperimentConfig& cfg, std::ostream& out);

/// manifest.json next to the data files.
void write_manifest(const ExperimentConfig& cfg, const RunResult& result, double wall_seconds);

}  // namespace fracbeam::cli
