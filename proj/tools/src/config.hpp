#pragma once

// Experiment configuration for the fracbeam driver: built-in presets, config
// files (TOML or JSON) and field-level validation.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracbeam::cli {

enum class Experiment { Eig, ForcedSweep, FreeVib, MmsFree, Resonance, Bifurcation, Moduli, Stress };
enum class BeamCase { NoTipMass, TipMass };
enum class OutputFormat { Csv, Json };
enum class VariantName { RiemannLiouville, Caputo, Classical };

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Eig;
    BeamCase beam_case = BeamCase::NoTipMass;
    std::vector<double> alpha;
    std::vector<double> E_r;
    double f = 0.0;
    double a_b = 0.0;
    Range omega_b;
    Range delta;
    double dt = 1e-3;
    double t_end = 1.0;
    double q0 = 0.0;
    double qdot0 = 0.0;
    double a0 = 0.0;          ///< initial slow-flow amplitude (mms-free)
    double strain_rate = 0.0; ///< ramp rate (stress)
    double t_switch = 0.0;    ///< ramp-to-hold switch time (stress)
    VariantName variant = VariantName::RiemannLiouville;
    std::filesystem::path output = "fracbeam-out";
    OutputFormat format = OutputFormat::Csv;
    std::size_t stride = 1;
    unsigned threads = 0;
};

/// A configuration value outside its domain; names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument("field '" + field + "': " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

[[nodiscard]] std::string_view to_string(Experiment e) noexcept;
[[nodiscard]] std::string_view to_string(BeamCase c) noexcept;
[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;
[[nodiscard]] std::string_view to_string(VariantName v) noexcept;

[[nodiscard]] Experiment parse_experiment(std::string_view s);
[[nodiscard]] BeamCase parse_case(std::string_view s);
[[nodiscard]] OutputFormat parse_format(std::string_view s);
[[nodiscard]] VariantName parse_variant(std::string_view s);

struct PresetInfo {
    std::string name;
    std::string description;
};

/// Defaults reproducing the published experiment of each recipe.
[[nodiscard]] ExperimentConfig preset(Experiment e);
[[nodiscard]] PresetInfo preset_info(Experiment e);

/// Reads a config file as JSON; `.toml` files are parsed as TOML first.
[[nodiscard]] nlohmann::json load_config_file(const std::filesystem::path& path);

/// Overlays the fields present in `doc` onto `cfg`. Unknown keys and values of
/// the wrong type throw ConfigError. A present "experiment" key must agree
/// with cfg.experiment.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& doc);

/// Domain checks for every field the experiment uses.
void validate(const ExperimentConfig& cfg);

[[nodiscard]] nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

}  // namespace fracbeam::cli
