#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "fracbeam/errors.hpp"
#include "fracbeam/version.hpp"
#include "recipes.hpp"

namespace {

using namespace fracbeam::cli;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

/// Flag values; only those given on the command line override the config.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> beam_case;
    std::optional<std::vector<double>> alpha;
    std::optional<std::vector<double>> E_r;
    std::optional<double> f, a_b, dt, t_end, q0, qdot0, a0, strain_rate, t_switch;
    std::optional<std::vector<double>> omega_range, delta_range;
    std::optional<std::size_t> omega_count, delta_count, stride;
    std::optional<unsigned> threads;
    std::optional<std::string> variant, output, format;
};

void add_options(CLI::App& sub, Flags& fl) {
    sub.add_option("--config", fl.config, "TOML or JSON file with config fields");
    sub.add_option("--case", fl.beam_case, "no-tip-mass | tip-mass");
    sub.add_option("--alpha", fl.alpha, "fractional orders, comma separated")->delimiter(',');
    sub.add_option("--er", fl.E_r, "E_r values, comma separated")->delimiter(',');
    sub.add_option("--f", fl.f, "forcing amplitude (resonance, bifurcation)");
    sub.add_option("--ab", fl.a_b, "base displacement amplitude (forced-sweep)");
    sub.add_option("--omega", fl.omega_range, "omega_b lo,hi")->delimiter(',')->expected(2);
    sub.add_option("--omega-count", fl.omega_count, "number of omega_b points");
    sub.add_option("--delta", fl.delta_range, "Delta lo,hi")->delimiter(',')->expected(2);
    sub.add_option("--delta-count", fl.delta_count, "number of Delta points");
    sub.add_option("--dt", fl.dt, "time step (dT1 for mms-free)");
    sub.add_option("--t-end", fl.t_end, "final time (T1 for mms-free)");
    sub.add_option("--q0", fl.q0, "initial displacement");
    sub.add_option("--qdot0", fl.qdot0, "initial velocity");
    sub.add_option("--a0", fl.a0, "initial slow-flow amplitude (mms-free)");
    sub.add_option("--strain-rate", fl.strain_rate, "ramp rate (stress)");
    sub.add_option("--t-switch", fl.t_switch, "ramp-to-hold time (stress)");
    sub.add_option("--variant", fl.variant, "rl | caputo | classical (free-vib, forced-sweep)");
    sub.add_option("--output,-o", fl.output, "output directory");
    sub.add_option("--format", fl.format, "csv | json");
    sub.add_option("--stride", fl.stride, "keep every n-th sample in exported trajectories");
    sub.add_option("--threads", fl.threads, "sweep workers, 0 = hardware concurrency");
}

ExperimentConfig resolve(Experiment e, const Flags& fl) {
    ExperimentConfig c = preset(e);
    if (fl.config) apply_json(c, load_config_file(*fl.config));
    if (fl.beam_case) c.beam_case = parse_case(*fl.beam_case);
    if (fl.alpha) c.alpha = *fl.alpha;
    if (fl.E_r) c.E_r = *fl.E_r;
    if (fl.f) c.f = *fl.f;
    if (fl.a_b) c.a_b = *fl.a_b;
    if (fl.omega_range) {
        c.omega_b.lo = (*fl.omega_range)[0];
        c.omega_b.hi = (*fl.omega_range)[1];
    }
    if (fl.omega_count) c.omega_b.count = *fl.omega_count;
    if (fl.delta_range) {
        c.delta.lo = (*fl.delta_range)[0];
        c.delta.hi = (*fl.delta_range)[1];
    }
    if (fl.delta_count) c.delta.count = *fl.delta_count;
    if (fl.dt) c.dt = *fl.dt;
    if (fl.t_end) c.t_end = *fl.t_end;
    if (fl.q0) c.q0 = *fl.q0;
    if (fl.qdot0) c.qdot0 = *fl.qdot0;
    if (fl.a0) c.a0 = *fl.a0;
    if (fl.strain_rate) c.strain_rate = *fl.strain_rate;
    if (fl.t_switch) c.t_switch = *fl.t_switch;
    if (fl.variant) c.variant = parse_variant(*fl.variant);
    if (fl.output) c.output = *fl.output;
    if (fl.format) c.format = parse_format(*fl.format);
    if (fl.stride) c.stride = *fl.stride;
    if (fl.threads) c.threads = *fl.threads;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional viscoelastic cantilever beam experiments", "fracbeam"};
    app.set_version_flag("--version", std::string(fracbeam::kVersion));
    app.require_subcommand(1);

    const std::vector<std::pair<Experiment, const char*>> commands{
        {Experiment::Eig, "first eigenvalue and modal coefficients"},
        {Experiment::ForcedSweep, "forced-response amplitude sweep of the linear oscillator"},
        {Experiment::FreeVib, "free-vibration trajectories of the linear oscillator"},
        {Experiment::MmsFree, "slow-flow free vibration, decay rate and sensitivity"},
        {Experiment::Resonance, "primary-resonance frequency response"},
        {Experiment::Bifurcation, "three-root detuning intervals of primary resonance"},
        {Experiment::Moduli, "storage/loss moduli and tangent loss"},
        {Experiment::Stress, "stress under a ramp-and-hold strain program"},
    };
    Flags flags;
    std::vector<std::pair<Experiment, CLI::App*>> subs;
    for (const auto& [e, help] : commands) {
        CLI::App* sub = app.add_subcommand(std::string(to_string(e)), help);
        add_options(*sub, flags);
        subs.emplace_back(e, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        Experiment e = Experiment::Eig;
        for (const auto& [exp, sub] : subs) {
            if (sub->parsed()) e = exp;
        }
        const ExperimentConfig cfg = resolve(e, flags);
        validate(cfg);
        const auto start = std::chrono::steady_clock::now();
        const RunResult result = run(cfg, std::cout);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(cfg, result, wall);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "fracbeam: invalid configuration: " << e.what() << '\n';
        return kExitValidation;
    } catch (const fracbeam::NumericalError& e) {
        std::cerr << "fracbeam: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fracbeam: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "fracbeam: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::logic_error& e) {
        std::cerr << "fracbeam: unsupported: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "fracbeam: " << e.what() << '\n';
        return 1;
    }
}
