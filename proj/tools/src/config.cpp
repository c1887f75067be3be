#include "config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <toml++/toml.hpp>

namespace fracbeam::cli {

namespace {

template <class Enum, std::size_t N>
struct NameTable {
    std::array<std::pair<Enum, std::string_view>, N> entries;

    [[nodiscard]] std::string_view name(Enum e) const noexcept {
        for (const auto& [k, v] : entries) {
            if (k == e) return v;
        }
        return "?";
    }

    [[nodiscard]] Enum parse(std::string_view s, const char* field) const {
        for (const auto& [k, v] : entries) {
            if (v == s) return k;
        }
        std::string allowed;
        for (const auto& [k, v] : entries) {
            if (!allowed.empty()) allowed += ", ";
            allowed += v;
        }
        throw ConfigError(field, "unknown value '" + std::string(s) + "' (expected " + allowed + ")");
    }
};

constexpr NameTable<Experiment, 8> kExperiments{{{
    {Experiment::Eig, "eig"},
    {Experiment::ForcedSweep, "forced-sweep"},
    {Experiment::FreeVib, "free-vib"},
    {Experiment::MmsFree, "mms-free"},
    {Experiment::Resonance, "resonance"},
    {Experiment::Bifurcation, "bifurcation"},
    {Experiment::Moduli, "moduli"},
    {Experiment::Stress, "stress"},
}}};

constexpr NameTable<BeamCase, 2> kCases{{{
    {BeamCase::NoTipMass, "no-tip-mass"},
    {BeamCase::TipMass, "tip-mass"},
}}};

constexpr NameTable<OutputFormat, 2> kFormats{{{
    {OutputFormat::Csv, "csv"},
    {OutputFormat::Json, "json"},
}}};

constexpr NameTable<VariantName, 3> kVariants{{{
    {VariantName::RiemannLiouville, "rl"},
    {VariantName::Caputo, "caputo"},
    {VariantName::Classical, "classical"},
}}};

std::vector<double> steps(double lo, double step, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::round((lo + step * static_cast<double>(i)) * 1e12) / 1e12;
    }
    return v;
}

nlohmann::json toml_to_json(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [key, value] : *t) obj[std::string(key.str())] = toml_to_json(value);
        return obj;
    }
    if (const auto* a = node.as_array()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& value : *a) arr.push_back(toml_to_json(value));
        return arr;
    }
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    throw ConfigError("<file>", "unsupported TOML value type");
}

double get_number(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return v.get<double>();
}

std::size_t get_count(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(field, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string get_string(const nlohmann::json& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_list(const nlohmann::json& v, const std::string& field) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ConfigError(field, "expected a number or a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Range get_range(const nlohmann::json& v, const std::string& field, Range base) {
    if (v.is_array()) {
        if (v.size() != 2 && v.size() != 3) {
            throw ConfigError(field, "expected [lo, hi] or [lo, hi, count]");
        }
        base.lo = get_number(v[0], field + "[0]");
        base.hi = get_number(v[1], field + "[1]");
        if (v.size() == 3) base.count = get_count(v[2], field + "[2]");
        return base;
    }
    if (!v.is_object()) throw ConfigError(field, "expected a table with lo, hi, count");
    for (const auto& [key, value] : v.items()) {
        const std::string sub = field + "." + key;
        if (key == "lo") base.lo = get_number(value, sub);
        else if (key == "hi") base.hi = get_number(value, sub);
        else if (key == "count") base.count = get_count(value, sub);
        else throw ConfigError(sub, "unknown key");
    }
    return base;
}

void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

void check_alpha(const ExperimentConfig& c) {
    require(!c.alpha.empty(), "alpha", "at least one order is required");
    for (double a : c.alpha) {
        require(std::isfinite(a) && a > 0.0 && a < 1.0, "alpha", "orders must lie in (0, 1)");
    }
}

void check_er(const ExperimentConfig& c, bool allow_zero) {
    require(!c.E_r.empty(), "E_r", "at least one value is required");
    for (double e : c.E_r) {
        require(std::isfinite(e) && (allow_zero ? e >= 0.0 : e > 0.0), "E_r",
                allow_zero ? "values must be non-negative" : "values must be positive");
    }
}

void check_range(const Range& r, const char* field, bool positive) {
    require(std::isfinite(r.lo) && std::isfinite(r.hi), field, "bounds must be finite");
    require(r.count >= 1, field, "count must be at least 1");
    require(r.hi >= r.lo, field, "hi must not be below lo");
    require(r.count > 1 || r.hi == r.lo, field, "a single point needs lo == hi");
    if (positive) require(r.lo > 0.0, field, "frequencies must be positive");
}

void check_time(const ExperimentConfig& c) {
    require(std::isfinite(c.dt) && c.dt > 0.0, "dt", "must be positive");
    require(std::isfinite(c.t_end) && c.t_end >= c.dt, "t_end", "must be at least dt");
    require(c.t_end / c.dt <= 1e8, "t_end", "more than 1e8 steps");
}

}  // namespace

std::string_view to_string(Experiment e) noexcept { return kExperiments.name(e); }
std::string_view to_string(BeamCase c) noexcept { return kCases.name(c); }
std::string_view to_string(OutputFormat f) noexcept { return kFormats.name(f); }
std::string_view to_string(VariantName v) noexcept { return kVariants.name(v); }

Experiment parse_experiment(std::string_view s) { return kExperiments.parse(s, "experiment"); }
BeamCase parse_case(std::string_view s) { return kCases.parse(s, "case"); }
OutputFormat parse_format(std::string_view s) { return kFormats.parse(s, "format"); }
VariantName parse_variant(std::string_view s) { return kVariants.parse(s, "variant"); }

ExperimentConfig preset(Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::Eig:
            c.beam_case = BeamCase::NoTipMass;
            c.alpha = {0.5};
            c.E_r = {1.0};
            c.format = OutputFormat::Json;
            break;
        case Experiment::ForcedSweep:
            c.beam_case = BeamCase::TipMass;
            c.alpha = steps(0.1, 0.1, 6);
            c.E_r = {1.0};
            c.a_b = 0.01;
            c.omega_b = {0.5, 3.5, 21};
            c.dt = 1e-3;
            c.t_end = 100.0;
            break;
        case Experiment::FreeVib:
            c.beam_case = BeamCase::TipMass;
            c.alpha = steps(0.1, 0.1, 9);
            c.E_r = {1.0};
            c.dt = 1e-3;
            c.t_end = 100.0;
            c.q0 = 0.01;
            c.qdot0 = 0.0;
            break;
        case Experiment::MmsFree:
            c.beam_case = BeamCase::NoTipMass;
            c.alpha = steps(0.1, 0.1, 9);
            c.E_r = {0.1};
            c.a0 = 0.5;
            c.dt = 1e-3;
            c.t_end = 20.0;
            break;
        case Experiment::Resonance:
            c.beam_case = BeamCase::NoTipMass;
            c.alpha = steps(0.1, 0.1, 8);
            c.E_r = steps(0.1, 0.1, 10);
            c.f = 0.5;
            c.delta = {-10.0, 10.0, 2001};
            break;
        case Experiment::Bifurcation:
            c.beam_case = BeamCase::NoTipMass;
            c.alpha = steps(0.1, 0.1, 4);
            c.E_r = {0.3};
            c.f = 1.0;
            c.delta = {-10.0, 10.0, 2001};
            break;
        case Experiment::Moduli:
            c.beam_case = BeamCase::NoTipMass;
            c.alpha = steps(0.1, 0.1, 9);
            c.E_r = {1.0};
            c.omega_b = {3.51602, 3.51602, 1};
            c.format = OutputFormat::Json;
            break;
        case Experiment::Stress:
            c.alpha = steps(0.1, 0.2, 5);
            c.E_r = {1.0};
            c.strain_rate = 1.0 / 24.0;
            c.t_switch = 2.5;
            c.dt = 1e-3;
            c.t_end = 6.0;
            break;
    }
    return c;
}

PresetInfo preset_info(Experiment e) {
    switch (e) {
        case Experiment::Eig:
            return {"eigenproblem", "first clamped-free eigenvalue and modal coefficients"};
        case Experiment::ForcedSweep:
            return {"linear-forced-sweep",
                    "linearized oscillator under harmonic base excitation, a_b = 0.01, "
                    "omega_b in [0.5, 3.5], from rest, dt = 1e-3, t in (0, 100]"};
        case Experiment::FreeVib:
            return {"linear-free-vibration",
                    "linearized oscillator released from q(0) = 0.01 at rest, "
                    "Riemann-Liouville or Caputo memory"};
        case Experiment::MmsFree:
            return {"multiple-scales-free-vibration",
                    "slow-flow amplitude and phase without tip mass, E_r = 0.1"};
        case Experiment::Resonance:
            return {"primary-resonance-response",
                    "steady-state amplitude versus detuning, f = 0.5, E_r = 0.1 .. 1"};
        case Experiment::Bifurcation:
            return {"primary-resonance-bifurcation",
                    "three-root detuning intervals, E_r = 0.3, f = 1"};
        case Experiment::Moduli:
            return {"fractional-kelvin-voigt-moduli",
                    "storage, loss and tangent loss at omega = omega0, E_r = 1"};
        case Experiment::Stress:
            return {"monotone-load-relaxation",
                    "strain ramp t/24 until t = 2.5, then hold at 0.1 until t = 6, "
                    "E_inf = E_alpha = 1"};
    }
    return {};
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (path.extension() == ".toml") {
        try {
            return toml_to_json(toml::parse(text, path.string()));
        } catch (const toml::parse_error& e) {
            std::ostringstream msg;
            msg << e.description() << " at line " << e.source().begin.line;
            throw ConfigError("config", msg.str());
        }
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", e.what());
    }
}

void apply_json(ExperimentConfig& c, const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config", "top level must be a table");
    for (const auto& [key, v] : doc.items()) {
        if (key == "experiment") {
            if (parse_experiment(get_string(v, key)) != c.experiment) {
                throw ConfigError(key, "file is for '" + v.get<std::string>() +
                                           "' but the command is '" +
                                           std::string(to_string(c.experiment)) + "'");
            }
        } else if (key == "case") {
            c.beam_case = parse_case(get_string(v, key));
        } else if (key == "alpha") {
            c.alpha = get_list(v, key);
        } else if (key == "E_r") {
            c.E_r = get_list(v, key);
        } else if (key == "f") {
            c.f = get_number(v, key);
        } else if (key == "a_b") {
            c.a_b = get_number(v, key);
        } else if (key == "omega_b") {
            c.omega_b = get_range(v, key, c.omega_b);
        } else if (key == "Delta") {
            c.delta = get_range(v, key, c.delta);
        } else if (key == "dt") {
            c.dt = get_number(v, key);
        } else if (key == "t_end") {
            c.t_end = get_number(v, key);
        } else if (key == "q0") {
            c.q0 = get_number(v, key);
        } else if (key == "qdot0") {
            c.qdot0 = get_number(v, key);
        } else if (key == "a0") {
            c.a0 = get_number(v, key);
        } else if (key == "strain_rate") {
            c.strain_rate = get_number(v, key);
        } else if (key == "t_switch") {
            c.t_switch = get_number(v, key);
        } else if (key == "variant") {
            c.variant = parse_variant(get_string(v, key));
        } else if (key == "output") {
            c.output = get_string(v, key);
        } else if (key == "format") {
            c.format = parse_format(get_string(v, key));
        } else if (key == "stride") {
            c.stride = get_count(v, key);
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(get_count(v, key));
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
}

void validate(const ExperimentConfig& c) {
    require(!c.output.empty(), "output", "must not be empty");
    require(c.stride >= 1, "stride", "must be at least 1");
    switch (c.experiment) {
        case Experiment::Eig:
            break;
        case Experiment::ForcedSweep:
            check_alpha(c);
            check_er(c, true);
            require(std::isfinite(c.a_b) && c.a_b >= 0.0, "a_b", "must be non-negative");
            check_range(c.omega_b, "omega_b", true);
            check_time(c);
            break;
        case Experiment::FreeVib:
            check_alpha(c);
            check_er(c, true);
            check_time(c);
            require(std::isfinite(c.q0), "q0", "must be finite");
            require(std::isfinite(c.qdot0), "qdot0", "must be finite");
            break;
        case Experiment::MmsFree:
            check_alpha(c);
            check_er(c, false);
            require(std::isfinite(c.a0) && c.a0 >= 0.0, "a0", "must be non-negative");
            require(std::isfinite(c.dt) && c.dt > 0.0, "dt", "must be positive");
            require(std::isfinite(c.t_end) && c.t_end >= 0.0, "t_end", "must be non-negative");
            break;
        case Experiment::Resonance:
        case Experiment::Bifurcation:
            check_alpha(c);
            check_er(c, false);
            require(std::isfinite(c.f) && c.f >= 0.0, "f", "must be non-negative");
            check_range(c.delta, "Delta", false);
            break;
        case Experiment::Moduli:
            check_alpha(c);
            check_er(c, true);
            check_range(c.omega_b, "omega_b", true);
            break;
        case Experiment::Stress:
            check_alpha(c);
            check_er(c, true);
            check_time(c);
            require(std::isfinite(c.strain_rate), "strain_rate", "must be finite");
            require(std::isfinite(c.t_switch) && c.t_switch > 0.0 && c.t_switch < c.t_end,
                    "t_switch", "must lie inside (0, t_end)");
            break;
    }
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
    auto range = [](const Range& r) {
        return nlohmann::ordered_json{{"lo", r.lo}, {"hi", r.hi}, {"count", r.count}};
    };
    nlohmann::ordered_json j;
    j["experiment"] = to_string(c.experiment);
    j["case"] = to_string(c.beam_case);
    j["alpha"] = c.alpha;
    j["E_r"] = c.E_r;
    j["f"] = c.f;
    j["a_b"] = c.a_b;
    j["omega_b"] = range(c.omega_b);
    j["Delta"] = range(c.delta);
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["q0"] = c.q0;
    j["qdot0"] = c.qdot0;
    j["a0"] = c.a0;
    j["strain_rate"] = c.strain_rate;
    j["t_switch"] = c.t_switch;
    j["variant"] = to_string(c.variant);
    j["output"] = c.output.generic_string();
    j["format"] = to_string(c.format);
    j["stride"] = c.stride;
    j["threads"] = c.threads;
    return j;
}

}  // namespace fracbeam::cli
