#include "fracbeam/beammodel.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracbeam/errors.hpp"

namespace fracbeam {

namespace {

constexpr double kScanStep = 0.05;
constexpr double kScanMax = 20.0;
constexpr double kQuadRelTol = 1e-10;
constexpr unsigned kQuadMaxDepth = 20;

template <class F>
double integrate_unit(F&& f, const char* what) {
    double err = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, 1.0, kQuadMaxDepth, kQuadRelTol, &err, &l1);
    if (!std::isfinite(value) || err > 10.0 * kQuadRelTol * std::max(l1, 1e-300)) {
        throw NumericalError(std::string("quadrature did not converge for ") + what);
    }
    return value;
}

}  // namespace

BeamConfig BeamConfig::no_tip_mass(double E_r, FracOrder alpha) {
    return BeamConfig{0.0, 0.0, E_r, alpha};
}

BeamConfig BeamConfig::tip_mass(double E_r, FracOrder alpha) {
    return BeamConfig{1.0, 1.0, E_r, alpha};
}

void BeamConfig::validate() const {
    if (!(M_tip >= 0.0) || !(J_tip >= 0.0)) {
        throw ArgumentError("tip mass and rotary inertia must be non-negative");
    }
    if (!(E_r > 0.0) || !std::isfinite(E_r)) {
        throw ArgumentError("modulus ratio E_r must be positive and finite");
    }
}

double ModeShape::value(double s) const noexcept {
    const double x = beta * s;
    return coeff_sin * std::sin(x) + coeff_cos * std::cos(x) + coeff_sinh * std::sinh(x) +
           coeff_cosh * std::cosh(x);
}

double ModeShape::d1(double s) const noexcept {
    const double x = beta * s;
    return beta * (coeff_sin * std::cos(x) - coeff_cos * std::sin(x) + coeff_sinh * std::cosh(x) +
                   coeff_cosh * std::sinh(x));
}

double ModeShape::d2(double s) const noexcept {
    const double x = beta * s;
    return beta * beta *
           (-coeff_sin * std::sin(x) - coeff_cos * std::cos(x) + coeff_sinh * std::sinh(x) +
            coeff_cosh * std::cosh(x));
}

double ModeShape::d3(double s) const noexcept {
    const double x = beta * s;
    return beta * beta * beta *
           (-coeff_sin * std::cos(x) + coeff_cos * std::sin(x) + coeff_sinh * std::cosh(x) +
            coeff_cosh * std::sinh(x));
}

ModeShape ModeShape::rescaled(double factor) const noexcept {
    return ModeShape{beta, factor * coeff_sin, factor * coeff_cos, factor * coeff_sinh,
                     factor * coeff_cosh};
}

double characteristic_residual(double beta, const BeamConfig& config) {
    const double s = std::sin(beta);
    const double c = std::cos(beta);
    const double sh = std::sinh(beta);
    const double ch = std::cosh(beta);
    if (!config.has_tip_mass()) {
        return 1.0 + c * ch;
    }
    const double M = config.M_tip;
    const double J = config.J_tip;
    const double b3 = beta * beta * beta;
    return -(1.0 + c * ch) + M * beta * (s * ch - c * sh) + J * b3 * (s * ch - sh * ch) +
           M * J * b3 * beta * (s * sh + c * ch - 1.0);
}

double solve_eigenvalue_in(const BeamConfig& config, double lo, double hi) {
    double f_lo = characteristic_residual(lo, config);
    const double f_hi = characteristic_residual(hi, config);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NumericalError("frequency equation has no sign change in the bracket");
    }
    // Plain bisection down to adjacent doubles.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = characteristic_residual(mid, config);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(characteristic_residual(lo, config)) <=
                   std::abs(characteristic_residual(hi, config))
               ? lo
               : hi;
}

std::vector<double> solve_eigenvalues(const BeamConfig& config, std::size_t count) {
    config.validate();
    std::vector<double> roots;
    double prev_beta = kScanStep;
    double prev = characteristic_residual(prev_beta, config);
    const auto n_cells = static_cast<int>(std::lround(kScanMax / kScanStep));
    for (int k = 2; k <= n_cells && roots.size() < count; ++k) {
        const double beta = k * kScanStep;
        const double cur = characteristic_residual(beta, config);
        if (prev == 0.0) {
            roots.push_back(prev_beta);
        } else if ((cur > 0.0) != (prev > 0.0) && cur != 0.0) {
            roots.push_back(solve_eigenvalue_in(config, prev_beta, beta));
        }
        prev_beta = beta;
        prev = cur;
    }
    if (roots.size() < count) {
        throw NumericalError("eigenvalue bracket search failed within beta in (0, 20]");
    }
    return roots;
}

double solve_first_eigenvalue(const BeamConfig& config) {
    return solve_eigenvalues(config, 1).front();
}

ModeShape mode_shape(const BeamConfig& config, double beta) {
    config.validate();
    if (!(beta > 0.0)) {
        throw ArgumentError("mode_shape needs beta > 0");
    }
    const double s = std::sin(beta);
    const double c = std::cos(beta);
    const double sh = std::sinh(beta);
    const double ch = std::cosh(beta);
    const double Jb3 = config.J_tip * beta * beta * beta;
    // Moment condition at the tip: A * num + B * den = 0 for
    // phi = A (sin - sinh) + B (cos - cosh).
    const double num = s + sh + Jb3 * (c - ch);
    const double den = c + ch - Jb3 * (s - sh);
    ModeShape raw{beta, den, -num, -den, num};

    const double norm2 = integrate_unit([&](double x) { return raw.value(x) * raw.value(x); },
                                        "mode normalization");
    if (!(norm2 > 0.0)) {
        throw NumericalError("degenerate mode shape");
    }
    double scale = 1.0 / std::sqrt(norm2);
    if (raw.coeff_sin < 0.0 || (raw.coeff_sin == 0.0 && raw.coeff_cos < 0.0)) {
        scale = -scale;
    }
    return raw.rescaled(scale);
}

ModalModel modal_coefficients(const BeamConfig& config, const ModeShape& mode) {
    config.validate();
    const double M = config.M_tip;
    const double J = config.J_tip;

    const double phi_sq = integrate_unit(
        [&](double s) {
            const double v = mode.value(s);
            return v * v;
        },
        "int phi^2");
    const double curv_sq = integrate_unit(
        [&](double s) {
            const double v = mode.d2(s);
            return v * v;
        },
        "int phi''^2");
    const double nl = integrate_unit(
        [&](double s) {
            const double a = mode.d1(s);
            const double b = mode.d2(s);
            return a * a * b * b;
        },
        "int phi'^2 phi''^2");
    const double phi_int = integrate_unit([&](double s) { return mode.value(s); }, "int phi");

    const double tip = mode.value(1.0);
    const double tip_slope = mode.d1(1.0);
    const double slope_sq = tip_slope * tip_slope;

    ModalModel m;
    m.mode = mode;
    m.Mcal = phi_sq + M * tip * tip + J * slope_sq;
    m.Jcal = J * slope_sq * slope_sq;
    m.K_l = curv_sq;
    m.C_l = m.K_l;
    m.K_nl = nl;
    m.C_nl = m.K_nl;
    m.M_b = phi_int + M * tip;
    if (!(m.Mcal > 0.0) || !(m.K_l > 0.0) || !(m.K_nl > 0.0)) {
        throw NumericalError("modal coefficients are not positive");
    }
    m.omega0 = std::sqrt(m.K_l / m.Mcal);
    return m;
}

ModalModel build_modal_model(const BeamConfig& config) {
    const double beta = solve_first_eigenvalue(config);
    return modal_coefficients(config, mode_shape(config, beta));
}

std::string to_json(const ModalModel& model, int indent) {
    nlohmann::ordered_json j;
    j["mode"] = {{"beta", model.mode.beta},
                 {"coeff_sin", model.mode.coeff_sin},
                 {"coeff_cos", model.mode.coeff_cos},
                 {"coeff_sinh", model.mode.coeff_sinh},
                 {"coeff_cosh", model.mode.coeff_cosh}};
    j["omega0"] = model.omega0;
    j["Mcal"] = model.Mcal;
    j["Jcal"] = model.Jcal;
    j["K_l"] = model.K_l;
    j["C_l"] = model.C_l;
    j["K_nl"] = model.K_nl;
    j["C_nl"] = model.C_nl;
    j["M_b"] = model.M_b;
    return j.dump(indent);
}

ModalModel modal_model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        ModalModel m;
        const auto& mode = j.at("mode");
        m.mode = ModeShape{mode.at("beta").get<double>(), mode.at("coeff_sin").get<double>(),
                           mode.at("coeff_cos").get<double>(), mode.at("coeff_sinh").get<double>(),
                           mode.at("coeff_cosh").get<double>()};
        m.omega0 = j.at("omega0").get<double>();
        m.Mcal = j.at("Mcal").get<double>();
        m.Jcal = j.at("Jcal").get<double>();
        m.K_l = j.at("K_l").get<double>();
        m.C_l = j.at("C_l").get<double>();
        m.K_nl = j.at("K_nl").get<double>();
        m.C_nl = j.at("C_nl").get<double>();
        m.M_b = j.at("M_b").get<double>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("invalid ModalModel JSON: ") + e.what());
    }
}

}  // namespace fracbeam
