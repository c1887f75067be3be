#include <gtest/gtest.h>

#include <cmath>

#include "fracbeam/beammodel.hpp"
#include "fracbeam/errors.hpp"
#include "oracles.hpp"

using namespace fracbeam;

namespace {

BeamConfig mass_only(double M) {
    BeamConfig c;
    c.M_tip = M;
    return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Eigenvalue, NoTipMassMatchesPublished) {
    const double beta = solve_first_eigenvalue(BeamConfig::no_tip_mass());
    EXPECT_NEAR(beta * beta, 3.51602, 1e-4);
    EXPECT_LT(std::abs(characteristic_residual(beta, BeamConfig::no_tip_mass())), 1e-10);
}

TEST(Eigenvalue, TipMassMatchesPublished) {
    const double beta = solve_first_eigenvalue(BeamConfig::tip_mass());
    EXPECT_NEAR(beta * beta, 1.38569, 1e-4);
    EXPECT_LT(std::abs(characteristic_residual(beta, BeamConfig::tip_mass())), 1e-10);
}

TEST(Eigenvalue, ResidualAtPublishedRoots) {
    EXPECT_LT(std::abs(characteristic_residual(std::sqrt(3.51602), BeamConfig::no_tip_mass())),
              1e-4);
    EXPECT_NEAR(characteristic_residual(1e-6, BeamConfig::no_tip_mass()), 2.0, 1e-9);
}

TEST(Eigenvalue, SecondRootAgainstSignScan) {
    // Brute-force sign change of 1 + cos b cosh b on (4, 8).
    double lo = 4.0;
    for (double b = 4.0; b < 8.0; b += 1e-4) {
        if ((1.0 + std::cos(b) * std::cosh(b)) * (1.0 + std::cos(lo) * std::cosh(lo)) < 0.0) break;
        lo = b;
    }
    const auto roots = solve_eigenvalues(BeamConfig::no_tip_mass(), 2);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(roots[1], lo, 2e-4);
    EXPECT_NEAR(roots[1], 4.694091, 1e-6);
}

// Property: re-solving from perturbed brackets lands on the same root.
TEST(Eigenvalue, BracketIndependence) {
    for (const auto& cfg : {BeamConfig::no_tip_mass(), BeamConfig::tip_mass()}) {
        const double beta = solve_first_eigenvalue(cfg);
        for (double d : {0.013, 0.07, 0.2}) {
            EXPECT_NEAR(solve_eigenvalue_in(cfg, beta - d, beta + 0.6 * d), beta, 1e-9);
        }
    }
}

TEST(Eigenvalue, TipMassOnlyAgainstDeterminantOracle) {
    for (double M : {0.1, 0.5, 1.0, 3.0}) {
        EXPECT_NEAR(solve_first_eigenvalue(mass_only(M)), oracle::clamped_tip_mass_beta(M), 1e-8)
            << "M " << M;
    }
    EXPECT_NEAR(oracle::clamped_tip_mass_beta(0.0), std::sqrt(3.516015), 1e-6);
}

TEST(Eigenvalue, InvalidConfigRejected) {
    EXPECT_THROW(mass_only(-1.0).validate(), ArgumentError);
}

TEST(ModeShape, ClampedEnd) {
    for (const auto& cfg : {BeamConfig::no_tip_mass(), BeamConfig::tip_mass(), mass_only(2.0)}) {
        const auto m = mode_shape(cfg, solve_first_eigenvalue(cfg));
        EXPECT_NEAR(m.value(0.0), 0.0, 1e-12);
        EXPECT_NEAR(m.d1(0.0), 0.0, 1e-12);
    }
}

TEST(ModeShape, PublishedCoefficientRatios) {
    const auto a = mode_shape(BeamConfig::no_tip_mass(),
                              solve_first_eigenvalue(BeamConfig::no_tip_mass()));
    EXPECT_NEAR(a.coeff_sin / -a.coeff_cos, 0.734096, 2e-6);
    const auto b = mode_shape(BeamConfig::tip_mass(), solve_first_eigenvalue(BeamConfig::tip_mass()));
    EXPECT_NEAR(b.coeff_sin, 5.50054, 5e-4);
    EXPECT_NEAR(-b.coeff_cos, 0.215842, 5e-5);
    EXPECT_NEAR(b.coeff_sinh, -b.coeff_sin, 1e-12);
    EXPECT_NEAR(b.coeff_cosh, -b.coeff_cos, 1e-12);
}

TEST(ModeShape, FreeEndConditionsWithoutTipMass) {
    const auto cfg = BeamConfig::no_tip_mass();
    const auto m = mode_shape(cfg, solve_first_eigenvalue(cfg));
    EXPECT_NEAR(m.d2(1.0), 0.0, 1e-9);
    EXPECT_NEAR(m.d3(1.0), 0.0, 1e-9);
}

TEST(ModalCoefficients, NoTipMassPublished) {
    const auto m = build_modal_model(BeamConfig::no_tip_mass());
    EXPECT_LT(rel(m.Mcal, 1.0), 1e-3);
    EXPECT_LT(rel(m.K_l, 12.3624), 1e-3);
    EXPECT_LT(rel(m.K_nl, 20.2203), 1e-3);
    EXPECT_LT(rel(m.M_b, 0.782992), 1e-3);
    EXPECT_EQ(m.Jcal, 0.0);
    EXPECT_EQ(m.K_l, m.C_l);
    EXPECT_EQ(m.K_nl, m.C_nl);
}

TEST(ModalCoefficients, TipMassPublished) {
    const auto m = build_modal_model(BeamConfig::tip_mass());
    EXPECT_LT(rel(m.K_l, 98.1058), 1e-3);
    EXPECT_LT(rel(m.K_nl, 2979.66), 1e-3);
    EXPECT_LT(rel(m.Jcal, 5008.25), 1e-3);
    EXPECT_LT(rel(m.Mcal, 1.0 + 70.769 + 7.2734), 1e-3);
    EXPECT_LT(rel(m.M_b, -0.648623 - 2.69692), 1e-3);
    EXPECT_EQ(m.K_l, m.C_l);
}

TEST(ModalCoefficients, NoTipMassAgainstSimpson) {
    const auto m = build_modal_model(BeamConfig::no_tip_mass());
    const auto ref = oracle::classical_mode_integrals(m.mode.beta, 4000);
    // The oracle is unit-normalized; compare scale-free ratios.
    EXPECT_NEAR(m.K_l / m.Mcal, ref.curv_sq, 1e-9 * ref.curv_sq);
    EXPECT_NEAR(m.K_nl / (m.Mcal * m.Mcal), ref.nonlinear, 1e-9 * ref.nonlinear);
    EXPECT_NEAR(m.M_b / std::sqrt(m.Mcal), ref.phi_int, 1e-9);
}

// Property: K_l ~ l^2, K_nl ~ l^4, M_b ~ l, Mcal ~ l^2 under mode rescaling.
TEST(ModalCoefficients, ScalingWithModeAmplitude) {
    for (const auto& cfg : {BeamConfig::no_tip_mass(), BeamConfig::tip_mass()}) {
        const auto base = build_modal_model(cfg);
        for (double l : {0.5, 2.0}) {
            const auto s = modal_coefficients(cfg, base.mode.rescaled(l));
            EXPECT_NEAR(s.K_l, l * l * base.K_l, 1e-10 * s.K_l);
            EXPECT_NEAR(s.K_nl, std::pow(l, 4) * base.K_nl, 1e-10 * s.K_nl);
            EXPECT_NEAR(s.M_b, l * base.M_b, 1e-10 * std::abs(s.M_b));
            EXPECT_NEAR(s.Mcal, l * l * base.Mcal, 1e-10 * s.Mcal);
            EXPECT_NEAR(s.omega0, base.omega0, 1e-12 * base.omega0);
        }
    }
}

TEST(ModalCoefficients, OmegaSquaredIsStiffnessOverMass) {
    for (const auto& cfg : {BeamConfig::no_tip_mass(), BeamConfig::tip_mass()}) {
        const auto m = build_modal_model(cfg);
        EXPECT_NEAR(m.omega0 * m.omega0, m.K_l / m.Mcal, 1e-12 * m.omega0 * m.omega0);
    }
    const auto m = build_modal_model(BeamConfig::no_tip_mass());
    EXPECT_NEAR(m.omega0, m.mode.beta * m.mode.beta, 1e-9);
}

TEST(ModalModelJson, RoundTripIsExact) {
    const auto m = build_modal_model(BeamConfig::tip_mass());
    const auto back = modal_model_from_json(to_json(m));
    EXPECT_EQ(back.omega0, m.omega0);
    EXPECT_EQ(back.Mcal, m.Mcal);
    EXPECT_EQ(back.Jcal, m.Jcal);
    EXPECT_EQ(back.K_l, m.K_l);
    EXPECT_EQ(back.K_nl, m.K_nl);
    EXPECT_EQ(back.M_b, m.M_b);
    EXPECT_EQ(back.mode.beta, m.mode.beta);
    EXPECT_EQ(back.mode.coeff_sin, m.mode.coeff_sin);
    EXPECT_EQ(back.mode.coeff_cosh, m.mode.coeff_cosh);
    EXPECT_EQ(to_json(back), to_json(m));
}
