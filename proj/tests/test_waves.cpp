#include <gtest/gtest.h>

#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "twoshock/waves.hpp"

using namespace twoshock;

namespace {
const GasLaw kLaw(5.0 / 3.0);
}

TEST(ShockSpeed, DirectFormula) {
    double vm = std::pow(1.1, -0.6);
    double s2 = shock_speed(kLaw, vm, 1.0, 2);
    EXPECT_NEAR(s2, std::sqrt(0.1 / (1.0 - vm)), 1e-12);
    EXPECT_NEAR(s2, 1.341, 2e-3);
    EXPECT_NEAR(shock_speed(kLaw, vm, 1.0, 1), -s2, 1e-15);
}

TEST(ConstructStates, IntermediateVolume) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    EXPECT_NEAR(c.v_m, std::pow(1.1, -0.6), 1e-12);
    EXPECT_NEAR(c.v_m, 0.9444, 1e-4);
    EXPECT_NEAR(pressure(kLaw, c.v_minus), pressure(kLaw, c.v_m) - 0.1, 1e-12);
    EXPECT_GT(c.v_minus, c.v_m);
    EXPECT_LT(c.v_m, c.v_plus);
    EXPECT_LE(rh_residual(c), 1e-12);
}

TEST(ConstructStates, AsymmetricPairResidual) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.2, 0.02);
    EXPECT_LE(rh_residual(c), 1e-12);
    EXPECT_LT(c.sigma1, 0.0);
    EXPECT_GT(c.sigma2, 0.0);
}

TEST(ConstructStates, SpeedNearIntermediateSoundSpeed) {
    // |sigma2 - sigma_m| / delta2 stays bounded across the sweep
    double worst = 0;
    for (double d : {0.025, 0.05, 0.1, 0.2}) {
        TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, d, d);
        double sm = std::sqrt(-dpressure(kLaw, c.v_m));
        worst = std::max(worst, std::abs(c.sigma2 - sm) / d);
    }
    EXPECT_LT(worst, 1.0);
}

TEST(ConstructStates, RejectsZeroStrength) {
    EXPECT_THROW(construct_states(kLaw, 1.0, 0.0, 0.0, 0.0), std::exception);
}

TEST(IntermediateState, RoundTrip) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    IntermediateState m = intermediate_state(kLaw, {c.v_minus, c.u_minus}, {c.v_plus, c.u_plus});
    EXPECT_NEAR(m.v_m, c.v_m, 1e-10);
    EXPECT_NEAR(m.u_m, c.u_m, 1e-10);
}

TEST(IntermediateState, EqualStatesRejected) {
    EXPECT_THROW(intermediate_state(kLaw, {1.0, 0.0}, {1.0, 0.0}), NoTwoShockSolution);
}

TEST(ProfileRhs, FixedPointsAndSign) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    for (int fam = 1; fam <= 2; ++fam) {
        ShockFamily f = shock_family(c, fam);
        EXPECT_NEAR(profile_rhs(kLaw, f.vL, f), 0.0, 1e-12);
        EXPECT_NEAR(profile_rhs(kLaw, f.vR, f), 0.0, 1e-12);
        double mid = profile_rhs(kLaw, 0.5 * (f.vL + f.vR), f);
        if (fam == 1)
            EXPECT_LT(mid, 0.0);
        else
            EXPECT_GT(mid, 0.0);
    }
}

class ProfileTest : public ::testing::TestWithParam<int> {};

TEST_P(ProfileTest, EndpointsAndMonotone) {
    int fam = GetParam();
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    ShockProfile p = solve_profile(c, fam);
    ShockFamily f = shock_family(c, fam);
    EXPECT_LE(std::abs(p.v(p.xi_min()) - f.vL), 1e-6 * f.delta * 1.01);
    EXPECT_LE(std::abs(p.v(p.xi_max()) - f.vR), 1e-6 * f.delta * 1.01);
    const auto& v = p.v_table();
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (fam == 1)
            EXPECT_LE(v[k], v[k - 1]);
        else
            EXPECT_GE(v[k], v[k - 1]);
    }
    EXPECT_NEAR(p.v(0.0), 0.5 * (f.vL + f.vR), 1e-9);
}

TEST_P(ProfileTest, MatchesIndependentIntegration) {
    int fam = GetParam();
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    ShockProfile p = solve_profile(c, fam);
    ShockFamily f = shock_family(c, fam);
    using namespace boost::numeric::odeint;
    auto rhs = [&](const double& v, double& dv, double) {
        double s = f.sigma;
        dv = -(v / s) * (s * s * (v - f.vL) + pressure(kLaw, v) - pressure(kLaw, f.vL));
    };
    double v = 0.5 * (f.vL + f.vR);
    auto stepper = make_controlled(1e-12, 1e-12, runge_kutta_dopri5<double>());
    integrate_adaptive(stepper, rhs, v, 0.0, 25.0, 0.01);
    EXPECT_NEAR(v, p.v(25.0), 1e-8);
}

TEST_P(ProfileTest, FirstIntegralAndTranslation) {
    int fam = GetParam();
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.05, 0.2);
    ShockProfile p = solve_profile(c, fam);
    for (double xi = -100; xi <= 100; xi += 7.3) {
        double dv = p.dv(xi);
        EXPECT_NEAR(p.du(xi) + p.sigma() * dv, 0.0, 1e-12 * std::abs(p.sigma() * dv) + 1e-300);
    }
    ProfileOptions o;
    o.anchor_xi = -2.5;
    ShockProfile q = solve_profile(c, fam, o);
    for (double xi = -40; xi <= 40; xi += 3.1) EXPECT_NEAR(q.v(xi - 2.5), p.v(xi), 1e-9);
}

TEST_P(ProfileTest, AnchorSlopeScalesQuadratically) {
    int fam = GetParam();
    std::vector<double> c;
    for (double d : {0.05, 0.1, 0.2}) {
        TwoShockConfig cfg = construct_states(kLaw, 1.0, 0.0, d, d);
        c.push_back(std::abs(solve_profile(cfg, fam).dv(0.0)) / (d * d));
    }
    for (double x : c) EXPECT_NEAR(x / c[1], 1.0, 0.2);
}

TEST_P(ProfileTest, TailIsExponential) {
    int fam = GetParam();
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    ShockProfile p = solve_profile(c, fam);
    // beyond the table the tail decays with the endpoint linearization rate
    double x0 = p.xi_max() + 10, x1 = x0 + 50;
    double rate = std::log(std::abs(p.eval(x1).dR) / std::abs(p.eval(x0).dR)) / 50.0;
    EXPECT_NEAR(rate, p.kappa_right(), 1e-6 * std::abs(p.kappa_right()));
    LogMagnitudes far = p.log_magnitudes(p.xi_max() + 1e5);
    EXPECT_TRUE(std::isfinite(far.dR));
    EXPECT_LT(far.dR, -1000.0);
}

TEST_P(ProfileTest, SecondDerivativeOutsideTableThrows) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    ShockProfile p = solve_profile(c, GetParam());
    EXPECT_THROW(p.second_derivative(p.xi_max() + 1.0), std::out_of_range);
    EXPECT_NO_THROW(p.second_derivative(0.0));
}

INSTANTIATE_TEST_SUITE_P(Families, ProfileTest, ::testing::Values(1, 2));
