#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "twoshock/shifts.hpp"

using namespace twoshock;

namespace {

const GasLaw kLaw(5.0 / 3.0);

struct WaveSetup {
    TwoShockConfig c;
    Composite comp;
    WeightSpec w;
    explicit WaveSetup(double d1 = 0.1, double d2 = 0.1)
        : c(construct_states(kLaw, 1.0, 0.0, d1, d2)), comp(c), w{default_lambda(c)} {}

    std::vector<double> state(const Grid& g, double t, const ShiftPair& X, double amp, double width = 10.0) const {
        std::vector<double> v(g.n);
        for (int j = 0; j < g.n; ++j) {
            double x = g.x(j);
            v[j] = comp.state(t, x, X).v + amp * std::exp(-0.5 * (x / width) * (x / width));
        }
        return v;
    }
};

}  // namespace

TEST(ShiftRhs, ZeroPerturbationGivesZeroRates) {
    WaveSetup s;
    Grid g = make_grid(-200, 200, 0.2);
    for (double t : {0.0, 7.0}) {
        ShiftPair X;
        X.X1 = 0.3;
        X.X2 = -0.2;
        ShiftVec r = shift_rhs(s.comp, s.w, g, t, s.state(g, t, X, 0.0), X);
        EXPECT_EQ(r[0], 0.0);
        EXPECT_EQ(r[1], 0.0);
    }
}

TEST(ShiftRhs, FormulaFromParts) {
    WaveSetup s;
    Grid g = make_grid(-200, 200, 0.2);
    ShiftIntegrals parts;
    ShiftVec r = shift_rhs(s.comp, s.w, g, 0.0, s.state(g, 0.0, {}, 0.01), {}, &parts);
    ShiftConstants K = shift_constants(s.c);
    EXPECT_NEAR(r[0], -(K.M / s.c.delta1) * (parts.Y1[0] + parts.Y2[0]), 1e-15);
    EXPECT_NEAR(r[1], -(K.M / s.c.delta2) * (parts.Y1[1] + parts.Y2[1]), 1e-15);
    EXPECT_NE(r[0], 0.0);
}

TEST(ShiftRhs, QuadratureMatchesDoubledResolution) {
    WaveSetup s;
    Grid g1 = make_grid(-300, 300, 0.2), g2 = make_grid(-300, 300, 0.1);
    ShiftVec a = shift_rhs(s.comp, s.w, g1, 0.0, s.state(g1, 0.0, {}, 0.01), {});
    ShiftVec b = shift_rhs(s.comp, s.w, g2, 0.0, s.state(g2, 0.0, {}, 0.01), {});
    for (int i = 0; i < 2; ++i) EXPECT_LE(std::abs(a[i] - b[i]) / std::abs(b[i]), 1e-4);
}

TEST(ShiftRhs, RateBoundedBySupNormUniformlyInStrength) {
    std::vector<double> ratios;
    for (double d : {0.05, 0.1, 0.2}) {
        WaveSetup s(d, d);
        Grid g = make_grid(-400, 400, 0.02 / d);
        for (double c : {-20.0, 0.0, 15.0}) {
            std::vector<double> v(g.n), vt(g.n);
            for (int j = 0; j < g.n; ++j) {
                double x = g.x(j);
                vt[j] = s.comp.state(0, x, {}).v;
                v[j] = vt[j] + 0.01 * std::exp(-0.5 * ((x - c) / 10) * ((x - c) / 10));
            }
            ShiftVec r = shift_rhs(s.comp, s.w, g, 0.0, v, {});
            ratios.push_back((std::abs(r[0]) + std::abs(r[1])) / 0.01);
        }
    }
    double mx = *std::max_element(ratios.begin(), ratios.end());
    EXPECT_LT(mx, 10.0);
}

TEST(ShiftRhs, BoundedOnRandomBoundedStates) {
    WaveSetup s;
    Grid g = make_grid(-200, 200, 0.2);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> v(g.n);
        for (double& x : v) x = U(rng);
        ShiftVec r = shift_rhs(s.comp, s.w, g, 0.0, v, {});
        EXPECT_TRUE(std::isfinite(r[0]) && std::isfinite(r[1]));
    }
}

TEST(AdvanceShifts, Exactness) {
    ShiftVec X{0.5, -0.25};
    ShiftVec zero[4] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    ShiftVec a = advance_shifts(X, zero, 0.1);
    EXPECT_EQ(a[0], 0.5);
    EXPECT_EQ(a[1], -0.25);
    ShiftVec c[4] = {{2, -1}, {2, -1}, {2, -1}, {2, -1}};
    ShiftVec Y{0, 0};
    for (int k = 0; k < 8; ++k) Y = advance_shifts(Y, c, 0.125);
    EXPECT_DOUBLE_EQ(Y[0], 2.0);
    EXPECT_DOUBLE_EQ(Y[1], -1.0);
}

TEST(AdvanceShifts, FourthOrderOnFrozenField) {
    auto err = [](int n) {
        double dt = 2.0 / n;
        ShiftVec X{0, 0};
        for (int k = 0; k < n; ++k) {
            double t = k * dt;
            ShiftVec s[4] = {{std::cos(t), std::exp(t)},
                             {std::cos(t + dt / 2), std::exp(t + dt / 2)},
                             {std::cos(t + dt / 2), std::exp(t + dt / 2)},
                             {std::cos(t + dt), std::exp(t + dt)}};
            X = advance_shifts(X, s, dt);
        }
        return std::abs(X[0] - std::sin(2.0)) + std::abs(X[1] - (std::exp(2.0) - 1));
    };
    EXPECT_NEAR(std::log2(err(10) / err(20)), 4.0, 0.15);
}

TEST(Separation, MarginsAtZeroShift) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    SeparationStatus s = separation_monitor({}, 10.0, c);
    EXPECT_NEAR(s.margin1, std::abs(c.sigma1) * 10.0 / 2, 1e-12);
    EXPECT_NEAR(s.margin2, c.sigma2 * 10.0 / 2, 1e-12);
    EXPECT_TRUE(s.separated);
    ShiftPair far;
    far.X1 = 100;
    EXPECT_FALSE(separation_monitor(far, 10.0, c).separated);
}
