#include <gtest/gtest.h>

#include <cmath>

#include "twoshock/functionals.hpp"
#include "twoshock/scenario.hpp"

using namespace twoshock;

namespace {

const GasLaw kLaw(5.0 / 3.0);

FieldState perturbed(const Composite& c, const Grid& g, double t, const ShiftPair& X, double amp) {
    FieldState s;
    s.t = t;
    for (int j = 0; j < g.n; ++j) {
        double x = g.x(j);
        StatePoint p = c.state(t, x, X);
        double bump = amp * std::exp(-0.5 * (x / 10) * (x / 10));
        s.v.push_back(p.v + bump);
        s.u.push_back(p.u + 0.5 * bump);
    }
    return s;
}

}  // namespace

TEST(WeightedEntropy, ZeroPerturbationAndUnweightedLimit) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    Composite comp(c);
    Grid g = make_grid(-300, 300, 0.2);
    FieldState s = perturbed(comp, g, 400.0, {}, 0.0);
    EXPECT_LT(std::abs(weighted_rel_entropy(comp, {0.1}, g, s, {})), 1e-20);
    FieldState p = perturbed(comp, g, 0.0, {}, 0.01);
    DiagnosticsFrame f = FrameEvaluator(comp, {0.0}, g).evaluate(p, {});
    EXPECT_DOUBLE_EQ(f.weighted_entropy, f.entropy);
    EXPECT_GT(f.entropy, 0.0);
}

TEST(WeightedEntropy, SecondOrderUnderRefinement) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    Composite comp(c);
    WeightSpec w{default_lambda(c)};
    std::vector<double> val;
    for (double dx : {0.8, 0.4, 0.2}) {
        Grid g = make_grid(-200, 200, dx);
        val.push_back(weighted_rel_entropy(comp, w, g, perturbed(comp, g, 0.0, {}, 0.01), {}));
    }
    double ratio = (val[0] - val[1]) / (val[1] - val[2]);
    EXPECT_NEAR(ratio, 4.0, 0.4);
}

TEST(Functionals, GoodTermsSignsAndComparability) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    Composite comp(c);
    Grid g = make_grid(-300, 300, 0.2);
    FrameEvaluator ev(comp, {default_lambda(c)}, g);
    for (double t : {0.0, 20.0}) {
        DiagnosticsFrame f = ev.evaluate(perturbed(comp, g, t, {}, 0.01), {});
        EXPECT_GE(f.good.G2, 0.0);
        EXPECT_GE(f.good.D, 0.0);
        EXPECT_GE(f.good.GS_volume, 0.0);
        double r = f.good.GS_pressure / f.good.GS_volume;
        EXPECT_GT(r, 0.1);
        EXPECT_LT(r, 10.0);
    }
}

TEST(Functionals, DecompositionIdentities) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    Composite comp(c);
    Grid g = make_grid(-300, 300, 0.2);
    FrameEvaluator ev(comp, {default_lambda(c)}, g);
    ShiftPair X;
    X.X1 = 0.2;
    X.X2 = -0.1;
    DiagnosticsFrame f = ev.evaluate(perturbed(comp, g, 5.0, X, 0.01), X);
    ShiftConstants K = shift_constants(c);
    for (int i = 0; i < 2; ++i) {
        double sum = 0, mag = 0;
        for (double y : f.dec.Y[i]) sum += y, mag += std::abs(y);
        EXPECT_LE(std::abs(f.dec.Y_total[i] - sum), 1e-12 * mag);
        double delta = i == 0 ? c.delta1 : c.delta2;
        double formula = -(K.M / delta) * (f.dec.Y[i][0] + f.dec.Y[i][1]);
        EXPECT_LE(std::abs(f.shifts.Xdot(i + 1) - formula), 1e-12 * std::abs(formula));
    }
    double lhs = f.dec.J_bad - f.dec.J_good, rhs = f.dec.B_total() - f.dec.G_total();
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (std::abs(f.dec.J_bad) + std::abs(f.dec.J_good)));
}

TEST(Localize, EndpointsZeroAndChangeOfVariables) {
    TwoShockConfig c = construct_states(kLaw, 1.0, 0.0, 0.1, 0.1);
    Composite comp(c);
    Grid g = make_grid(-300, 300, 0.025);
    for (int fam = 1; fam <= 2; ++fam) {
        LocalizedPerturbation z = localize(comp, g, perturbed(comp, g, 10.0, {}, 0.0), {}, fam);
        for (double w : z.w) EXPECT_EQ(w, 0.0);
        EXPECT_LT(z.y.front(), 1e-5);
        EXPECT_GT(z.y.back(), 1 - 1e-5);
        LocalizedPerturbation L = localize(comp, g, perturbed(comp, g, 10.0, {}, 0.01), {}, fam);
        EXPECT_NEAR(L.integral_y / L.integral_x, 1.0, 1e-6);
    }
}

TEST(Poincare, ExactCases) {
    std::vector<double> y, f, k;
    for (int j = 0; j <= 1000; ++j) {
        y.push_back(j / 1000.0);
        f.push_back(j / 1000.0);
        k.push_back(-2.0);
    }
    PoincareResult r = poincare_check(y, f);
    EXPECT_NEAR(r.lhs, 1.0 / 12, 1e-10);
    EXPECT_NEAR(r.rhs, 1.0 / 12, 1e-10);
    PoincareResult c = poincare_check(y, k);
    EXPECT_NEAR(c.lhs, 0.0, 1e-14);
    EXPECT_NEAR(c.rhs, 0.0, 1e-14);
}

TEST(FrameSchema, ColumnsMatchValues) {
    DiagnosticsFrame f;
    EXPECT_EQ(frame_columns().size(), frame_values(f).size());
    EXPECT_EQ(frame_columns().front(), "t");
}

TEST(IdentityAudit, ShortRunResidualSmall) {
    RunConfig rc;
    rc.T = 10;
    rc.frame_interval = 0.5;
    rc.x_left = -250;
    rc.x_right = 250;
    Scenario sc = build_scenario(rc);
    SimulationResult r = simulate(sc);
    IdentityResidual a = identity_audit(r.frames);
    EXPECT_EQ(a.t.size() + 2, r.frames.size());
    EXPECT_LT(a.aggregate_rel, 0.05);
}
