#pragma once

#include <array>
#include <string>
#include <vector>

#include "twoshock/composite.hpp"
#include "twoshock/pde.hpp"
#include "twoshock/shifts.hpp"

namespace twoshock {

struct NormTriple {
    double l2 = 0, h1 = 0, linf = 0;
};

// Named terms of d/dt int a eta = sum Xdot_i Y_i + B - G.
struct Decomposition {
    std::array<std::array<double, 6>, 2> Y{};  // Y[i-1][j-1] = Y_ij
    std::array<double, 2> Y_total{};           // Y_i from its defining formula
    std::array<double, 2> Y1_shift{}, Y2_shift{};  // Y_i1, Y_i2 on the shift quadrature
    std::array<double, 5> B{};
    double S1 = 0, S2 = 0;
    double G1 = 0, G2 = 0, Dcal = 0;
    double J_bad = 0, J_good = 0;
    double B_total() const;
    double G_total() const;
};

struct GoodTerms {
    double G1 = 0;           // sum int |(a_i)_x| |h - ht - (p - pt)/sigma_i|^2
    double GS_volume = 0;    // sum int |(v_i)_x| |phi_i (v - vt)|^2
    double GS_pressure = 0;  // sum int |(v_i)_x| |phi_i (p(v) - p(vt))|^2
    double D = 0, D1 = 0, D2 = 0;
    double G2 = 0, Dcal = 0;
};

// Separation diagnostics of the two reference waves, stored as natural logarithms
// (they reach exp(-1000) and below in long runs).
struct InteractionQuantities {
    double sup_wave_overlap = 0;   // max_i sup_x |(v_i)_x| |vt - v_i|
    double int_wave_overlap = 0;   // sum_i int |(v_i)_x| |vt - v_i|
    double int_slope_product = 0;  // int |(v_1)_x| |(v_2)_x|
    double sup_phi2_v1x = 0, sup_phi1_v2x = 0;
    double int_phi2_v1x = 0, int_phi1_v2x = 0;

    static constexpr int count = 7;
    std::array<double, 7> as_array() const;
    static std::array<std::string, 7> names();
};

struct DiagnosticsFrame {
    double t = 0;
    NormTriple pert_v, pert_u, pert_h;
    ShiftPair shifts;
    double weighted_entropy = 0;
    double entropy = 0;
    GoodTerms good;
    Decomposition dec;
    double identity_rhs = 0;  // sum Xdot_i Y_i + B - G
    double identity_scale = 0;  // sum of magnitudes of the right-hand-side terms
    std::array<std::array<double, 2>, 2> zeroth{};  // unweighted Y_i1, Y_i2 in (v,u) variables
    SeparationStatus separation;
    InteractionQuantities interaction;
    std::array<double, 3> E_l2{};
    double v_min = 0, v_max = 0;
};

class FrameEvaluator {
public:
    FrameEvaluator(const Composite& c, const WeightSpec& w, const Grid& g) : c_(c), w_(w), grid_(g) {}

    DiagnosticsFrame evaluate(const FieldState& s, const ShiftPair& X) const;

    // Shift rates at this state (computed by the shifts module).
    ShiftVec rates(const FieldState& s, const ShiftPair& X) const;

    const Composite& composite() const { return c_; }
    const WeightSpec& weight() const { return w_; }
    const Grid& grid() const { return grid_; }

private:
    const Composite& c_;
    WeightSpec w_;
    Grid grid_;
};

double weighted_rel_entropy(const Composite& c, const WeightSpec& w, const Grid& g,
                            const FieldState& s, const ShiftPair& X);

struct IdentityResidual {
    std::vector<double> t, lhs, rhs, residual, scale;
    double aggregate_abs = 0;  // int |residual| dt
    double aggregate_rel = 0;  // int |residual| dt / int scale dt
};

// d/dt int a eta by fourth-order finite differences on uniformly spaced frames.
IdentityResidual identity_audit(const std::vector<DiagnosticsFrame>& frames);

struct LocalizedPerturbation {
    int family = 1;
    std::vector<double> x, y, w, jacobian;
    double integral_y = 0;  // int w dy (trapezoid in y)
    double integral_x = 0;  // int |p(v_i)_x| / delta_i phi_i (p(v) - p(vt)) dx
};

LocalizedPerturbation localize(const Composite& c, const Grid& g, const FieldState& s,
                               const ShiftPair& X, int family);

struct PoincareResult {
    double lhs = 0, rhs = 0, slack = 0;
};

// f is treated as piecewise linear on the samples and extended by constants to [0,1].
PoincareResult poincare_check(const std::vector<double>& y, const std::vector<double>& f);

// CSV schema of a frame row.
std::vector<std::string> frame_columns();
std::vector<double> frame_values(const DiagnosticsFrame& f);

}  // namespace twoshock
