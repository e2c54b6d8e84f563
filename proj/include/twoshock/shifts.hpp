#pragma once

#include <array>
#include <span>

#include "twoshock/composite.hpp"
#include "twoshock/pde.hpp"

namespace twoshock {

struct ShiftConstants {
    double M = 0;
    double sigma_m = 0;  // sqrt(-p'(v_m))
    double alpha_m = 0;  // (gamma+1) / (2 gamma sigma_m p(v_m))
};

ShiftConstants shift_constants(const TwoShockConfig& cfg);

// The two integrals driving shift i: Y_i1 = int (a/sigma_i)(h_i)_x (p(v)-p(vt)),
// Y_i2 = -int a (p(v_i))_x (v - vt).
struct ShiftIntegrals {
    std::array<double, 2> Y1{}, Y2{};
};

// Node index range [first, last] where wave i is not constant.
std::array<int, 2> support_nodes(const Composite& c, const Grid& grid, int i, double t,
                                 const ShiftPair& s);

// Xdot_i = -(M/delta_i)(Y_i1 + Y_i2), trapezoid quadrature on the solver grid.
ShiftVec shift_rhs(const Composite& c, const WeightSpec& w, const Grid& grid, double t,
                   std::span<const double> v, const ShiftPair& s,
                   ShiftIntegrals* parts = nullptr);

// RK4 combination of the four stage rates.
ShiftVec advance_shifts(const ShiftVec& X, const ShiftVec k[4], double dt);

struct SeparationStatus {
    double margin1 = 0;  // sigma1 t / 2 - (X1 + sigma1 t), >= 0 when separated
    double margin2 = 0;  // (X2 + sigma2 t) - sigma2 t / 2
    bool separated = false;
};

SeparationStatus separation_monitor(const ShiftPair& s, double t, const TwoShockConfig& cfg);

// Couples the shift ODE to the solver: composite ghosts and shift rates per stage.
class ShiftDriver : public Coupling {
public:
    ShiftDriver(const Composite& c, const WeightSpec& w, const Grid& g, bool frozen = false)
        : c_(c), w_(w), grid_(g), frozen_(frozen) {}

    Ghosts ghosts(double t, const ShiftVec& X) const override;
    ShiftVec shift_rates(double t, std::span<const double> v, std::span<const double> u,
                         const ShiftVec& X) const override;

private:
    const Composite& c_;
    WeightSpec w_;
    Grid grid_;
    bool frozen_;
};

}  // namespace twoshock
