#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoshock/composite.hpp"

namespace twoshock {

// Nodes x_j = x_left + j dx, j = 0..n-1; ghost nodes at j = -1 and j = n.
struct Grid {
    double x_left = 0;
    double dx = 1;
    int n = 0;

    double x(int j) const { return x_left + j * dx; }
    double x_right() const { return x(n - 1); }
    std::vector<double> nodes() const;
};

Grid make_grid(double x_left, double x_right, double dx);

struct FieldState {
    double t = 0;
    std::vector<double> v, u;
    // Effective velocity u - (ln v)_x; refreshed at frame emission.
    std::vector<double> h;
};

struct Ghosts {
    double vL = 1, uL = 0, vR = 1, uR = 0;
};

enum class PerturbShape { zero, gaussian, bump };

PerturbShape parse_shape(const std::string& s);
std::string shape_name(PerturbShape s);

struct ComponentPerturbation {
    PerturbShape shape = PerturbShape::zero;
    double amplitude = 0;
    double center = 0;
    double width = 1;

    double operator()(double x) const;
};

struct PerturbationSpec {
    ComponentPerturbation v, u;
};

class PositivityError : public std::runtime_error {
public:
    PositivityError(const std::string& msg, double t, double x, double v)
        : std::runtime_error(msg), t(t), x(x), v(v) {}
    double t, x, v;
};

class StabilityError : public std::runtime_error {
public:
    StabilityError(const std::string& msg, double required_dt)
        : std::runtime_error(msg), required_dt(required_dt) {}
    double required_dt;
};

struct PerturbationNorms {
    double l2_v = 0, h1_v = 0, linf_v = 0;
    double l2_u = 0, h1_u = 0, linf_u = 0;
};

// Midpoint-rule L2, forward-difference H1 and max norm of f on the grid.
double norm_l2(const std::vector<double>& f, double dx);
double norm_h1(const std::vector<double>& f, double dx);
double norm_linf(const std::vector<double>& f);

FieldState init_state(const Grid& grid, const Composite& c, const PerturbationSpec& pert,
                      PerturbationNorms* norms = nullptr);

// Central (ln v)_x with ghosts; h = u - (ln v)_x.
void effective_velocity(const Grid& grid, const std::vector<double>& v,
                        const std::vector<double>& u, const Ghosts& g, std::vector<double>& h);

// v_t = u_x, u_t = -p(v)_x + (u_x / v)_x on interior nodes, ghosts supply the boundary.
void ns_rhs(double gamma, const Grid& grid, const std::vector<double>& v,
            const std::vector<double>& u, const Ghosts& g, std::vector<double>& dv,
            std::vector<double>& du);

// min(dx^2 min v, dx / max sqrt(-p'(v)))
double stability_scale(double gamma, const Grid& grid, const std::vector<double>& v);
inline double default_dt(double gamma, const Grid& grid, const std::vector<double>& v) {
    return 0.4 * stability_scale(gamma, grid, v);
}
// Largest dt step() accepts.
inline double max_stable_dt(double gamma, const Grid& grid, const std::vector<double>& v) {
    return 0.5 * stability_scale(gamma, grid, v);
}

using ShiftVec = std::array<double, 2>;

// Boundary data and shift dynamics seen by the time integrator.
class Coupling {
public:
    virtual ~Coupling() = default;
    virtual Ghosts ghosts(double t, const ShiftVec& X) const = 0;
    virtual ShiftVec shift_rates(double t, std::span<const double> v, std::span<const double> u,
                                 const ShiftVec& X) const = 0;
};

// Dirichlet ghosts from the shifted composite wave; shifts frozen.
class CompositeBoundary : public Coupling {
public:
    CompositeBoundary(const Composite& c, const Grid& g) : c_(c), grid_(g) {}
    Ghosts ghosts(double t, const ShiftVec& X) const override;
    ShiftVec shift_rates(double, std::span<const double>, std::span<const double>,
                         const ShiftVec&) const override {
        return {0.0, 0.0};
    }

private:
    const Composite& c_;
    Grid grid_;
};

// Classical RK4 on (v, u, X1, X2).
class Integrator {
public:
    Integrator(const GasLaw& law, const Grid& grid, const Coupling& coupling);

    // Advances state and shifts from t to t + dt; t_next overrides the stored time.
    void step(FieldState& s, ShiftVec& X, double dt, double t_next);
    void step(FieldState& s, ShiftVec& X, double dt) { step(s, X, dt, s.t + dt); }

    const Grid& grid() const { return grid_; }
    const Coupling& coupling() const { return coupling_; }
    double gamma() const { return gamma_; }

private:
    void stage(double t, std::vector<double>& V, std::vector<double>& U, const ShiftVec& X,
               std::vector<double>& kv, std::vector<double>& ku, ShiftVec& kX);

    double gamma_;
    Grid grid_;
    const Coupling& coupling_;
    std::vector<double> P_, F_;
    std::vector<double> kv_[4], ku_[4], tv_, tu_;
};

struct RunOptions {
    double T = 0;
    double dt = 0;
    long stride = 1;
    long start_step = 0;
    // Stop after this many emitted frames (0 = no limit); used for interrupted runs.
    long halt_after_frames = 0;
};

// Called at every emitted frame: step index, state (h refreshed), shifts.
using FrameSink = std::function<void(long step, const FieldState&, const ShiftVec&)>;

struct RunResult {
    long steps = 0;
    long frames = 0;
    bool halted = false;
};

long total_steps(const RunOptions& opt);

RunResult run(Integrator& integ, FieldState& s, ShiftVec& X, const RunOptions& opt,
              const FrameSink& sink);

}  // namespace twoshock
