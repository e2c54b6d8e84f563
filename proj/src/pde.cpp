#include "twoshock/pde.hpp"

#include <algorithm>
#include <cmath>

#include "twoshock/numerics.hpp"
#include "twoshock/shifts.hpp"

namespace twoshock {

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = this->x(j);
    return x;
}

Grid make_grid(double x_left, double x_right, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (!(x_right > x_left)) throw std::invalid_argument("grid needs x_right > x_left");
    Grid g;
    g.x_left = x_left;
    g.dx = dx;
    g.n = static_cast<int>(std::floor((x_right - x_left) / dx + 1e-9)) + 1;
    if (g.n < 16) throw std::invalid_argument("grid needs at least 16 nodes");
    return g;
}

PerturbShape parse_shape(const std::string& s) {
    if (s == "zero") return PerturbShape::zero;
    if (s == "gaussian") return PerturbShape::gaussian;
    if (s == "bump" || s == "compact-bump") return PerturbShape::bump;
    throw std::invalid_argument("unknown perturbation shape '" + s + "'");
}

std::string shape_name(PerturbShape s) {
    switch (s) {
        case PerturbShape::gaussian: return "gaussian";
        case PerturbShape::bump: return "bump";
        default: return "zero";
    }
}

double ComponentPerturbation::operator()(double x) const {
    double r = (x - center) / width;
    switch (shape) {
        case PerturbShape::gaussian:
            return amplitude * std::exp(-0.5 * r * r);
        case PerturbShape::bump:
            if (std::abs(r) >= 1.0) return 0.0;
            return amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
        default:
            return 0.0;
    }
}

double norm_l2(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    std::vector<double> sq(f.size() - 1);
    for (std::size_t j = 0; j + 1 < f.size(); ++j) {
        double m = 0.5 * (f[j] + f[j + 1]);
        sq[j] = m * m;
    }
    return std::sqrt(dx * pairwise_sum(sq));
}

double norm_h1(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    std::vector<double> sq(f.size() - 1);
    for (std::size_t j = 0; j + 1 < f.size(); ++j) {
        double d = (f[j + 1] - f[j]) / dx;
        sq[j] = d * d;
    }
    double l2 = norm_l2(f, dx);
    return std::sqrt(l2 * l2 + dx * pairwise_sum(sq));
}

double norm_linf(const std::vector<double>& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

FieldState init_state(const Grid& grid, const Composite& c, const PerturbationSpec& pert,
                      PerturbationNorms* norms) {
    FieldState s;
    s.t = 0;
    s.v.resize(grid.n);
    s.u.resize(grid.n);
    std::vector<double> dv(grid.n), du(grid.n);
    ShiftPair zero;
    double vmin_allowed = 0.5 * c.config().v_minus;
    for (int j = 0; j < grid.n; ++j) {
        double x = grid.x(j);
        StatePoint ref = c.state(0.0, x, zero);
        dv[j] = pert.v(x);
        du[j] = pert.u(x);
        s.v[j] = ref.v + dv[j];
        s.u[j] = ref.u + du[j];
        if (!(s.v[j] > 0.0))
            throw PositivityError("initial specific volume is not positive", 0.0, x, s.v[j]);
        if (!(s.v[j] > vmin_allowed))
            throw PositivityError("initial specific volume drops below v_-/2", 0.0, x, s.v[j]);
    }
    effective_velocity(grid, s.v, s.u, CompositeBoundary(c, grid).ghosts(0.0, {0.0, 0.0}), s.h);
    if (norms) {
        norms->l2_v = norm_l2(dv, grid.dx);
        norms->h1_v = norm_h1(dv, grid.dx);
        norms->linf_v = norm_linf(dv);
        norms->l2_u = norm_l2(du, grid.dx);
        norms->h1_u = norm_h1(du, grid.dx);
        norms->linf_u = norm_linf(du);
    }
    return s;
}

void effective_velocity(const Grid& grid, const std::vector<double>& v,
                        const std::vector<double>& u, const Ghosts& g, std::vector<double>& h) {
    int n = grid.n;
    h.resize(n);
    std::vector<double> L(n + 2);
    L[0] = std::log(g.vL);
    L[n + 1] = std::log(g.vR);
    for (int j = 0; j < n; ++j) L[j + 1] = std::log(v[j]);
    double inv = 1.0 / (2.0 * grid.dx);
    for (int j = 0; j < n; ++j) h[j] = u[j] - (L[j + 2] - L[j]) * inv;
}

namespace {

// Padded layout: index 0 and n+1 are ghosts.
void rhs_padded(double gamma, int n, double dx, const double* V, const double* U, double* P,
                double* F, double* dv, double* du) {
    for (int j = 0; j < n + 2; ++j) P[j] = std::pow(V[j], -gamma);
    double inv_dx = 1.0 / dx;
    for (int j = 0; j < n + 1; ++j) F[j] = (U[j + 1] - U[j]) * inv_dx / (0.5 * (V[j] + V[j + 1]));
    double inv_2dx = 0.5 * inv_dx;
    for (int j = 0; j < n; ++j) {
        dv[j] = (U[j + 2] - U[j]) * inv_2dx;
        du[j] = -(P[j + 2] - P[j]) * inv_2dx + (F[j + 1] - F[j]) * inv_dx;
    }
}

}  // namespace

void ns_rhs(double gamma, const Grid& grid, const std::vector<double>& v,
            const std::vector<double>& u, const Ghosts& g, std::vector<double>& dv,
            std::vector<double>& du) {
    int n = grid.n;
    std::vector<double> V(n + 2), U(n + 2), P(n + 2), F(n + 1);
    V[0] = g.vL;
    U[0] = g.uL;
    V[n + 1] = g.vR;
    U[n + 1] = g.uR;
    std::copy(v.begin(), v.end(), V.begin() + 1);
    std::copy(u.begin(), u.end(), U.begin() + 1);
    dv.resize(n);
    du.resize(n);
    rhs_padded(gamma, n, grid.dx, V.data(), U.data(), P.data(), F.data(), dv.data(), du.data());
}

double stability_scale(double gamma, const Grid& grid, const std::vector<double>& v) {
    double vmin = *std::min_element(v.begin(), v.end());
    if (!(vmin > 0.0)) return 0.0;
    // -p' is decreasing in v, so the largest sound speed sits at min v
    double cmax = std::sqrt(gamma * std::pow(vmin, -gamma - 1.0));
    return std::min(grid.dx * grid.dx * vmin, grid.dx / cmax);
}

Ghosts CompositeBoundary::ghosts(double t, const ShiftVec& X) const {
    ShiftPair s;
    s.X1 = X[0];
    s.X2 = X[1];
    StatePoint l = c_.state(t, grid_.x(-1), s);
    StatePoint r = c_.state(t, grid_.x(grid_.n), s);
    return {l.v, l.u, r.v, r.u};
}

Integrator::Integrator(const GasLaw& law, const Grid& grid, const Coupling& coupling)
    : gamma_(law.gamma), grid_(grid), coupling_(coupling) {
    int n = grid.n;
    P_.resize(n + 2);
    F_.resize(n + 1);
    for (int k = 0; k < 4; ++k) {
        kv_[k].resize(n);
        ku_[k].resize(n);
    }
    tv_.resize(n + 2);
    tu_.resize(n + 2);
}

void Integrator::stage(double t, std::vector<double>& V, std::vector<double>& U,
                       const ShiftVec& X, std::vector<double>& kv, std::vector<double>& ku,
                       ShiftVec& kX) {
    int n = grid_.n;
    Ghosts g = coupling_.ghosts(t, X);
    V[0] = g.vL;
    U[0] = g.uL;
    V[n + 1] = g.vR;
    U[n + 1] = g.uR;
    rhs_padded(gamma_, n, grid_.dx, V.data(), U.data(), P_.data(), F_.data(), kv.data(), ku.data());
    kX = coupling_.shift_rates(t, std::span<const double>(V.data() + 1, n),
                               std::span<const double>(U.data() + 1, n), X);
}

void Integrator::step(FieldState& s, ShiftVec& X, double dt, double t_next) {
    int n = grid_.n;
    double limit = max_stable_dt(gamma_, grid_, s.v);
    if (dt > limit)
        throw StabilityError("time step exceeds the stability bound", limit);
    double t = s.t;
    ShiftVec kX[4];
    static const double c[4] = {0.0, 0.5, 0.5, 1.0};
    for (int k = 0; k < 4; ++k) {
        ShiftVec Xs = X;
        if (k == 0) {
            std::copy(s.v.begin(), s.v.end(), tv_.begin() + 1);
            std::copy(s.u.begin(), s.u.end(), tu_.begin() + 1);
        } else {
            double a = c[k] * dt;
            const std::vector<double>& pv = kv_[k - 1];
            const std::vector<double>& pu = ku_[k - 1];
            for (int j = 0; j < n; ++j) {
                tv_[j + 1] = s.v[j] + a * pv[j];
                tu_[j + 1] = s.u[j] + a * pu[j];
            }
            Xs[0] += a * kX[k - 1][0];
            Xs[1] += a * kX[k - 1][1];
        }
        stage(t + c[k] * dt, tv_, tu_, Xs, kv_[k], ku_[k], kX[k]);
    }
    double w = dt / 6.0;
    for (int j = 0; j < n; ++j) {
        s.v[j] += w * (kv_[0][j] + 2.0 * kv_[1][j] + 2.0 * kv_[2][j] + kv_[3][j]);
        s.u[j] += w * (ku_[0][j] + 2.0 * ku_[1][j] + 2.0 * ku_[2][j] + ku_[3][j]);
    }
    X = advance_shifts(X, kX, dt);
    s.t = t_next;
    for (int j = 0; j < n; ++j) {
        if (!(s.v[j] > 0.0))
            throw PositivityError("specific volume lost positivity", s.t, grid_.x(j), s.v[j]);
    }
}

long total_steps(const RunOptions& opt) {
    return static_cast<long>(std::floor(opt.T / opt.dt * (1.0 + 1e-12)));
}

RunResult run(Integrator& integ, FieldState& s, ShiftVec& X, const RunOptions& opt,
              const FrameSink& sink) {
    RunResult r;
    long N = total_steps(opt);
    long k = opt.start_step;
    auto emit = [&]() {
        effective_velocity(integ.grid(), s.v, s.u, integ.coupling().ghosts(s.t, X), s.h);
        if (sink) sink(k, s, X);
        ++r.frames;
    };
    if (k == 0) emit();
    while (k < N) {
        if (opt.halt_after_frames > 0 && r.frames >= opt.halt_after_frames) {
            r.halted = true;
            break;
        }
        integ.step(s, X, opt.dt, static_cast<double>(k + 1) * opt.dt);
        ++k;
        ++r.steps;
        if (k % opt.stride == 0) emit();
    }
    return r;
}

}  // namespace twoshock
