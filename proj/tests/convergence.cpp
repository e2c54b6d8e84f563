#include "convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twoshock/pde.hpp"

namespace twoshock::refsol {

namespace {

constexpr double kGamma = 5.0 / 3.0, kA = 0.2, kB = 0.1;

double exact_v(double t, double x) { return 1.0 + kA * std::sin(x - t); }
double exact_u(double t, double x) { return kB * std::cos(x + t); }

void source(double t, double x, double& sv, double& su) {
    double v = exact_v(t, x), vt = -kA * std::cos(x - t), vx = kA * std::cos(x - t);
    double ut = -kB * std::sin(x + t), ux = -kB * std::sin(x + t), uxx = -kB * std::cos(x + t);
    double px = -kGamma * std::pow(v, -kGamma - 1.0) * vx;
    sv = vt - ux;
    su = ut + px - (uxx / v - ux * vx / (v * v));
}

}  // namespace

double manufactured_error(int n, double T) {
    double L = 2.0 * std::numbers::pi;
    Grid g;
    g.dx = L / (n + 1);
    g.x_left = g.dx;
    g.n = n;
    std::vector<double> v(n), u(n);
    for (int j = 0; j < n; ++j) {
        v[j] = exact_v(0, g.x(j));
        u[j] = exact_u(0, g.x(j));
    }
    double dt = 0.4 * stability_scale(kGamma, g, v);
    long steps = static_cast<long>(std::ceil(T / dt));
    dt = T / steps;
    auto rhs = [&](double t, const std::vector<double>& V, const std::vector<double>& U, std::vector<double>& kv,
                   std::vector<double>& ku) {
        Ghosts gh{exact_v(t, g.x(-1)), exact_u(t, g.x(-1)), exact_v(t, g.x(n)), exact_u(t, g.x(n))};
        ns_rhs(kGamma, g, V, U, gh, kv, ku);
        for (int j = 0; j < n; ++j) {
            double sv, su;
            source(t, g.x(j), sv, su);
            kv[j] += sv;
            ku[j] += su;
        }
    };
    std::vector<double> k1v, k1u, k2v, k2u, k3v, k3u, k4v, k4u, tv(n), tu(n);
    for (long s = 0; s < steps; ++s) {
        double t = s * dt;
        rhs(t, v, u, k1v, k1u);
        for (int j = 0; j < n; ++j) tv[j] = v[j] + 0.5 * dt * k1v[j], tu[j] = u[j] + 0.5 * dt * k1u[j];
        rhs(t + 0.5 * dt, tv, tu, k2v, k2u);
        for (int j = 0; j < n; ++j) tv[j] = v[j] + 0.5 * dt * k2v[j], tu[j] = u[j] + 0.5 * dt * k2u[j];
        rhs(t + 0.5 * dt, tv, tu, k3v, k3u);
        for (int j = 0; j < n; ++j) tv[j] = v[j] + dt * k3v[j], tu[j] = u[j] + dt * k3u[j];
        rhs(t + dt, tv, tu, k4v, k4u);
        for (int j = 0; j < n; ++j) {
            v[j] += dt / 6 * (k1v[j] + 2 * k2v[j] + 2 * k3v[j] + k4v[j]);
            u[j] += dt / 6 * (k1u[j] + 2 * k2u[j] + 2 * k3u[j] + k4u[j]);
        }
    }
    double err = 0;
    for (int j = 0; j < n; ++j)
        err = std::max({err, std::abs(v[j] - exact_v(T, g.x(j))), std::abs(u[j] - exact_u(T, g.x(j)))});
    return err;
}

namespace {

// Dirichlet data from a single traveling profile.
class SingleShock : public Coupling {
public:
    SingleShock(const ShockProfile& p, const Grid& g) : p_(p), g_(g) {}
    Ghosts ghosts(double t, const ShiftVec&) const override {
        double a = g_.x(-1) - p_.sigma() * t, b = g_.x(g_.n) - p_.sigma() * t;
        return {p_.v(a), p_.u(a), p_.v(b), p_.u(b)};
    }
    ShiftVec shift_rates(double, std::span<const double>, std::span<const double>,
                         const ShiftVec&) const override {
        return {0.0, 0.0};
    }

private:
    const ShockProfile& p_;
    Grid g_;
};

}  // namespace

double traveling_wave_error(double dx, double delta, double T, int family) {
    GasLaw law(5.0 / 3.0);
    TwoShockConfig cfg = construct_states(law, 1.0, 0.0, delta, delta);
    ProfileOptions po;
    po.rtol = 1e-12;
    ShockProfile p = solve_profile(cfg, family, po);
    double half = std::abs(p.sigma()) * T + 30.0 / delta;
    Grid g = make_grid(-half, half, dx);
    FieldState s;
    for (int j = 0; j < g.n; ++j) {
        s.v.push_back(p.v(g.x(j)));
        s.u.push_back(p.u(g.x(j)));
    }
    SingleShock bc(p, g);
    Integrator integ(law, g, bc);
    double dt = 0.4 * stability_scale(law.gamma, g, s.v);
    long steps = static_cast<long>(std::ceil(T / dt));
    dt = T / steps;
    ShiftVec X{0.0, 0.0};
    for (long k = 0; k < steps; ++k) integ.step(s, X, dt, (k + 1) * dt);
    double err = 0;
    for (int j = 0; j < g.n; ++j) err = std::max(err, std::abs(s.v[j] - p.v(g.x(j) - p.sigma() * T)));
    return err;
}

}  // namespace twoshock::refsol
