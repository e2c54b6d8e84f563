#include "twoshock/waves.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace twoshock {

double shock_speed(const GasLaw& law, double vL, double vR, int family) {
    if (vL == vR) throw DomainError("shock_speed: coincident volumes");
    double s2 = -(pressure(law, vR) - pressure(law, vL)) / (vR - vL);
    if (!(s2 > 0.0)) throw DomainError("shock_speed: -dp/dv must be positive");
    double s = std::sqrt(s2);
    if (family == 1) return -s;
    if (family == 2) return s;
    throw DomainError("shock_speed: family must be 1 or 2");
}

TwoShockConfig construct_states(const GasLaw& law, double v_plus, double u_plus,
                                double delta1, double delta2) {
    if (!(delta1 > 0.0) || !(delta2 > 0.0))
        throw DomainError("construct_states: shock strengths must be positive");
    TwoShockConfig c{law};
    c.v_plus = v_plus;
    c.u_plus = u_plus;
    c.delta1 = delta1;
    c.delta2 = delta2;
    double p_plus = pressure(law, v_plus);
    c.v_m = volume_from_pressure(law, p_plus + delta2);
    // v_- > v_m, so p(v_-) lies delta1 below p(v_m)
    double p_minus = p_plus + delta2 - delta1;
    if (!(p_minus > 0.0)) throw DomainError("construct_states: delta1 drives p(v_-) nonpositive");
    c.v_minus = volume_from_pressure(law, p_minus);
    c.sigma2 = shock_speed(law, c.v_m, c.v_plus, 2);
    c.u_m = u_plus + c.sigma2 * (c.v_plus - c.v_m);
    c.sigma1 = shock_speed(law, c.v_minus, c.v_m, 1);
    c.u_minus = c.u_m + c.sigma1 * (c.v_m - c.v_minus);
    return c;
}

IntermediateState intermediate_state(const GasLaw& law, const StatePoint& Um, const StatePoint& Up) {
    double p_minus = pressure(law, Um.v), p_plus = pressure(law, Up.v);
    double vtop = std::min(Um.v, Up.v);
    // F(v) = u_- - S1(v) - u_+ - S2(v) on (0, min(v_-, v_+)], strictly decreasing in S terms
    auto F = [&](double v) {
        double s1 = std::sqrt(std::max(0.0, (pressure(law, v) - p_minus) * (Um.v - v)));
        double s2 = std::sqrt(std::max(0.0, (pressure(law, v) - p_plus) * (Up.v - v)));
        return Um.u - s1 - Up.u - s2;
    };
    double hi = vtop;
    double fhi = F(hi);
    if (!(fhi > 0.0))
        throw NoTwoShockSolution("intermediate_state: shock curves do not meet with Lax ordering");
    double lo = 0.5 * vtop;
    double flo = F(lo);
    while (flo > 0.0) {
        lo *= 0.5;
        if (lo < 1e-12 * vtop) throw NoTwoShockSolution("intermediate_state: no bracket found");
        flo = F(lo);
    }
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
    auto r = boost::math::tools::toms748_solve(F, lo, hi, flo, fhi, tol, iters);
    IntermediateState s;
    s.v_m = 0.5 * (r.first + r.second);
    s.u_m = Up.u + std::sqrt(std::max(0.0, (pressure(law, s.v_m) - p_plus) * (Up.v - s.v_m)));
    s.residual = std::abs(F(s.v_m));
    if (!(s.v_m < Um.v && s.v_m < Up.v))
        throw NoTwoShockSolution("intermediate_state: root violates Lax ordering");
    return s;
}

double rh_residual(const TwoShockConfig& c) {
    const GasLaw& L = c.law;
    auto res = [&](double s, double vl, double ul, double vr, double ur) {
        double dv = vr - vl, du = ur - ul, dp = pressure(L, vr) - pressure(L, vl);
        return std::max(std::abs(-s * dv - du), std::abs(-s * du + dp));
    };
    return std::max(res(c.sigma1, c.v_minus, c.u_minus, c.v_m, c.u_m),
                    res(c.sigma2, c.v_m, c.u_m, c.v_plus, c.u_plus));
}

ShockFamily shock_family(const TwoShockConfig& c, int family) {
    ShockFamily f;
    f.family = family;
    if (family == 1) {
        f.sigma = c.sigma1;
        f.vL = c.v_minus; f.uL = c.u_minus;
        f.vR = c.v_m; f.uR = c.u_m;
        f.delta = c.delta1;
    } else if (family == 2) {
        f.sigma = c.sigma2;
        f.vL = c.v_m; f.uL = c.u_m;
        f.vR = c.v_plus; f.uR = c.u_plus;
        f.delta = c.delta2;
    } else {
        throw DomainError("shock family must be 1 or 2");
    }
    return f;
}

double profile_rhs(const GasLaw& law, double v, const ShockFamily& f) {
    double s = f.sigma;
    return -(v / s) * (s * s * (v - f.vL) + pressure(law, v) - pressure(law, f.vL));
}

double profile_rhs_dv(const GasLaw& law, double v, const ShockFamily& f) {
    double s = f.sigma;
    double g = s * s * (v - f.vL) + pressure(law, v) - pressure(law, f.vL);
    return -g / s - (v / s) * (s * s + dpressure(law, v));
}

ShockProfile::ShockProfile(const GasLaw& law, const ShockFamily& fam, std::vector<double> xi,
                           std::vector<double> v, bool truncated, double achieved_tol)
    : law_(law), fam_(fam), xi_(std::move(xi)), v_(std::move(v)), truncated_(truncated),
      achieved_tol_(achieved_tol) {
    kL_ = profile_rhs_dv(law_, fam_.vL, fam_);
    kR_ = profile_rhs_dv(law_, fam_.vR, fam_);
    pL_ = pressure(law_, fam_.vL);
    std::size_t n = xi_.size();
    std::vector<double> slope(n);
    for (std::size_t k = 0; k < n; ++k) slope[k] = profile_rhs(law_, v_[k], fam_);
    // Fritsch-Carlson limiter on the exact slopes keeps the interpolant monotone
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double secant = (v_[k + 1] - v_[k]) / (xi_[k + 1] - xi_[k]);
        if (secant == 0.0) {
            slope[k] = slope[k + 1] = 0.0;
            continue;
        }
        double a = slope[k] / secant, b = slope[k + 1] / secant;
        if (a < 0) slope[k] = 0, a = 0;
        if (b < 0) slope[k + 1] = 0, b = 0;
        double r = a * a + b * b;
        if (r > 9.0) {
            double t = 3.0 / std::sqrt(r);
            slope[k] = t * a * secant;
            slope[k + 1] = t * b * secant;
        }
    }
    slope_ = std::move(slope);
}

double ShockProfile::interpolate(double xi) const {
    std::size_t k = std::upper_bound(xi_.begin(), xi_.end(), xi) - xi_.begin();
    k = std::clamp<std::size_t>(k, 1, xi_.size() - 1) - 1;
    double h = xi_[k + 1] - xi_[k];
    double s = (xi - xi_[k]) / h;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v_[k] + (s3 - 2 * s2 + s) * h * slope_[k] +
           (-2 * s3 + 3 * s2) * v_[k + 1] + (s3 - s2) * h * slope_[k + 1];
}

ProfilePoint ShockProfile::eval(double xi) const {
    ProfilePoint p;
    double gap = fam_.vL - fam_.vR;
    if (xi <= xi_.front()) {
        p.dL = (v_.front() - fam_.vL) * std::exp(kL_ * (xi - xi_.front()));
        p.v = fam_.vL + p.dL;
        p.dR = gap + p.dL;
        p.dv = kL_ * p.dL;
        p.d2v = kL_ * p.dv;
        return p;
    }
    if (xi >= xi_.back()) {
        p.dR = (v_.back() - fam_.vR) * std::exp(kR_ * (xi - xi_.back()));
        p.v = fam_.vR + p.dR;
        p.dL = p.dR - gap;
        p.dv = kR_ * p.dR;
        p.d2v = kR_ * p.dv;
        return p;
    }
    p.v = interpolate(xi);
    p.dL = p.v - fam_.vL;
    p.dR = p.v - fam_.vR;
    p.dv = profile_rhs(law_, p.v, fam_);
    p.d2v = profile_rhs_dv(law_, p.v, fam_) * p.dv;
    return p;
}

LogMagnitudes ShockProfile::log_magnitudes(double xi) const {
    LogMagnitudes m;
    double gap = fam_.vL - fam_.vR;
    if (xi <= xi_.front()) {
        m.dL = std::log(std::abs(v_.front() - fam_.vL)) + kL_ * (xi - xi_.front());
        m.dv = std::log(std::abs(kL_)) + m.dL;
        m.dR = std::log(std::abs(gap + std::exp(m.dL) * (v_.front() > fam_.vL ? 1 : -1)));
        return m;
    }
    if (xi >= xi_.back()) {
        m.dR = std::log(std::abs(v_.back() - fam_.vR)) + kR_ * (xi - xi_.back());
        m.dv = std::log(std::abs(kR_)) + m.dR;
        m.dL = std::log(std::abs(std::exp(m.dR) * (v_.back() > fam_.vR ? 1 : -1) - gap));
        return m;
    }
    ProfilePoint p = eval(xi);
    m.dv = std::log(std::abs(p.dv));
    m.dL = std::log(std::abs(p.dL));
    m.dR = std::log(std::abs(p.dR));
    return m;
}

void ShockProfile::value_slope(double xi, double& v, double& dv, double& p) const {
    if (xi <= xi_.front()) {
        double d = (v_.front() - fam_.vL) * std::exp(kL_ * (xi - xi_.front()));
        v = fam_.vL + d;
        dv = kL_ * d;
        p = pressure_fast(law_.gamma, v);
        return;
    }
    if (xi >= xi_.back()) {
        double d = (v_.back() - fam_.vR) * std::exp(kR_ * (xi - xi_.back()));
        v = fam_.vR + d;
        dv = kR_ * d;
        p = pressure_fast(law_.gamma, v);
        return;
    }
    v = interpolate(xi);
    p = pressure_fast(law_.gamma, v);
    double s = fam_.sigma;
    dv = -(v / s) * (s * s * (v - fam_.vL) + p - pL_);
}

double ShockProfile::u(double xi) const {
    return fam_.uL - fam_.sigma * (v(xi) - fam_.vL);
}

double ShockProfile::h(double xi) const {
    ProfilePoint p = eval(xi);
    return fam_.uL - fam_.sigma * (p.v - fam_.vL) - p.dv / p.v;
}

double ShockProfile::dh(double xi) const {
    ProfilePoint p = eval(xi);
    return dpressure(law_, p.v) * p.dv / fam_.sigma;
}

double ShockProfile::second_derivative(double xi) const {
    if (xi < xi_.front() || xi > xi_.back())
        throw std::out_of_range("profile_second_derivative: xi outside table");
    double v = interpolate(xi);
    return profile_rhs_dv(law_, v, fam_) * profile_rhs(law_, v, fam_);
}

double profile_second_derivative(const ShockProfile& profile, double xi) {
    return profile.second_derivative(xi);
}

namespace {

using OdeState = std::array<double, 1>;

struct HalfProfile {
    std::vector<double> xi, v;
    bool reached = false;
    double gap = 0;
};

HalfProfile integrate_half(const GasLaw& law, const ShockFamily& f, double v0, double xi0,
                           double direction, double target, double xi_limit, double tol_abs,
                           double rtol, double max_step) {
    namespace ode = boost::numeric::odeint;
    auto sys = [&](const OdeState& x, OdeState& dxdt, double) {
        dxdt[0] = profile_rhs(law, x[0], f);
    };
    // the step cap carries the integration direction
    auto stepper = ode::make_controlled(1e-14, rtol, direction * max_step, ode::runge_kutta_dopri5<OdeState>());
    HalfProfile out;
    OdeState x{v0};
    double t = xi0;
    double dt = direction * 0.01 * max_step;
    out.xi.push_back(t);
    out.v.push_back(v0);
    for (;;) {
        double gap = std::abs(x[0] - target);
        if (gap <= tol_abs) {
            out.reached = true;
            out.gap = gap;
            break;
        }
        if (std::abs(t - xi0) >= xi_limit) {
            out.gap = gap;
            break;
        }
        int fails = 0;
        while (stepper.try_step(sys, x, t, dt) == ode::fail) {
            if (++fails > 500 || std::abs(dt) < 1e-14) {
                out.gap = gap;
                return out;
            }
        }
        out.xi.push_back(t);
        out.v.push_back(x[0]);
    }
    return out;
}

}  // namespace

ShockProfile solve_profile(const TwoShockConfig& cfg, int family, const ProfileOptions& opt) {
    ShockFamily f = shock_family(cfg, family);
    const GasLaw& law = cfg.law;
    double xi_limit = opt.xi_max > 0 ? opt.xi_max : 400.0 / f.delta;
    double tol_abs = opt.tol * f.delta;
    double kappa = std::max(std::abs(profile_rhs_dv(law, f.vL, f)), std::abs(profile_rhs_dv(law, f.vR, f)));
    double max_step = 0.02 / kappa;
    double v0 = 0.5 * (f.vL + f.vR);

    HalfProfile fwd = integrate_half(law, f, v0, opt.anchor_xi, +1.0, f.vR, xi_limit, tol_abs,
                                     opt.rtol, max_step);
    HalfProfile bwd = integrate_half(law, f, v0, opt.anchor_xi, -1.0, f.vL, xi_limit, tol_abs,
                                     opt.rtol, max_step);
    std::vector<double> xi, v;
    xi.reserve(fwd.xi.size() + bwd.xi.size());
    v.reserve(xi.capacity());
    for (std::size_t k = bwd.xi.size(); k-- > 1;) {
        xi.push_back(bwd.xi[k]);
        v.push_back(bwd.v[k]);
    }
    xi.insert(xi.end(), fwd.xi.begin(), fwd.xi.end());
    v.insert(v.end(), fwd.v.begin(), fwd.v.end());
    bool truncated = !(fwd.reached && bwd.reached);
    double achieved = std::max(fwd.gap, bwd.gap) / f.delta;
    return ShockProfile(law, f, std::move(xi), std::move(v), truncated, achieved);
}

}  // namespace twoshock
