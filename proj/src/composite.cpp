#include "twoshock/composite.hpp"

#include <algorithm>
#include <cmath>

namespace twoshock {

double default_lambda(const TwoShockConfig& cfg) {
    return 0.5 * std::min(std::sqrt(cfg.delta1), std::sqrt(cfg.delta2));
}

WeightBounds check_weight(const TwoShockConfig& cfg, const WeightSpec& w, double K, double C) {
    WeightBounds b;
    b.above_strengths = w.lambda >= K * std::max(cfg.delta1, cfg.delta2);
    b.below_root = w.lambda <= C * std::min(std::sqrt(cfg.delta1), std::sqrt(cfg.delta2));
    b.below_quarter = w.lambda < 0.25;
    return b;
}

Composite::Composite(const TwoShockConfig& cfg, const ProfileOptions& opt)
    : cfg_(cfg), p1_(solve_profile(cfg, 1, opt)), p2_(solve_profile(cfg, 2, opt)) {}

Composite::Composite(const TwoShockConfig& cfg, ShockProfile p1, ShockProfile p2)
    : cfg_(cfg), p1_(std::move(p1)), p2_(std::move(p2)) {}

double Composite::xi(int i, double t, double x, const ShiftPair& s) const {
    return i == 1 ? x - cfg_.sigma1 * t - s.X1 : x - cfg_.sigma2 * t - s.X2;
}

CompositePoint Composite::eval(double t, double x, const ShiftPair& s) const {
    CompositePoint q;
    for (int i = 1; i <= 2; ++i) {
        ProfilePoint p = profile(i).eval(xi(i, t, x, s));
        q.wave[i - 1] = {p.v, p.dv, p.d2v, p.dL, p.dR};
    }
    const WaveSample& a = q.wave[0];
    const WaveSample& b = q.wave[1];
    const ShockFamily& f1 = p1_.shock();
    const ShockFamily& f2 = p2_.shock();
    double u1 = f1.uL - f1.sigma * a.dL;
    double u2 = f2.uL - f2.sigma * b.dL;
    q.v = a.v + b.v - cfg_.v_m;
    q.u = u1 + u2 - cfg_.u_m;
    q.h = (u1 - a.dv / a.v) + (u2 - b.dv / b.v) - cfg_.u_m;
    q.vx = a.dv + b.dv;
    q.vxx = a.d2v + b.d2v;
    q.ux = -f1.sigma * a.dv - f2.sigma * b.dv;
    q.uxx = -f1.sigma * a.d2v - f2.sigma * b.d2v;
    return q;
}

StatePoint Composite::state(double t, double x, const ShiftPair& s) const {
    CompositePoint q = eval(t, x, s);
    return {q.v, q.u};
}

StatePoint Composite::state_vh(double t, double x, const ShiftPair& s) const {
    CompositePoint q = eval(t, x, s);
    return {q.v, q.h};
}

double Composite::weight_i(int i, const WaveSample& w, const WeightSpec& spec) const {
    double d = i == 1 ? cfg_.delta1 : cfg_.delta2;
    double g = cfg_.law.gamma;
    return 1.0 + spec.lambda * (pressure_fast(g, cfg_.v_m) - pressure_fast(g, w.v)) / d;
}

double Composite::weight_i_x(int i, const WaveSample& w, const WeightSpec& spec) const {
    double d = i == 1 ? cfg_.delta1 : cfg_.delta2;
    double g = cfg_.law.gamma;
    // -(lambda/delta_i) p(v_i)_x
    return spec.lambda / d * g * pressure_fast(g, w.v) / w.v * w.dv;
}

double Composite::weight_a(double t, double x, const ShiftPair& s, const WeightSpec& spec) const {
    CompositePoint q = eval(t, x, s);
    return weight_i(1, q.wave[0], spec) + weight_i(2, q.wave[1], spec) - 1.0;
}

std::array<double, 2> Composite::support(int i, double t, const ShiftPair& s) const {
    const ShockProfile& p = profile(i);
    double shift = (i == 1 ? cfg_.sigma1 : cfg_.sigma2) * t + s.X(i);
    return {p.xi_min() + shift, p.xi_max() + shift};
}

std::array<double, 2> cutoff_knots(const TwoShockConfig& cfg, const ShiftPair& s, double t) {
    return {0.5 * (s.X1 + cfg.sigma1 * t), 0.5 * (s.X2 + cfg.sigma2 * t)};
}

std::array<double, 2> cutoffs(const TwoShockConfig& cfg, const ShiftPair& s, double t, double x) {
    auto [l, r] = cutoff_knots(cfg, s, t);
    double phi1;
    if (!(l < r)) {
        double m = 0.5 * (l + r);
        phi1 = x < m ? 1.0 : 0.0;
    } else if (x < l) {
        phi1 = 1.0;
    } else if (x > r) {
        phi1 = 0.0;
    } else {
        phi1 = (r - x) / (r - l);
    }
    return {phi1, 1.0 - phi1};
}

namespace {

double log_xx(double v, double vx, double vxx) {
    double r = vx / v;
    return vxx / v - r * r;
}

}  // namespace

double interaction_E1(const Composite&, const CompositePoint& q) {
    double e = -log_xx(q.v, q.vx, q.vxx);
    for (const WaveSample& w : q.wave) e += log_xx(w.v, w.dv, w.d2v);
    return e;
}

double interaction_E2(const Composite& c, const CompositePoint& q) {
    double g = c.law().gamma;
    auto dp = [g](double v) { return -g * pressure_fast(g, v) / v; };
    double e = dp(q.v) * q.vx;
    for (const WaveSample& w : q.wave) e -= dp(w.v) * w.dv;
    return e;
}

double interaction_E3(const Composite& c, const CompositePoint& q) {
    // (u_x / v)_x = u_xx / v - u_x v_x / v^2
    auto flux_x = [](double v, double vx, double ux, double uxx) {
        return uxx / v - ux * vx / (v * v);
    };
    double e = -flux_x(q.v, q.vx, q.ux, q.uxx);
    for (int i = 1; i <= 2; ++i) {
        const WaveSample& w = q.wave[i - 1];
        double s = c.profile(i).sigma();
        e += flux_x(w.v, w.dv, -s * w.dv, -s * w.d2v);
    }
    return e;
}

InteractionFields interaction_errors(const Composite& c, const ShiftPair& s, double t,
                                     const std::vector<double>& x) {
    InteractionFields f;
    f.E1.resize(x.size());
    f.E2.resize(x.size());
    f.E3.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        CompositePoint q = c.eval(t, x[j], s);
        f.E1[j] = interaction_E1(c, q);
        f.E2[j] = interaction_E2(c, q);
        f.E3[j] = interaction_E3(c, q);
    }
    return f;
}

}  // namespace twoshock
