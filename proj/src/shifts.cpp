#include "twoshock/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "twoshock/numerics.hpp"

namespace twoshock {

ShiftConstants shift_constants(const TwoShockConfig& cfg) {
    const GasLaw& L = cfg.law;
    double g = L.gamma;
    double pm = pressure(L, cfg.v_m);
    double dpm = -dpressure(L, cfg.v_m);
    ShiftConstants k;
    k.M = 5.0 * (g + 1.0) / (8.0 * g * pm) * std::pow(dpm, 1.5);
    k.sigma_m = std::sqrt(dpm);
    k.alpha_m = (g + 1.0) / (2.0 * g * k.sigma_m * pm);
    return k;
}

std::array<int, 2> support_nodes(const Composite& c, const Grid& grid, int i, double t,
                                 const ShiftPair& s) {
    auto [xa, xb] = c.support(i, t, s);
    int first = static_cast<int>(std::floor((xa - grid.x_left) / grid.dx)) - 1;
    int last = static_cast<int>(std::ceil((xb - grid.x_left) / grid.dx)) + 1;
    first = std::max(first, 0);
    last = std::min(last, grid.n - 1);
    return {first, last};
}

ShiftVec shift_rhs(const Composite& c, const WeightSpec& w, const Grid& grid, double t,
                   std::span<const double> v, const ShiftPair& s, ShiftIntegrals* parts) {
    const TwoShockConfig& cfg = c.config();
    const double g = cfg.law.gamma;
    const double pm = pressure_fast(g, cfg.v_m);
    const ShockProfile& P1 = c.profile(1);
    const ShockProfile& P2 = c.profile(2);
    ShiftConstants K = shift_constants(cfg);
    ShiftVec rate{0.0, 0.0};
    std::vector<double> f1, f2;
    for (int i = 1; i <= 2; ++i) {
        auto [first, last] = support_nodes(c, grid, i, t, s);
        double sigma = i == 1 ? cfg.sigma1 : cfg.sigma2;
        double delta = i == 1 ? cfg.delta1 : cfg.delta2;
        double Y1 = 0.0, Y2 = 0.0;
        if (first <= last) {
            f1.assign(last - first + 1, 0.0);
            f2.assign(last - first + 1, 0.0);
            for (int j = first; j <= last; ++j) {
                double x = grid.x(j);
                double v1, dv1, p1, v2, dv2, p2;
                P1.value_slope(c.xi(1, t, x, s), v1, dv1, p1);
                P2.value_slope(c.xi(2, t, x, s), v2, dv2, p2);
                double vt = v1 + v2 - cfg.v_m;
                double a = 1.0 + w.lambda * ((pm - p1) / cfg.delta1 + (pm - p2) / cfg.delta2);
                // (p(v_i))_x = p'(v_i) v_i'
                double pix = i == 1 ? -g * p1 / v1 * dv1 : -g * p2 / v2 * dv2;
                double dp = pressure_fast(g, v[j]) - pressure_fast(g, vt);
                double wt = (j == 0 || j == grid.n - 1) ? 0.5 * grid.dx : grid.dx;
                f1[j - first] = wt * a * pix * dp / (sigma * sigma);
                f2[j - first] = -wt * a * pix * (v[j] - vt);
            }
            Y1 = pairwise_sum(f1);
            Y2 = pairwise_sum(f2);
        }
        if (parts) {
            parts->Y1[i - 1] = Y1;
            parts->Y2[i - 1] = Y2;
        }
        rate[i - 1] = -(K.M / delta) * (Y1 + Y2);
    }
    return rate;
}

ShiftVec advance_shifts(const ShiftVec& X, const ShiftVec k[4], double dt) {
    ShiftVec out;
    for (int i = 0; i < 2; ++i)
        out[i] = X[i] + dt / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
    return out;
}

SeparationStatus separation_monitor(const ShiftPair& s, double t, const TwoShockConfig& cfg) {
    SeparationStatus st;
    st.margin1 = 0.5 * cfg.sigma1 * t - (s.X1 + cfg.sigma1 * t);
    st.margin2 = (s.X2 + cfg.sigma2 * t) - 0.5 * cfg.sigma2 * t;
    st.separated = st.margin1 >= 0.0 && st.margin2 >= 0.0;
    return st;
}

Ghosts ShiftDriver::ghosts(double t, const ShiftVec& X) const {
    return CompositeBoundary(c_, grid_).ghosts(t, X);
}

ShiftVec ShiftDriver::shift_rates(double t, std::span<const double> v, std::span<const double>,
                                  const ShiftVec& X) const {
    if (frozen_) return {0.0, 0.0};
    ShiftPair s;
    s.X1 = X[0];
    s.X2 = X[1];
    return shift_rhs(c_, w_, grid_, t, v, s);
}

}  // namespace twoshock
