#include "twoshock/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twoshock/numerics.hpp"

namespace twoshock {

double Decomposition::B_total() const {
    return B[0] + B[1] + B[2] + B[3] + B[4] + S1 + S2;
}

double Decomposition::G_total() const { return G1 + G2 + Dcal; }

std::array<double, 7> InteractionQuantities::as_array() const {
    return {sup_wave_overlap, int_wave_overlap, int_slope_product, sup_phi2_v1x,
            sup_phi1_v2x,     int_phi2_v1x,     int_phi1_v2x};
}

std::array<std::string, 7> InteractionQuantities::names() {
    return {"log_sup_wave_overlap", "log_int_wave_overlap", "log_int_slope_product",
            "log_sup_phi2_v1x",     "log_sup_phi1_v2x",     "log_int_phi2_v1x",
            "log_int_phi1_v2x"};
}

namespace {

// Accumulates node integrands and integrates them with the trapezoid rule.
struct Integrand {
    std::vector<double> f;
    explicit Integrand(int n) : f(n, 0.0) {}
    double& operator[](int j) { return f[j]; }
    double integrate(double dx) const { return trapezoid(f, dx); }
};

NormTriple norms_of(const std::vector<double>& d, double dx) {
    return {norm_l2(d, dx), norm_h1(d, dx), norm_linf(d)};
}

}  // namespace

ShiftVec FrameEvaluator::rates(const FieldState& s, const ShiftPair& X) const {
    return shift_rhs(c_, w_, grid_, s.t, s.v, X);
}

DiagnosticsFrame FrameEvaluator::evaluate(const FieldState& s, const ShiftPair& Xin) const {
    const TwoShockConfig& cfg = c_.config();
    const double g = cfg.law.gamma;
    const int n = grid_.n;
    const double dx = grid_.dx;
    const double t = s.t;
    const std::array<double, 2> sig{cfg.sigma1, cfg.sigma2};

    DiagnosticsFrame fr;
    fr.t = t;
    ShiftPair X = Xin;
    ShiftIntegrals parts;
    ShiftVec xd = shift_rhs(c_, w_, grid_, t, s.v, X, &parts);
    X.Xdot1 = xd[0];
    X.Xdot2 = xd[1];
    fr.shifts = X;
    fr.dec.Y1_shift = parts.Y1;
    fr.dec.Y2_shift = parts.Y2;

    auto dp_of = [g](double v) { return -g * pressure_fast(g, v) / v; };

    // Reference data at nodes and ghosts; ghost perturbations vanish by construction
    std::vector<CompositePoint> q(n + 2);
    for (int j = -1; j <= n; ++j) q[j + 1] = c_.eval(t, grid_.x(j), X);
    std::vector<double> dVp(n + 2, 0.0), dUp(n + 2, 0.0), dPp(n + 2, 0.0), dLp(n + 2, 0.0);
    for (int j = 0; j < n; ++j) {
        double vt = q[j + 1].v;
        dVp[j + 1] = s.v[j] - vt;
        dUp[j + 1] = s.u[j] - q[j + 1].u;
        dPp[j + 1] = pressure_fast(g, s.v[j]) - pressure_fast(g, vt);
        dLp[j + 1] = std::log(s.v[j] / vt);
    }
    std::array<std::array<int, 2>, 2> supp{support_nodes(c_, grid_, 1, t, X),
                                           support_nodes(c_, grid_, 2, t, X)};

    std::vector<double> dv(n), du(n), dh(n);
    Integrand weighted(n), plain(n);
    std::array<Integrand, 2> Yt{Integrand(n), Integrand(n)};
    std::array<std::array<Integrand, 6>, 2> Yij{
        std::array<Integrand, 6>{Integrand(n), Integrand(n), Integrand(n), Integrand(n), Integrand(n), Integrand(n)},
        std::array<Integrand, 6>{Integrand(n), Integrand(n), Integrand(n), Integrand(n), Integrand(n), Integrand(n)}};
    std::array<Integrand, 5> Bk{Integrand(n), Integrand(n), Integrand(n), Integrand(n), Integrand(n)};
    Integrand S1(n), S2(n), G1s(n), G2(n), Dcal(n), Jb(n), Jg(n);
    Integrand G1l(n), GSv(n), GSp(n), Dp(n), D1(n), D2(n);
    std::array<std::array<Integrand, 2>, 2> Z{std::array<Integrand, 2>{Integrand(n), Integrand(n)},
                                              std::array<Integrand, 2>{Integrand(n), Integrand(n)}};
    Integrand e1(n), e2(n), e3(n);
    const double ninf = -std::numeric_limits<double>::infinity();
    double l_sup_ovl = ninf, l_sup21 = ninf, l_sup12 = ninf;
    LogSum l_ovl, l_prod, l_i21, l_i12;

    const double inv2dx = 0.5 / dx;
    const double invdx2 = 1.0 / (dx * dx);
    fr.v_min = s.v[0];
    fr.v_max = s.v[0];
    for (int j = 0; j < n; ++j) {
        const CompositePoint& r = q[j + 1];
        double v = s.v[j];
        fr.v_min = std::min(fr.v_min, v);
        fr.v_max = std::max(fr.v_max, v);
        double pt = pressure_fast(g, r.v);
        double p = pt + dPp[j + 1];
        double dpt = dp_of(r.v);
        double ptx = dpt * r.vx;
        double dP = dPp[j + 1];
        double dPx = (dPp[j + 2] - dPp[j]) * inv2dx;
        dv[j] = dVp[j + 1];
        du[j] = dUp[j + 1];
        // h - ht = du - (ln v - ln vt)_x + sum (ln v_i)_x - (ln vt)_x
        double lnx_i = r.wave[0].dv / r.wave[0].v + r.wave[1].dv / r.wave[1].v;
        dh[j] = du[j] - (dLp[j + 2] - dLp[j]) * inv2dx + lnx_i - r.vx / r.v;
        double Qrel = rel_internal_fast(g, v, r.v);
        double prel = rel_pressure_fast(g, v, r.v);
        double eta = 0.5 * dh[j] * dh[j] + Qrel;

        std::array<double, 2> ai, aix, vix, pix;
        for (int i = 0; i < 2; ++i) {
            ai[i] = c_.weight_i(i + 1, r.wave[i], w_);
            aix[i] = c_.weight_i_x(i + 1, r.wave[i], w_);
            vix[i] = r.wave[i].dv;
            pix[i] = dp_of(r.wave[i].v) * vix[i];
        }
        double a = ai[0] + ai[1] - 1.0;
        auto phi = cutoffs(cfg, X, t, grid_.x(j));

        weighted[j] = a * eta;
        plain[j] = eta;

        double gp = g * p;
        for (int i = 0; i < 2; ++i) {
            double si = sig[i];
            double hix = pix[i] / si;
            // Y integrals of wave i share the support quadrature of the shift integrals
            double in_supp = (j >= supp[i][0] && j <= supp[i][1]) ? 1.0 : 0.0;
            double mns = dh[j] - dP / si, pls = dh[j] + dP / si;
            Yt[i][j] = in_supp * (-aix[i] * eta + a * hix * dh[j] - a * dpt * vix[i] * dv[j]);
            Yij[i][0][j] = in_supp * a * hix * dP / si;
            Yij[i][1][j] = in_supp * -a * pix[i] * dv[j];
            Yij[i][2][j] = in_supp * a * hix * mns;
            Yij[i][3][j] = in_supp * -a * (dpt - dp_of(r.wave[i].v)) * vix[i] * dv[j];
            Yij[i][4][j] = in_supp * -0.5 * aix[i] * mns * pls;
            Yij[i][5][j] = in_supp * (-aix[i] * Qrel - aix[i] / (2.0 * si * si) * dP * dP);

            Bk[0][j] += aix[i] * dP * dP / (2.0 * si);
            Bk[1][j] += si * a * vix[i] * prel;
            Bk[2][j] += -aix[i] * dP / gp * dPx;
            Bk[3][j] += aix[i] * dP * dP * ptx / (gp * pt);
            G1s[j] += 0.5 * si * aix[i] * mns * mns;
            G2[j] += si * aix[i] * Qrel;
            Jb[j] += aix[i] * dP * dh[j] + si * a * vix[i] * prel - aix[i] * dP / gp * dPx +
                     aix[i] * dP * dP * ptx / (gp * pt);
            Jg[j] += 0.5 * si * aix[i] * dh[j] * dh[j] + si * aix[i] * Qrel;

            G1l[j] += std::abs(aix[i]) * mns * mns;
            GSv[j] += std::abs(vix[i]) * phi[i] * phi[i] * dv[j] * dv[j];
            GSp[j] += std::abs(vix[i]) * phi[i] * phi[i] * dP * dP;
            Z[i][0][j] = -dpt * vix[i] * dv[j];
            Z[i][1][j] = -si * vix[i] * du[j];
        }
        double E1 = interaction_E1(c_, r), E2 = interaction_E2(c_, r), E3 = interaction_E3(c_, r);
        Bk[4][j] = a * dPx * dP / (gp * pt) * ptx;
        S1[j] = a * dP * E1;
        S2[j] = -a * dh[j] * E2;
        Dcal[j] = a / gp * dPx * dPx;
        Jb[j] += Bk[4][j] + S1[j] + S2[j];
        Jg[j] += Dcal[j];
        Dp[j] = dPx * dPx;
        double dux = (dUp[j + 2] - dUp[j]) * inv2dx;
        double duxx = (dUp[j + 2] - 2.0 * dUp[j + 1] + dUp[j]) * invdx2;
        D1[j] = dux * dux;
        D2[j] = duxx * duxx;
        e1[j] = E1 * E1;
        e2[j] = E2 * E2;
        e3[j] = E3 * E3;

        // separation diagnostics in log space: vt - v_1 = v_2 - v_m, vt - v_2 = v_1 - v_m
        LogMagnitudes m1 = c_.profile(1).log_magnitudes(c_.xi(1, t, grid_.x(j), X));
        LogMagnitudes m2 = c_.profile(2).log_magnitudes(c_.xi(2, t, grid_.x(j), X));
        double lw = std::log(j == 0 || j == n - 1 ? 0.5 * dx : dx);
        double a1 = m1.dv + m2.dL, a2 = m2.dv + m1.dR;
        double l21 = phi[1] > 0 ? std::log(phi[1]) + m1.dv : ninf;
        double l12 = phi[0] > 0 ? std::log(phi[0]) + m2.dv : ninf;
        l_sup_ovl = std::max({l_sup_ovl, a1, a2});
        l_sup21 = std::max(l_sup21, l21);
        l_sup12 = std::max(l_sup12, l12);
        l_ovl.add(lw + a1);
        l_ovl.add(lw + a2);
        l_prod.add(lw + m1.dv + m2.dv);
        l_i21.add(lw + l21);
        l_i12.add(lw + l12);
    }

    fr.pert_v = norms_of(dv, dx);
    fr.pert_u = norms_of(du, dx);
    fr.pert_h = norms_of(dh, dx);
    fr.weighted_entropy = weighted.integrate(dx);
    fr.entropy = plain.integrate(dx);

    Decomposition& d = fr.dec;
    for (int i = 0; i < 2; ++i) {
        d.Y_total[i] = Yt[i].integrate(dx);
        for (int k = 0; k < 6; ++k) d.Y[i][k] = Yij[i][k].integrate(dx);
    }
    for (int k = 0; k < 5; ++k) d.B[k] = Bk[k].integrate(dx);
    d.S1 = S1.integrate(dx);
    d.S2 = S2.integrate(dx);
    d.G1 = G1s.integrate(dx);
    d.G2 = G2.integrate(dx);
    d.Dcal = Dcal.integrate(dx);
    d.J_bad = Jb.integrate(dx);
    d.J_good = Jg.integrate(dx);

    GoodTerms& gt = fr.good;
    gt.G1 = G1l.integrate(dx);
    gt.GS_volume = GSv.integrate(dx);
    gt.GS_pressure = GSp.integrate(dx);
    gt.D = Dp.integrate(dx);
    gt.D1 = D1.integrate(dx);
    gt.D2 = D2.integrate(dx);
    gt.G2 = d.G2;
    gt.Dcal = d.Dcal;

    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) fr.zeroth[i][k] = Z[i][k].integrate(dx);

    double xy = xd[0] * d.Y_total[0] + xd[1] * d.Y_total[1];
    fr.identity_rhs = xy + d.B_total() - d.G_total();
    double scale = std::abs(xd[0] * d.Y_total[0]) + std::abs(xd[1] * d.Y_total[1]);
    for (double b : d.B) scale += std::abs(b);
    scale += std::abs(d.S1) + std::abs(d.S2) + std::abs(d.G1) + std::abs(d.G2) + std::abs(d.Dcal);
    fr.identity_scale = scale;

    fr.separation = separation_monitor(X, t, cfg);
    InteractionQuantities& iq = fr.interaction;
    iq.sup_wave_overlap = l_sup_ovl;
    iq.sup_phi2_v1x = l_sup21;
    iq.sup_phi1_v2x = l_sup12;
    iq.int_wave_overlap = l_ovl.value();
    iq.int_slope_product = l_prod.value();
    iq.int_phi2_v1x = l_i21.value();
    iq.int_phi1_v2x = l_i12.value();
    fr.E_l2 = {std::sqrt(e1.integrate(dx)), std::sqrt(e2.integrate(dx)), std::sqrt(e3.integrate(dx))};
    return fr;
}

double weighted_rel_entropy(const Composite& c, const WeightSpec& w, const Grid& grid,
                            const FieldState& s, const ShiftPair& X) {
    return FrameEvaluator(c, w, grid).evaluate(s, X).weighted_entropy;
}

IdentityResidual identity_audit(const std::vector<DiagnosticsFrame>& frames) {
    std::size_t K = frames.size();
    if (K < 3) throw std::invalid_argument("identity_audit needs at least 3 frames");
    double dt = frames[1].t - frames[0].t;
    for (std::size_t k = 1; k < K; ++k) {
        double d = frames[k].t - frames[k - 1].t;
        if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("identity_audit needs uniformly spaced frames");
    }
    IdentityResidual r;
    auto f = [&](std::size_t k) { return frames[k].weighted_entropy; };
    double num = 0, den = 0;
    for (std::size_t k = 1; k + 1 < K; ++k) {
        double lhs;
        if (k >= 2 && k + 2 < K)
            lhs = (-f(k + 2) + 8.0 * f(k + 1) - 8.0 * f(k - 1) + f(k - 2)) / (12.0 * dt);
        else if (K < 5)
            lhs = (f(k + 1) - f(k - 1)) / (2.0 * dt);
        else if (k == 1)  // fourth order, shifted stencil
            lhs = (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / (12.0 * dt);
        else
            lhs = (3.0 * f(k + 1) + 10.0 * f(k) - 18.0 * f(k - 1) + 6.0 * f(k - 2) - f(k - 3)) / (12.0 * dt);
        double rhs = frames[k].identity_rhs;
        r.t.push_back(frames[k].t);
        r.lhs.push_back(lhs);
        r.rhs.push_back(rhs);
        r.residual.push_back(lhs - rhs);
        r.scale.push_back(frames[k].identity_scale);
        num += std::abs(lhs - rhs) * dt;
        den += frames[k].identity_scale * dt;
    }
    r.aggregate_abs = num;
    r.aggregate_rel = den > 0 ? num / den : 0.0;
    return r;
}

LocalizedPerturbation localize(const Composite& c, const Grid& grid, const FieldState& s,
                               const ShiftPair& X, int family) {
    if (family != 1 && family != 2) throw std::invalid_argument("localize: family must be 1 or 2");
    const TwoShockConfig& cfg = c.config();
    const double g = cfg.law.gamma;
    const double pm = pressure_fast(g, cfg.v_m);
    const double delta = family == 1 ? cfg.delta1 : cfg.delta2;
    LocalizedPerturbation L;
    L.family = family;
    auto [first, last] = support_nodes(c, grid, family, s.t, X);
    std::vector<double> fx;
    for (int j = first; j <= last; ++j) {
        double x = grid.x(j);
        CompositePoint q = c.eval(s.t, x, X);
        const WaveSample& wi = q.wave[family - 1];
        double pi = pressure_fast(g, wi.v);
        double y = family == 1 ? 1.0 - (pm - pi) / delta : (pm - pi) / delta;
        double pix = -g * pi / wi.v * wi.dv;
        double jac = family == 1 ? pix / delta : -pix / delta;
        auto phi = cutoffs(cfg, X, s.t, x);
        double w = phi[family - 1] * (pressure_fast(g, s.v[j]) - pressure_fast(g, q.v));
        if (!(y > 0.0 && y < 1.0 && jac > 0.0)) continue;
        if (!L.y.empty() && !(y > L.y.back())) continue;
        L.x.push_back(x);
        L.y.push_back(y);
        L.w.push_back(w);
        L.jacobian.push_back(jac);
        fx.push_back(std::abs(pix) / delta * w);
    }
    std::vector<double> seg;
    for (std::size_t k = 0; k + 1 < L.y.size(); ++k) {
        seg.push_back(0.5 * (L.w[k] + L.w[k + 1]) * (L.y[k + 1] - L.y[k]));
    }
    L.integral_y = pairwise_sum(seg);
    // x samples are consecutive grid nodes unless a sample was dropped
    std::vector<double> segx;
    for (std::size_t k = 0; k + 1 < L.x.size(); ++k)
        segx.push_back(0.5 * (fx[k] + fx[k + 1]) * (L.x[k + 1] - L.x[k]));
    L.integral_x = pairwise_sum(segx);
    return L;
}

PoincareResult poincare_check(const std::vector<double>& y_in, const std::vector<double>& f_in) {
    if (y_in.size() != f_in.size() || y_in.size() < 3)
        throw std::invalid_argument("poincare_check needs at least 3 samples");
    std::vector<double> y, f;
    if (y_in.front() > 0.0) {
        y.push_back(0.0);
        f.push_back(f_in.front());
    }
    y.insert(y.end(), y_in.begin(), y_in.end());
    f.insert(f.end(), f_in.begin(), f_in.end());
    if (y_in.back() < 1.0) {
        y.push_back(1.0);
        f.push_back(f_in.back());
    }
    std::size_t m = y.size();
    std::vector<double> mean_seg(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) mean_seg[k] = 0.5 * (f[k] + f[k + 1]) * (y[k + 1] - y[k]);
    double mean = pairwise_sum(mean_seg);
    std::vector<double> var_seg(m - 1), grad_seg(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        double h = y[k + 1] - y[k];
        double a = f[k] - mean, b = f[k + 1] - mean;
        // exact integral of a linear function squared
        var_seg[k] = h * (a * a + a * b + b * b) / 3.0;
        double fp = (f[k + 1] - f[k]) / h;
        // exact integral of y(1-y) over [y_k, y_{k+1}]
        auto Y = [](double s) { return s * s / 2.0 - s * s * s / 3.0; };
        grad_seg[k] = 0.5 * fp * fp * (Y(y[k + 1]) - Y(y[k]));
    }
    PoincareResult r;
    r.lhs = pairwise_sum(var_seg);
    r.rhs = pairwise_sum(grad_seg);
    r.slack = r.rhs - r.lhs;
    return r;
}

std::vector<std::string> frame_columns() {
    std::vector<std::string> c = {"t"};
    for (const char* f : {"v", "u", "h"})
        for (const char* k : {"l2", "h1", "linf"}) c.push_back(std::string("pert_") + f + "_" + k);
    for (const char* k : {"X1", "X2", "Xdot1", "Xdot2", "weighted_entropy", "entropy", "G1_lemma",
                          "GS_volume", "GS_pressure", "D", "D1", "D2"})
        c.push_back(k);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 6; ++j) c.push_back("Y" + std::to_string(i) + std::to_string(j));
    for (int i = 1; i <= 2; ++i) c.push_back("Y" + std::to_string(i));
    for (int k = 1; k <= 5; ++k) c.push_back("B" + std::to_string(k));
    for (const char* k : {"S1", "S2", "G1", "G2", "Dcal", "J_bad", "J_good", "identity_rhs",
                          "identity_scale", "Z11", "Z12", "Z21", "Z22", "sep_margin1",
                          "sep_margin2"})
        c.push_back(k);
    for (const auto& k : InteractionQuantities::names()) c.push_back(k);
    for (const char* k : {"E1_l2", "E2_l2", "E3_l2", "v_min", "v_max"}) c.push_back(k);
    return c;
}

std::vector<double> frame_values(const DiagnosticsFrame& f) {
    std::vector<double> r = {f.t};
    for (const NormTriple* p : {&f.pert_v, &f.pert_u, &f.pert_h}) {
        r.push_back(p->l2);
        r.push_back(p->h1);
        r.push_back(p->linf);
    }
    const GoodTerms& g = f.good;
    for (double x : {f.shifts.X1, f.shifts.X2, f.shifts.Xdot1, f.shifts.Xdot2, f.weighted_entropy,
                     f.entropy, g.G1, g.GS_volume, g.GS_pressure, g.D, g.D1, g.D2})
        r.push_back(x);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 6; ++j) r.push_back(f.dec.Y[i][j]);
    for (int i = 0; i < 2; ++i) r.push_back(f.dec.Y_total[i]);
    for (double b : f.dec.B) r.push_back(b);
    for (double x : {f.dec.S1, f.dec.S2, f.dec.G1, f.dec.G2, f.dec.Dcal, f.dec.J_bad, f.dec.J_good,
                     f.identity_rhs, f.identity_scale, f.zeroth[0][0], f.zeroth[0][1],
                     f.zeroth[1][0], f.zeroth[1][1], f.separation.margin1, f.separation.margin2})
        r.push_back(x);
    for (double x : f.interaction.as_array()) r.push_back(x);
    for (double x : {f.E_l2[0], f.E_l2[1], f.E_l2[2], f.v_min, f.v_max}) r.push_back(x);
    return r;
}

}  // namespace twoshock
