#include "twoshock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "twoshock/numerics.hpp"

namespace twoshock {

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

std::string fmt(double x) { return format_double(x); }

double median(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    std::size_t m = x.size() / 2;
    return x.size() % 2 ? x[m] : 0.5 * (x[m - 1] + x[m]);
}

double max_rel_spread(const std::vector<double>& x) {
    double med = median(x), worst = 0;
    for (double v : x) worst = std::max(worst, std::abs(v / med - 1.0));
    return worst;
}

// gamma-law relative quantities in 50-digit arithmetic
struct BigLaw {
    big g;
    explicit BigLaw(double gamma) : g(gamma) {}
    big p(const big& v) const { return pow(v, -g); }
    big dp(const big& v) const { return -g * pow(v, -g - 1); }
    big Q(const big& v) const { return pow(v, 1 - g) / (g - 1); }
    big prel(const big& v, const big& w) const { return p(v) - p(w) - dp(w) * (v - w); }
    big Qrel(const big& v, const big& w) const { return Q(v) - Q(w) + p(w) * (v - w); }
    big vol(const big& p) const { return pow(p, -1 / g); }
};

}  // namespace

void Report::merge(const Report& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

bool Report::passed() const {
    return std::all_of(records_.begin(), records_.end(), [](const CheckRecord& r) { return r.passed; });
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["passed"] = r.passed;
        nlohmann::ordered_json vals = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.values) vals[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(fmt(v));
        c["values"] = vals;
        if (!r.detail.empty()) c["detail"] = r.detail;
        j["checks"].push_back(c);
    }
    return j.dump(2);
}

std::string Report::text() const {
    std::ostringstream o;
    for (const auto& r : records_) {
        o << (r.passed ? "PASS " : "FAIL ") << r.name;
        for (const auto& [k, v] : r.values) o << " " << k << "=" << fmt(v);
        if (!r.detail.empty()) o << " (" << r.detail << ")";
        o << "\n";
    }
    return o.str();
}

Report check_lemma_profiles(const SweepSpec& sw) {
    Report rep;
    static const char* tail_names[4] = {"fam1_left", "fam1_right", "fam2_left", "fam2_right"};
    for (double gamma : sw.gammas) {
        GasLaw law(gamma);
        std::string tag = "gamma=" + fmt(gamma);
        std::vector<std::array<double, 4>> rates;
        std::vector<double> chat, anchor;
        double worst_r2 = 1.0, worst_first_integral = 0.0;
        int bad_inflections = 0;
        for (double d : sw.deltas) {
            TwoShockConfig cfg = construct_states(law, sw.v_plus, 0.0, d, d);
            std::array<double, 4> r{};
            double ch = 0.0, an = 0.0;
            for (int fam = 1; fam <= 2; ++fam) {
                ShockProfile P = solve_profile(cfg, fam);
                const auto& xi = P.xi_table();
                for (int side = 0; side < 2; ++side) {
                    std::vector<double> xs, ys;
                    double lim = side == 0 ? 0.5 * P.xi_min() : 0.5 * P.xi_max();
                    for (double z : xi) {
                        if (side == 0 ? z > lim : z < lim) continue;
                        ProfilePoint q = P.eval(z);
                        xs.push_back(z);
                        ys.push_back(std::log(std::abs(side == 0 ? q.dL : q.dR)));
                    }
                    LineFit f = fit_line(xs, ys);
                    r[(fam - 1) * 2 + side] = std::abs(f.slope);
                    worst_r2 = std::min(worst_r2, f.r_squared);
                }
                int sign_changes = 0;
                double last = 0.0;
                for (double z : xi) {
                    double dv = P.dv(z), d2 = profile_second_derivative(P, z);
                    if (dv != 0.0) ch = std::max(ch, std::abs(d2) / (d * std::abs(dv)));
                    double fi = std::abs(P.du(z) + P.sigma() * dv) / std::max(std::abs(P.sigma() * dv), 1e-300);
                    worst_first_integral = std::max(worst_first_integral, fi);
                    if (d2 != 0.0) {
                        if (last != 0.0 && (d2 > 0) != (last > 0)) ++sign_changes;
                        last = d2;
                    }
                }
                if (sign_changes != 1) ++bad_inflections;
                an = std::max(an, std::abs(P.dv(0.0)) / (d * d));
            }
            rates.push_back(r);
            chat.push_back(ch);
            anchor.push_back(an);
        }

        CheckRecord tails{"profile_tail_fit_r2 " + tag, worst_r2 >= 0.99, {{"min_r2", worst_r2}}, ""};
        rep.add(tails);

        for (int k = 0; k < 4; ++k) {
            std::vector<double> ratio, rk;
            for (std::size_t m = 0; m < sw.deltas.size(); ++m) {
                ratio.push_back(rates[m][k] / sw.deltas[m]);
                rk.push_back(rates[m][k]);
            }
            LineFit f = fit_line(sw.deltas, rk);
            double spread = max_rel_spread(ratio);
            CheckRecord c{"profile_decay_rate_proportional " + tag + " " + tail_names[k],
                          spread <= 0.2 && f.r_squared >= 0.99,
                          {{"max_rel_spread", spread}, {"median_rate_over_delta", median(ratio)},
                           {"regression_r2", f.r_squared}},
                          ""};
            auto i1 = std::find(sw.deltas.begin(), sw.deltas.end(), 0.1);
            auto i2 = std::find(sw.deltas.begin(), sw.deltas.end(), 0.2);
            if (i1 != sw.deltas.end() && i2 != sw.deltas.end()) {
                double q = rates[i2 - sw.deltas.begin()][k] / rates[i1 - sw.deltas.begin()][k];
                c.values.push_back({"rate_0.2_over_0.1", q});
                c.passed = c.passed && std::abs(q - 2.0) <= 0.2;
            }
            rep.add(c);
        }

        double cs = max_rel_spread(chat);
        CheckRecord c2{"profile_second_derivative_ratio " + tag, cs <= 0.2,
                       {{"C_hat_median", median(chat)}, {"max_rel_spread", cs}}, ""};
        rep.add(c2);

        double as = max_rel_spread(anchor);
        rep.add({"profile_anchor_slope_quadratic " + tag, as <= 0.2,
                 {{"C_median", median(anchor)}, {"max_rel_spread", as}},
                 "|v'(0)| / delta^2 across the sweep"});
        rep.add({"profile_first_integral " + tag, worst_first_integral <= 1e-12,
                 {{"max_rel_residual", worst_first_integral}}, ""});
        rep.add({"profile_single_inflection " + tag, bad_inflections == 0,
                 {{"profiles_without_single_inflection", double(bad_inflections)}}, ""});

        // re-anchoring shifts the coordinate, not the values
        TwoShockConfig cfg = construct_states(law, sw.v_plus, 0.0, 0.1, 0.1);
        ProfileOptions shifted;
        shifted.anchor_xi = 3.7;
        double worst = 0.0;
        for (int fam = 1; fam <= 2; ++fam) {
            ShockProfile a = solve_profile(cfg, fam), b = solve_profile(cfg, fam, shifted);
            for (double z = -60.0; z <= 60.0; z += 0.25)
                worst = std::max(worst, std::abs(a.v(z) - b.v(z + 3.7)));
        }
        rep.add({"profile_translation_invariance " + tag, worst <= 1e-9, {{"max_abs_diff", worst}}, ""});
    }
    return rep;
}

Report check_relative_quantities(const SweepSpec& sw) {
    Report rep;
    for (double gamma : sw.gammas) {
        BigLaw L(gamma);
        std::string tag = "gamma=" + fmt(gamma);
        const double vp = sw.v_plus;
        std::mt19937_64 rng(static_cast<unsigned long long>(sw.seed));
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const int N = 160;

        // (1) |v-w|^2 <= C Q(v|w), |v-w|^2 <= C p(v|w) on 0<w<2v+, 0<v<3v+
        double CQ = 0, CP = 0;
        for (int a = 1; a <= N; ++a) {
            big w = big(2 * vp) * a / N;
            // diagonal limits 2/Q''(w) and 2/p''(w)
            CQ = std::max(CQ, static_cast<double>(2 / (-L.dp(w))));
            CP = std::max(CP, static_cast<double>(2 / (L.g * (L.g + 1) * pow(w, -L.g - 2))));
            for (int b = 1; b <= N; ++b) {
                big v = big(3 * vp) * b / N;
                if (v == w) continue;
                big d2 = (v - w) * (v - w);
                CQ = std::max(CQ, static_cast<double>(d2 / L.Qrel(v, w)));
                CP = std::max(CP, static_cast<double>(d2 / L.prel(v, w)));
            }
        }
        double rQ = 0, rP = 0, minQ = 1, minP = 1;
        for (int k = 0; k < sw.samples; ++k) {
            big w = big(2 * vp * (1e-9 + (1 - 2e-9) * U(rng)));
            big v = big(3 * vp * (1e-9 + (1 - 2e-9) * U(rng)));
            big d2 = (v - w) * (v - w);
            big q = L.Qrel(v, w), p = L.prel(v, w);
            minQ = std::min(minQ, static_cast<double>(q));
            minP = std::min(minP, static_cast<double>(p));
            if (d2 == 0) continue;
            rQ = std::max(rQ, static_cast<double>(d2 / q));
            rP = std::max(rP, static_cast<double>(d2 / p));
        }
        rep.add({"relative_quadratic_lower_bound " + tag,
                 rQ <= 1.05 * CQ && rP <= 1.05 * CP && minQ >= 0 && minP >= 0,
                 {{"C_Q_fitted", CQ}, {"C_p_fitted", CP}, {"max_ratio_Q", rQ}, {"max_ratio_p", rP},
                  {"min_Q_rel", minQ}, {"min_p_rel", minP}, {"seed", double(sw.seed)}},
                 ""});

        // (2) |p(v)-p(w)| <= C |v-w| for v, w > v+/2 (sampled up to 3v+)
        double CL = 0;
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) {
                big v = big(vp / 2) + big(2.5 * vp) * a / N, w = big(vp / 2) + big(2.5 * vp) * b / N;
                if (v == w) {
                    CL = std::max(CL, static_cast<double>(-L.dp(v)));
                    continue;
                }
                CL = std::max(CL, static_cast<double>(abs(L.p(v) - L.p(w)) / abs(v - w)));
            }
        double rL = 0;
        for (int k = 0; k < sw.samples; ++k) {
            big v = big(vp * (0.5 + 2.5 * U(rng))), w = big(vp * (0.5 + 2.5 * U(rng)));
            if (v == w) continue;
            rL = std::max(rL, static_cast<double>(abs(L.p(v) - L.p(w)) / abs(v - w)));
        }
        rep.add({"pressure_lipschitz " + tag, rL <= 1.05 * CL,
                 {{"C_fitted", CL}, {"max_ratio", rL}}, ""});

        // (3) small pressure gaps, delta = 1e-2
        const double delta = 1e-2;
        big pplus = L.p(big(vp));
        auto bounds = [&](const big& pw, const big& pv, double& sA, double& gB, double& sC) {
            big w = L.vol(pw), v = L.vol(pv);
            big dP = pv - pw, d2 = dP * dP;
            big coefA = (L.g + 1) / (2 * L.g * pw);
            big coefQ = pow(pw, -1 / L.g - 1) / (2 * L.g);
            big cubic = (1 + L.g) / (3 * L.g * L.g) * pow(pw, -1 / L.g - 2) * dP * d2;
            big q = L.Qrel(v, w);
            sA = static_cast<double>((L.prel(v, w) / d2 - coefA) / delta);
            gB = static_cast<double>((q - (coefQ * d2 - cubic)) / (d2 * d2));
            sC = static_cast<double>((q / d2 - coefQ) / delta);
        };
        double CA = -1e300, CC = -1e300, minB = 1e300;
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) {
                if (b == N / 2) continue;
                big pw = pplus + big(delta) * (2.0 * a / N - 1.0);
                big pv = pw + big(delta) * (2.0 * b / N - 1.0);
                double sA, gB, sC;
                bounds(pw, pv, sA, gB, sC);
                CA = std::max(CA, sA);
                CC = std::max(CC, sC);
                minB = std::min(minB, gB);
            }
        double rA = -1e300, rC = -1e300, rB = 1e300;
        for (int k = 0; k < sw.samples; ++k) {
            big pw = pplus + big(delta * (2 * U(rng) - 1));
            big pv = pw + big(delta * (2 * U(rng) - 1));
            if (pv == pw) continue;
            double sA, gB, sC;
            bounds(pw, pv, sA, gB, sC);
            rA = std::max(rA, sA);
            rC = std::max(rC, sC);
            rB = std::min(rB, gB);
        }
        auto within = [](double r, double C) { return r <= (C >= 0 ? 1.05 * C : 0.95 * C); };
        rep.add({"small_gap_relative_pressure_upper " + tag, within(rA, CA),
                 {{"C_fitted", CA}, {"max_slack_over_delta", rA}, {"delta", delta}}, ""});
        rep.add({"small_gap_internal_energy_lower " + tag, rB >= 0.0 && minB >= 0.0,
                 {{"min_margin_over_gap4_samples", rB}, {"min_margin_over_gap4_grid", minB}},
                 "no slack constant in this bound"});
        rep.add({"small_gap_internal_energy_upper " + tag, within(rC, CC),
                 {{"C_fitted", CC}, {"max_slack_over_delta", rC}, {"delta", delta}}, ""});

        // eta(U|Ubar) / |U-Ubar|^2 on v in [v+/2, 2v+], u in [-1, 1]
        double lo = 1e300, hi = 0;
        for (int k = 0; k < sw.samples; ++k) {
            big v = big(vp * (0.5 + 1.5 * U(rng))), vb = big(vp * (0.5 + 1.5 * U(rng)));
            big u = big(2 * U(rng) - 1), ub = big(2 * U(rng) - 1);
            big n2 = (v - vb) * (v - vb) + (u - ub) * (u - ub);
            if (n2 == 0) continue;
            double r = static_cast<double>(((u - ub) * (u - ub) / 2 + L.Qrel(v, vb)) / n2);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        double Ceta = std::max(hi, 1.0 / lo);
        rep.add({"relative_entropy_locally_quadratic " + tag, lo > 0 && std::isfinite(Ceta),
                 {{"min_ratio", lo}, {"max_ratio", hi}, {"C", Ceta}}, ""});
    }
    return rep;
}

Report check_poincare_random(long seed, int samples) {
    Report rep;
    const int m = 1001;
    std::vector<double> y(m);
    for (int k = 0; k < m; ++k) y[k] = double(k) / (m - 1);

    std::vector<double> f(m);
    for (int k = 0; k < m; ++k) f[k] = y[k];
    PoincareResult lin = poincare_check(y, f);
    double e = std::max(std::abs(lin.lhs - 1.0 / 12), std::abs(lin.rhs - 1.0 / 12));
    rep.add({"poincare_equality_case", e <= 1e-10, {{"lhs", lin.lhs}, {"rhs", lin.rhs}, {"max_err", e}}, ""});

    for (int k = 0; k < m; ++k) f[k] = 0.7;
    PoincareResult cst = poincare_check(y, f);
    rep.add({"poincare_constant", std::abs(cst.lhs) <= 1e-15 && std::abs(cst.rhs) <= 1e-15,
             {{"lhs", cst.lhs}, {"rhs", cst.rhs}}, ""});

    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::normal_distribution<double> N01(0.0, 1.0);
    std::uniform_int_distribution<int> K(1, 8);
    double min_slack = 1e300, min_ratio = 1e300;
    for (int s = 0; s < samples; ++s) {
        int kmax = K(rng);
        std::vector<double> a(kmax + 1), b(kmax + 1);
        double c0 = N01(rng);
        for (int k = 1; k <= kmax; ++k) {
            a[k] = N01(rng) / k;
            b[k] = N01(rng) / k;
        }
        for (int j = 0; j < m; ++j) {
            double v = c0;
            for (int k = 1; k <= kmax; ++k)
                v += a[k] * std::cos(k * M_PI * y[j]) + b[k] * std::sin(k * M_PI * y[j]);
            f[j] = v;
        }
        PoincareResult r = poincare_check(y, f);
        min_slack = std::min(min_slack, r.slack);
        if (r.rhs > 0) min_ratio = std::min(min_ratio, r.slack / r.rhs);
    }
    rep.add({"poincare_random_trigonometric", min_slack >= -1e-10,
             {{"samples", double(samples)}, {"min_slack", min_slack}, {"min_relative_slack", min_ratio},
              {"seed", double(seed)}},
             ""});
    return rep;
}

namespace {

double rel_err(double a, double b, double scale) {
    return std::abs(a - b) / std::max(scale, std::numeric_limits<double>::min());
}

FieldState composite_state(const Composite& c, const Grid& g, double t) {
    FieldState s;
    s.t = t;
    ShiftPair zero;
    for (int j = 0; j < g.n; ++j) {
        StatePoint p = c.state(t, g.x(j), zero);
        s.v.push_back(p.v);
        s.u.push_back(p.u);
    }
    return s;
}

}  // namespace

Report check_exact_identities(const RunConfig& base, const SweepSpec& sw) {
    Report rep;
    double worst_rh = 0;
    for (double gamma : sw.gammas)
        for (auto [d1, d2] : sw.pairs)
            worst_rh = std::max(worst_rh, rh_residual(construct_states(GasLaw(gamma), sw.v_plus, 0.0, d1, d2)));
    rep.add({"rankine_hugoniot_residual", worst_rh <= 1e-12, {{"max_residual", worst_rh}}, ""});

    RunConfig rc = base;
    rc.T = 20.0;
    rc.frame_interval = 2.0;
    Scenario sc = build_scenario(rc);
    double worst_fi = 0;
    for (int fam = 1; fam <= 2; ++fam) {
        const ShockProfile& P = sc.composite->profile(fam);
        for (double z : P.xi_table()) {
            double dv = P.dv(z);
            worst_fi = std::max(worst_fi, rel_err(P.du(z), -P.sigma() * dv, std::abs(P.sigma() * dv)));
        }
    }
    rep.add({"profile_first_integral_identity", worst_fi <= 1e-12, {{"max_rel_residual", worst_fi}}, ""});

    SimulationResult run = simulate(sc);
    ShiftConstants K = shift_constants(sc.states);
    double wY = 0, wX = 0, wS = 0;
    for (const auto& fr : run.frames) {
        const Decomposition& d = fr.dec;
        for (int i = 0; i < 2; ++i) {
            double sum = 0, mag = 0;
            for (double y : d.Y[i]) {
                sum += y;
                mag += std::abs(y);
            }
            wY = std::max(wY, rel_err(d.Y_total[i], sum, mag));
            double delta = i == 0 ? sc.states.delta1 : sc.states.delta2;
            double xd = i == 0 ? fr.shifts.Xdot1 : fr.shifts.Xdot2;
            double formula = -(K.M / delta) * (d.Y[i][0] + d.Y[i][1]);
            double mag2 = (K.M / delta) * (std::abs(d.Y[i][0]) + std::abs(d.Y[i][1]));
            wX = std::max(wX, rel_err(xd, formula, mag2));
        }
        double lhs = d.J_bad - d.J_good, rhs = d.B_total() - d.G_total();
        wS = std::max(wS, rel_err(lhs, rhs, std::abs(d.J_bad) + std::abs(d.J_good)));
    }
    rep.add({"shift_integral_sum_identity", wY <= 1e-12, {{"max_rel_residual", wY}}, "Y_i = sum_j Y_ij"});
    rep.add({"shift_rate_formula", wX <= 1e-12, {{"max_rel_residual", wX}},
             "Xdot_i = -(M/delta_i)(Y_i1 + Y_i2)"});
    rep.add({"completing_square_recombination", wS <= 1e-12, {{"max_rel_residual", wS}},
             "J_bad - J_good = B - G"});

    // zero perturbation: exact at overlap for the v- and u-functionals, everything once separated
    RunConfig zc = base;
    zc.pert_v_shape = "zero";
    zc.pert_v_amplitude = 0;
    zc.pert_u_shape = "zero";
    zc.pert_u_amplitude = 0;
    const TwoShockConfig& st = sc.states;
    double kmin = std::min({std::abs(sc.composite->profile(1).kappa_left()),
                            std::abs(sc.composite->profile(1).kappa_right()),
                            std::abs(sc.composite->profile(2).kappa_left()),
                            std::abs(sc.composite->profile(2).kappa_right())});
    double t_sep = 2.0 * 200.0 / (kmin * (st.sigma2 - st.sigma1));
    zc.T = t_sep;
    zc.frame_interval = t_sep;
    Scenario zs = build_scenario(zc);
    FrameEvaluator ev(*zs.composite, zs.weight, zs.grid);
    ShiftPair zero;
    DiagnosticsFrame f0 = ev.evaluate(composite_state(*zs.composite, zs.grid, 0.0), zero);
    DiagnosticsFrame f1 = ev.evaluate(composite_state(*zs.composite, zs.grid, t_sep), zero);
    auto v_only = [](const DiagnosticsFrame& f) {
        const GoodTerms& g = f.good;
        const Decomposition& d = f.dec;
        double m = 0;
        for (double x : {f.shifts.Xdot1, f.shifts.Xdot2, f.pert_v.linf, f.pert_u.linf, g.GS_volume,
                         g.GS_pressure, g.D, g.D1, g.D2, g.G2, g.Dcal, d.B[0], d.B[1], d.B[2], d.B[3],
                         d.B[4], d.S1, d.Y[0][0], d.Y[0][1], d.Y[1][0], d.Y[1][1]})
            m = std::max(m, std::abs(x));
        return m;
    };
    double all1 = 0;
    {
        auto vals = frame_values(f1);
        auto cols = frame_columns();
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::string& c = cols[k];
            if (c == "t" || c == "X1" || c == "X2" || c.rfind("sep_", 0) == 0 || c.rfind("log_", 0) == 0 ||
                c.rfind("E", 0) == 0 || c == "v_min" || c == "v_max" || c == "identity_scale")
                continue;
            all1 = std::max(all1, std::abs(vals[k]));
        }
    }
    double v0 = v_only(f0);
    rep.add({"zero_perturbation_fixed_point", v0 == 0.0 && all1 <= 1e-12,
             {{"overlap_v_u_functionals_max", v0}, {"separated_all_functionals_max", all1},
              {"t_separated", t_sep}, {"overlap_weighted_entropy", f0.weighted_entropy}},
             "at overlap h - ht equals the closed-form interaction term"});
    return rep;
}

void PoincareMonitor::operator()(long frame_index, const FieldState& s, const ShiftPair& X) {
    if (frame_index % every_ != 0) return;
    for (int fam = 1; fam <= 2; ++fam) {
        LocalizedPerturbation L = localize(*sc_.composite, sc_.grid, s, X, fam);
        if (L.y.size() < 3) continue;
        PoincareResult r = poincare_check(L.y, L.w);
        if (first_ || r.slack < min_slack_) min_slack_ = r.slack;
        max_lhs_ = std::max(max_lhs_, r.lhs);
        first_ = false;
        ++checked_;
    }
}

CheckRecord PoincareMonitor::record(const std::string& label) const {
    return {"poincare_on_run " + label, checked_ > 0 && min_slack_ >= -1e-10,
            {{"checks", double(checked_)}, {"min_slack", min_slack_}, {"max_lhs", max_lhs_}}, ""};
}

Report check_theorem_behavior(const std::vector<DiagnosticsFrame>& frames, const Scenario& sc,
                              const std::string& label, TheoremFactors* out) {
    Report rep;
    const int W = 20;
    std::size_t n = frames.size();
    if (n < static_cast<std::size_t>(2 * W)) {
        rep.add({"theorem_behavior " + label, false, {{"frames", double(n)}}, "too few frames"});
        return rep;
    }
    auto windowed = [&](auto get) {
        std::vector<double> m(W, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            int w = std::min<int>(W - 1, static_cast<int>(k * W / n));
            m[w] = std::max(m[w], std::abs(get(frames[k])));
        }
        double peak = *std::max_element(m.begin(), m.end());
        return std::array<double, 2>{peak, m.back()};
    };
    auto sup = windowed([](const DiagnosticsFrame& f) { return f.pert_v.linf; });
    auto x1 = windowed([](const DiagnosticsFrame& f) { return f.shifts.Xdot1; });
    auto x2 = windowed([](const DiagnosticsFrame& f) { return f.shifts.Xdot2; });
    TheoremFactors tf{sup[0] / sup[1], x1[0] / x1[1], x2[0] / x2[1]};
    if (out) *out = tf;
    rep.add({"sup_perturbation_decay " + label, tf.sup_perturbation >= 5.0,
             {{"peak", sup[0]}, {"final_window_max", sup[1]}, {"factor", tf.sup_perturbation}}, ""});
    rep.add({"shift_rate_decay " + label, tf.xdot1 >= 5.0 && tf.xdot2 >= 5.0,
             {{"factor1", tf.xdot1}, {"factor2", tf.xdot2}, {"peak1", x1[0]}, {"peak2", x2[0]}}, ""});

    double T = sc.config.T, t0 = T / W;
    double worst1 = 1e300, worst2 = 1e300;
    for (const auto& f : frames) {
        if (f.t < t0) continue;
        worst1 = std::min(worst1, f.separation.margin1);
        worst2 = std::min(worst2, f.separation.margin2);
    }
    rep.add({"separation_after_t0 " + label, worst1 >= 0 && worst2 >= 0,
             {{"t0", t0}, {"min_margin1", worst1}, {"min_margin2", worst2}}, ""});
    const DiagnosticsFrame& last = frames.back();
    double r1 = std::abs(last.shifts.X1) / last.t, r2 = std::abs(last.shifts.X2) / last.t;
    rep.add({"sublinear_shifts " + label,
             r1 < std::abs(sc.states.sigma1) / 2 && r2 < std::abs(sc.states.sigma2) / 2,
             {{"X1_over_T", r1}, {"X2_over_T", r2}, {"half_sigma1", std::abs(sc.states.sigma1) / 2},
              {"half_sigma2", sc.states.sigma2 / 2}},
             ""});
    return rep;
}

Report check_resolution_drift(const TheoremFactors& a, const TheoremFactors& b,
                              const std::string& label, double tol) {
    auto drift = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    double d0 = drift(a.sup_perturbation, b.sup_perturbation), d1 = drift(a.xdot1, b.xdot1),
           d2 = drift(a.xdot2, b.xdot2);
    Report rep;
    rep.add({"resolution_drift " + label, d0 <= tol && d1 <= tol && d2 <= tol,
             {{"sup_perturbation_drift", d0}, {"xdot1_drift", d1}, {"xdot2_drift", d2}, {"tolerance", tol}},
             ""});
    return rep;
}

Report check_separation_lemmas(const std::vector<DiagnosticsFrame>& frames, const Scenario& sc,
                               const std::string& label) {
    Report rep;
    double T = sc.config.T;
    auto names = InteractionQuantities::names();
    for (int q = 0; q < InteractionQuantities::count; ++q) {
        std::vector<double> ts, ls;
        for (const auto& f : frames) {
            if (f.t < T / 4 - 1e-9) continue;
            double l = f.interaction.as_array()[q];
            if (!std::isfinite(l)) continue;
            ts.push_back(f.t);
            ls.push_back(l);
        }
        CheckRecord r{"interaction_decay " + label + " " + names[q], false, {}, ""};
        if (ts.size() < 3) {
            r.detail = "insufficient finite frames";
            rep.add(r);
            continue;
        }
        LineFit f = fit_line(ts, ls);
        double efolds = -f.slope * (ts.back() - ts.front());
        // decay: negative slope, at least one e-fold across the fit window
        r.passed = f.slope < 0 && efolds >= 1.0;
        r.values = {{"rate", -f.slope}, {"log_C", f.intercept}, {"efolds", efolds}, {"r2", f.r_squared}};
        if (names[q] == "log_sup_phi2_v1x" || names[q] == "log_int_phi2_v1x")
            r.values.push_back({"rate_over_delta1", -f.slope / sc.states.delta1});
        if (names[q] == "log_sup_phi1_v2x" || names[q] == "log_int_phi1_v2x")
            r.values.push_back({"rate_over_delta2", -f.slope / sc.states.delta2});
        rep.add(r);
    }
    // one e-fold of the slope product between t = 0 and T/2
    const DiagnosticsFrame* a = &frames.front();
    const DiagnosticsFrame* b = a;
    for (const auto& f : frames)
        if (std::abs(f.t - T / 2) < std::abs(b->t - T / 2)) b = &f;
    double drop = a->interaction.int_slope_product - b->interaction.int_slope_product;
    rep.add({"slope_product_efold " + label, drop >= 1.0, {{"log_drop_0_to_T_half", drop}}, ""});
    return rep;
}

std::vector<DiagnosticsFrame> negative_control_frames(const Scenario& sc, int count) {
    TwoShockConfig c = sc.states;
    c.sigma1 = 0.0;
    c.sigma2 = 0.0;
    Composite comp(c, sc.composite->profile(1), sc.composite->profile(2));
    FrameEvaluator ev(comp, sc.weight, sc.grid);
    std::vector<DiagnosticsFrame> out;
    ShiftPair zero;
    for (int k = 0; k < count; ++k) {
        double t = sc.config.T * k / (count - 1);
        out.push_back(ev.evaluate(composite_state(comp, sc.grid, t), zero));
    }
    return out;
}

Report check_negative_control(const Scenario& sc) {
    Report inner = check_separation_lemmas(negative_control_frames(sc, 41), sc, "negative_control");
    int decayed = 0;
    for (const auto& r : inner.records())
        if (r.passed) ++decayed;
    Report rep;
    rep.add({"negative_control_no_decay", decayed == 0,
             {{"decay_checks_passed", double(decayed)}, {"decay_checks", double(inner.records().size())}},
             "equal zero speeds and frozen shifts; every decay check must fail"});
    return rep;
}

Report check_identity_audit(const std::vector<DiagnosticsFrame>& base, double dx_base,
                            const std::vector<DiagnosticsFrame>& fine, double dx_fine,
                            const std::string& label) {
    IdentityResidual a = identity_audit(base), b = identity_audit(fine);
    double order = std::log(a.aggregate_abs / b.aggregate_abs) / std::log(dx_base / dx_fine);
    Report rep;
    rep.add({"identity_audit_relative_residual " + label, a.aggregate_rel <= 0.05,
             {{"relative_residual", a.aggregate_rel}, {"relative_residual_fine", b.aggregate_rel}}, ""});
    rep.add({"identity_audit_refinement_order " + label, order >= 1.8,
             {{"order", order}, {"abs_base", a.aggregate_abs}, {"abs_fine", b.aggregate_abs}}, ""});
    return rep;
}

}  // namespace twoshock
