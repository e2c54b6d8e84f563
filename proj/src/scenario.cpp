#include "twoshock/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace twoshock {

namespace {

std::string hexf(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_hexf(const std::string& s) {
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw std::runtime_error("checkpoint: bad number '" + s + "'");
    return x;
}

ComponentPerturbation component(const std::string& shape, double amp, double center, double width) {
    ComponentPerturbation c;
    c.shape = parse_shape(shape);
    c.amplitude = amp;
    c.center = center;
    c.width = width;
    return c;
}

}  // namespace

Scenario build_scenario(RunConfig cfg, double resolution_scale) {
    validate_basic(cfg);
    if (!(resolution_scale > 0.0)) throw ConfigError("resolution scale must be positive");
    Scenario sc;
    GasLaw law(cfg.gamma);
    try {
        sc.states = construct_states(law, cfg.v_plus, cfg.u_plus, cfg.delta1, cfg.delta2);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("no admissible two-shock configuration: ") + e.what());
    }
    const TwoShockConfig& st = sc.states;
    double dmin = std::min(cfg.delta1, cfg.delta2), dmax = std::max(cfg.delta1, cfg.delta2);

    ProfileOptions po;
    po.tol = cfg.profile_tol;
    po.rtol = cfg.profile_rtol;
    auto comp = std::make_shared<Composite>(st, po);
    for (int i = 1; i <= 2; ++i)
        if (comp->profile(i).truncated())
            sc.warnings.push_back("profile " + std::to_string(i) + " truncated at tolerance " +
                                  format_double(comp->profile(i).achieved_tol()));
    sc.composite = comp;

    if (cfg.lambda < 0.0) cfg.lambda = default_lambda(st);
    sc.weight.lambda = cfg.lambda;
    WeightBounds wb = check_weight(st, sc.weight, cfg.weight_K, cfg.weight_C);
    if (!wb.below_root || !wb.below_quarter)
        throw ConfigError("lambda must satisfy lambda <= weight_C min(sqrt delta_i) and lambda < 1/4");
    if (!wb.above_strengths)
        sc.warnings.push_back("lambda below weight_K max(delta_i); weight may not dominate the strengths");

    if (cfg.T == 0.0) cfg.T = 50.0 / dmin;
    if (cfg.dx == 0.0) cfg.dx = 0.02 / dmax;
    cfg.dx /= resolution_scale;
    if (cfg.x_left == 0.0 && cfg.x_right == 0.0) {
        double ext = 0.0;
        for (int i = 1; i <= 2; ++i)
            ext = std::max({ext, std::abs(comp->profile(i).xi_min()), std::abs(comp->profile(i).xi_max())});
        double half = std::max(std::abs(st.sigma1), std::abs(st.sigma2)) * cfg.T + ext + 20.0 / dmin;
        half = std::ceil(half / cfg.dx) * cfg.dx;
        cfg.x_left = -half;
        cfg.x_right = half;
    }
    if (cfg.frame_interval == 0.0) cfg.frame_interval = cfg.T / 500.0;

    try {
        sc.grid = make_grid(cfg.x_left, cfg.x_right, cfg.dx);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }

    sc.perturbation.v = component(cfg.pert_v_shape, cfg.pert_v_amplitude, cfg.pert_v_center, cfg.pert_v_width);
    sc.perturbation.u = component(cfg.pert_u_shape, cfg.pert_u_amplitude, cfg.pert_u_center, cfg.pert_u_width);
    FieldState s0;
    try {
        s0 = init_state(sc.grid, *comp, sc.perturbation);
    } catch (const PositivityError& e) {
        throw ConfigError(std::string("perturbation: ") + e.what());
    }
    sc.dt = cfg.dt_factor * stability_scale(cfg.gamma, sc.grid, s0.v);
    sc.stride = std::max(1L, std::lround(cfg.frame_interval / sc.dt));
    sc.config = cfg;
    return sc;
}

long Scenario::frame_count() const {
    return static_cast<long>(std::floor(config.T / (static_cast<double>(stride) * dt) * (1.0 + 1e-12))) + 1;
}

std::vector<std::pair<std::string, std::string>> Scenario::echo() const {
    auto e = config_entries(config);
    const TwoShockConfig& s = states;
    auto d = format_double;
    e.insert(e.end(), {{"v_minus", d(s.v_minus)},
                       {"u_minus", d(s.u_minus)},
                       {"v_m", d(s.v_m)},
                       {"u_m", d(s.u_m)},
                       {"sigma1", d(s.sigma1)},
                       {"sigma2", d(s.sigma2)},
                       {"n", std::to_string(grid.n)},
                       {"dt", d(dt)},
                       {"stride", std::to_string(stride)},
                       {"frames", std::to_string(frame_count())}});
    return e;
}

std::string csv_header(const Scenario& sc) {
    std::ostringstream o;
    for (const auto& [k, v] : sc.echo()) o << "# " << k << " = " << v << "\n";
    auto cols = frame_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
    o << "\n";
    return o.str();
}

std::string csv_row(const DiagnosticsFrame& f) {
    std::string r;
    auto vals = frame_values(f);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) r += ",";
        r += format_double(vals[i]);
    }
    r += "\n";
    return r;
}

void write_checkpoint(const std::string& path, const Scenario& sc, const Checkpoint& c) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream o(tmp);
        if (!o) throw std::runtime_error("cannot write checkpoint '" + path + "'");
        for (const auto& [k, v] : sc.echo()) o << "# " << k << " = " << v << "\n";
        o << "step " << c.step << "\n";
        o << "t " << hexf(c.state.t) << "\n";
        o << "X " << hexf(c.X[0]) << " " << hexf(c.X[1]) << "\n";
        o << "n " << c.state.v.size() << "\n";
        o << "# x v u h\n";
        for (std::size_t j = 0; j < c.state.v.size(); ++j) {
            double h = j < c.state.h.size() ? c.state.h[j] : 0.0;
            o << hexf(sc.grid.x(static_cast<int>(j))) << " " << hexf(c.state.v[j]) << " "
              << hexf(c.state.u[j]) << " " << hexf(h) << "\n";
        }
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
    Checkpoint c;
    std::string line, key;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.rfind("# x ", 0) == 0) break;
        if (line.rfind("# ", 0) == 0) {
            auto eq = line.find(" = ");
            c.echo.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        std::istringstream ls(line);
        ls >> key;
        std::string a, b;
        if (key == "step") {
            ls >> c.step;
        } else if (key == "t") {
            ls >> a;
            c.state.t = parse_hexf(a);
        } else if (key == "X") {
            ls >> a >> b;
            c.X = {parse_hexf(a), parse_hexf(b)};
        } else if (key == "n") {
            ls >> n;
        }
    }
    c.state.v.resize(n);
    c.state.u.resize(n);
    c.state.h.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::string x, v, u, h;
        if (!(in >> x >> v >> u >> h)) throw std::runtime_error("checkpoint: truncated data");
        c.state.v[j] = parse_hexf(v);
        c.state.u[j] = parse_hexf(u);
        c.state.h[j] = parse_hexf(h);
    }
    return c;
}

SimulationResult simulate(const Scenario& sc, const SimulateOptions& opt) {
    const Composite& comp = *sc.composite;
    SimulationResult res;
    FieldState s;
    ShiftVec X{0.0, 0.0};
    long start = 0;
    namespace fs = std::filesystem;
    std::string csv_path, ck_path;
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        csv_path = (fs::path(opt.out_dir) / "frames.csv").string();
        ck_path = (fs::path(opt.out_dir) / "checkpoint.txt").string();
    }

    std::ofstream csv;
    if (opt.resume) {
        if (ck_path.empty()) throw ConfigError("resume needs an output directory");
        Checkpoint c = read_checkpoint(ck_path);
        if (c.echo != sc.echo()) throw ConfigError("checkpoint was written by a different configuration");
        s = c.state;
        X = c.X;
        start = c.step;
        // keep the frames up to and including the checkpoint
        std::ifstream in(csv_path);
        if (!in) throw ConfigError("resume: missing frames.csv");
        std::vector<std::string> kept;
        std::string line;
        long rows = 0, keep_rows = start / sc.stride + 1;
        bool in_data = false;
        while (std::getline(in, line)) {
            if (!in_data) {
                kept.push_back(line);
                if (line.rfind("# ", 0) != 0) in_data = true;
                continue;
            }
            if (rows++ < keep_rows) kept.push_back(line);
        }
        in.close();
        csv.open(csv_path, std::ios::trunc);
        for (const auto& l : kept) csv << l << "\n";
    } else {
        s = init_state(sc.grid, comp, sc.perturbation);
        if (!csv_path.empty()) {
            csv.open(csv_path, std::ios::trunc);
            csv << csv_header(sc);
        }
    }

    ShiftDriver driver(comp, sc.weight, sc.grid, sc.config.freeze_shifts);
    Integrator integ(sc.states.law, sc.grid, driver);
    FrameEvaluator ev(comp, sc.weight, sc.grid);
    RunOptions ro;
    ro.T = sc.config.T;
    ro.dt = sc.dt;
    ro.stride = sc.stride;
    ro.start_step = start;
    ro.halt_after_frames = opt.halt_after_frames;

    long emitted = 0;
    auto sink = [&](long step, const FieldState& st, const ShiftVec& Xs) {
        ShiftPair sp;
        sp.X1 = Xs[0];
        sp.X2 = Xs[1];
        DiagnosticsFrame fr = ev.evaluate(st, sp);
        if (csv.is_open()) {
            csv << csv_row(fr);
            csv.flush();
        }
        if (opt.keep_frames) res.frames.push_back(fr);
        ++emitted;
        long idx = step / sc.stride;
        if (opt.on_state) opt.on_state(idx, st, fr.shifts);
        bool halting = opt.halt_after_frames > 0 && emitted == opt.halt_after_frames;
        bool periodic = sc.config.checkpoint_every > 0 && idx % sc.config.checkpoint_every == 0;
        if (!ck_path.empty() && (halting || periodic)) write_checkpoint(ck_path, sc, {step, st, Xs, {}});
    };
    res.run = run(integ, s, X, ro, sink);
    res.final_state = s;
    res.X = X;
    res.final_step = start + res.run.steps;
    return res;
}

void write_profile_table(const std::string& path, const Scenario& sc, int family) {
    const ShockProfile& p = sc.composite->profile(family);
    std::ofstream o(path);
    if (!o) throw std::runtime_error("cannot write '" + path + "'");
    for (const auto& [k, v] : sc.echo()) o << "# " << k << " = " << v << "\n";
    o << "# family = " << family << "\n";
    o << "# xi v dv u h\n";
    for (double xi : p.xi_table()) {
        ProfilePoint q = p.eval(xi);
        o << format_double(xi) << " " << format_double(q.v) << " " << format_double(q.dv) << " "
          << format_double(p.u(xi)) << " " << format_double(p.h(xi)) << "\n";
    }
}

}  // namespace twoshock
