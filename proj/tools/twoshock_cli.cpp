#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twoshock/config.hpp"
#include "twoshock/scenario.hpp"
#include "twoshock/verify.hpp"

using namespace twoshock;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config_path;
    std::string out = "out";
    double resolution_scale = 1.0;
    long seed = -1;
};

RunConfig load(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
    if (c.seed >= 0) cfg.seed = c.seed;
    return cfg;
}

Scenario prepare(const Common& c) {
    Scenario sc = build_scenario(load(c), c.resolution_scale);
    for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
    return sc;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream o(p);
    if (!o) throw std::runtime_error("cannot write '" + p.string() + "'");
    o << s;
}

int cmd_profile(const Common& c) {
    Scenario sc = prepare(c);
    fs::create_directories(c.out);
    for (int fam = 1; fam <= 2; ++fam) {
        fs::path p = fs::path(c.out) / ("profile_" + std::to_string(fam) + ".txt");
        write_profile_table(p.string(), sc, fam);
        std::cout << p.string() << "\n";
    }
    return 0;
}

int cmd_riemann(const Common& c) {
    Scenario sc = prepare(c);
    const TwoShockConfig& s = sc.states;
    std::ostringstream o;
    for (const auto& [k, v] : sc.echo()) o << "# " << k << " = " << v << "\n";
    auto d = format_double;
    o << "v_minus " << d(s.v_minus) << "\nu_minus " << d(s.u_minus) << "\nv_m " << d(s.v_m)
      << "\nu_m " << d(s.u_m) << "\nv_plus " << d(s.v_plus) << "\nu_plus " << d(s.u_plus)
      << "\nsigma1 " << d(s.sigma1) << "\nsigma2 " << d(s.sigma2) << "\ndelta1 " << d(s.delta1)
      << "\ndelta2 " << d(s.delta2) << "\nrh_residual " << d(rh_residual(s)) << "\n";
    fs::create_directories(c.out);
    write_text(fs::path(c.out) / "riemann.txt", o.str());
    std::cout << o.str();
    return 0;
}

int cmd_simulate(const Common& c, bool resume, long halt) {
    Scenario sc = prepare(c);
    SimulateOptions opt;
    opt.out_dir = c.out;
    opt.resume = resume;
    opt.halt_after_frames = halt;
    opt.keep_frames = false;
    SimulationResult r = simulate(sc, opt);
    std::cout << "steps " << r.run.steps << " frames " << r.run.frames << (r.run.halted ? " halted" : "")
              << " t " << format_double(r.final_state.t) << "\n";
    return 0;
}

int cmd_decompose(const Common& c) {
    Scenario sc = prepare(c);
    SimulateOptions opt;
    opt.out_dir = c.out;
    SimulationResult r = simulate(sc, opt);
    IdentityResidual a = identity_audit(r.frames);
    std::ostringstream o;
    for (const auto& [k, v] : sc.echo()) o << "# " << k << " = " << v << "\n";
    o << "# aggregate_abs = " << format_double(a.aggregate_abs) << "\n";
    o << "# aggregate_rel = " << format_double(a.aggregate_rel) << "\n";
    o << "t,lhs,rhs,residual,scale\n";
    for (std::size_t k = 0; k < a.t.size(); ++k)
        o << format_double(a.t[k]) << "," << format_double(a.lhs[k]) << "," << format_double(a.rhs[k]) << ","
          << format_double(a.residual[k]) << "," << format_double(a.scale[k]) << "\n";
    write_text(fs::path(c.out) / "identity_audit.csv", o.str());
    std::cout << "identity residual: relative " << format_double(a.aggregate_rel) << " absolute "
              << format_double(a.aggregate_abs) << "\n";
    return 0;
}

int cmd_verify(const Common& c, bool run_scenario) {
    RunConfig cfg = load(c);
    SweepSpec sw;
    sw.seed = cfg.seed;
    sw.gammas = {cfg.gamma};
    sw.v_plus = cfg.v_plus;
    Report rep;
    rep.merge(check_exact_identities(cfg, sw));
    rep.merge(check_poincare_random(sw.seed, sw.samples));
    rep.merge(check_relative_quantities(sw));
    rep.merge(check_lemma_profiles(sw));
    if (run_scenario) {
        Scenario sc = prepare(c);
        PoincareMonitor mon(sc);
        SimulateOptions opt;
        opt.out_dir = c.out;
        opt.on_state = [&](long i, const FieldState& s, const ShiftPair& X) { mon(i, s, X); };
        SimulationResult r = simulate(sc, opt);
        rep.add(mon.record("run"));
        rep.merge(check_theorem_behavior(r.frames, sc, "run"));
        rep.merge(check_separation_lemmas(r.frames, sc, "run"));
        rep.merge(check_negative_control(sc));
    }
    fs::create_directories(c.out);
    write_text(fs::path(c.out) / "report.json", rep.json() + "\n");
    write_text(fs::path(c.out) / "report.txt", rep.text());
    std::cout << rep.text();
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-shock compressible Navier-Stokes stability toolkit"};
    app.require_subcommand(1);
    Common c;
    bool resume = false, run_scenario = false;
    long halt = 0;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", c.config_path, "key = value run description")->check(CLI::ExistingFile);
        s->add_option("--out", c.out, "output directory");
        s->add_option("--resolution-scale", c.resolution_scale, "divides dx");
        s->add_option("--seed", c.seed, "overrides the config seed");
    };
    auto* prof = app.add_subcommand("profile", "write both viscous shock profile tables");
    auto* riem = app.add_subcommand("riemann", "solve the two-shock Riemann configuration");
    auto* sim = app.add_subcommand("simulate", "run the perturbed composite wave, write frames.csv");
    auto* dec = app.add_subcommand("decompose", "run and audit the weighted relative entropy identity");
    auto* ver = app.add_subcommand("verify", "run the property checks, write report.json");
    for (auto* s : {prof, riem, sim, dec, ver}) common(s);
    sim->add_flag("--resume", resume, "continue from OUT/checkpoint.txt");
    sim->add_option("--halt-after-frames", halt, "stop (with a checkpoint) after this many frames");
    ver->add_flag("--run", run_scenario, "also simulate the configured scenario and check its decay");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*prof) return cmd_profile(c);
        if (*riem) return cmd_riemann(c);
        if (*sim) return cmd_simulate(c, resume, halt);
        if (*dec) return cmd_decompose(c);
        if (*ver) return cmd_verify(c, run_scenario);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const PositivityError& e) {
        std::cerr << "aborted: " << e.what() << " at t=" << e.t << " x=" << e.x << "\n";
        return 3;
    } catch (const StabilityError& e) {
        std::cerr << "aborted: " << e.what() << " (needs dt <= " << e.required_dt << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
