#include "twoshock/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

namespace twoshock {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    if (v == "auto") return 0.0;
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::string check_shape(const std::string& key, const std::string& v) {
    if (v == "zero" || v == "gaussian" || v == "bump") return v;
    throw ConfigError("key '" + key + "': shape must be zero, gaussian or bump");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <class T>
Setter num(T RunConfig::*m) {
    return [m](RunConfig& c, const std::string& k, const std::string& v) {
        if constexpr (std::is_same_v<T, double>)
            c.*m = to_double(k, v);
        else
            c.*m = to_long(k, v);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> m = {
        {"gamma", num(&RunConfig::gamma)},
        {"v_plus", num(&RunConfig::v_plus)},
        {"u_plus", num(&RunConfig::u_plus)},
        {"delta1", num(&RunConfig::delta1)},
        {"delta2", num(&RunConfig::delta2)},
        {"lambda",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.lambda = v == "auto" ? -1.0 : to_double(k, v);
         }},
        {"weight_K", num(&RunConfig::weight_K)},
        {"weight_C", num(&RunConfig::weight_C)},
        {"x_left", num(&RunConfig::x_left)},
        {"x_right", num(&RunConfig::x_right)},
        {"dx", num(&RunConfig::dx)},
        {"T", num(&RunConfig::T)},
        {"dt_factor", num(&RunConfig::dt_factor)},
        {"frame_interval", num(&RunConfig::frame_interval)},
        {"freeze_shifts",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.freeze_shifts = to_bool(k, v); }},
        {"pert_v_shape",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.pert_v_shape = check_shape(k, v); }},
        {"pert_v_amplitude", num(&RunConfig::pert_v_amplitude)},
        {"pert_v_center", num(&RunConfig::pert_v_center)},
        {"pert_v_width", num(&RunConfig::pert_v_width)},
        {"pert_u_shape",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.pert_u_shape = check_shape(k, v); }},
        {"pert_u_amplitude", num(&RunConfig::pert_u_amplitude)},
        {"pert_u_center", num(&RunConfig::pert_u_center)},
        {"pert_u_width", num(&RunConfig::pert_u_width)},
        {"profile_tol", num(&RunConfig::profile_tol)},
        {"profile_rtol", num(&RunConfig::profile_rtol)},
        {"checkpoint_every", num(&RunConfig::checkpoint_every)},
        {"seed", num(&RunConfig::seed)},
        {"delta0", num(&RunConfig::delta0)},
        {"eps0", num(&RunConfig::eps0)},
    };
    return m;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
    it->second(cfg, key, value);
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(f, base);
}

void validate_basic(const RunConfig& c) {
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(c.gamma > 1.0 && std::isfinite(c.gamma), "gamma must exceed 1");
    need(c.v_plus > 0.0, "v_plus must be positive");
    need(std::isfinite(c.u_plus), "u_plus must be finite");
    need(c.delta0 > 0.0, "delta0 must be positive");
    need(c.delta1 > 0.0 && c.delta1 <= c.delta0, "delta1 must lie in (0, delta0]");
    need(c.delta2 > 0.0 && c.delta2 <= c.delta0, "delta2 must lie in (0, delta0]");
    need(c.lambda == -1.0 || (c.lambda >= 0.0 && c.lambda < 0.25),
         "lambda must lie in [0, 1/4) (or auto)");
    need(c.dx >= 0.0, "dx must be positive (or auto)");
    need(c.T >= 0.0, "T must be positive (or auto)");
    need(c.dt_factor > 0.0 && c.dt_factor <= 0.5, "dt_factor must lie in (0, 0.5]");
    need(c.frame_interval >= 0.0, "frame_interval must be positive (or auto)");
    need(c.pert_v_width > 0.0 && c.pert_u_width > 0.0, "perturbation widths must be positive");
    need(std::abs(c.pert_v_amplitude) <= c.eps0 && std::abs(c.pert_u_amplitude) <= c.eps0,
         "perturbation amplitude exceeds eps0");
    need(c.profile_tol > 0.0 && c.profile_tol < 1e-2, "profile_tol must lie in (0, 1e-2)");
    need(c.profile_rtol > 0.0 && c.profile_rtol < 1e-4, "profile_rtol must lie in (0, 1e-4)");
    need(c.checkpoint_every >= 0, "checkpoint_every must be nonnegative");
    need(c.weight_K >= 0.0 && c.weight_C > 0.0, "weight_K >= 0 and weight_C > 0 required");
    bool auto_domain = c.x_left == 0.0 && c.x_right == 0.0;
    need(auto_domain || c.x_left < c.x_right, "x_left must be below x_right");
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
    auto d = format_double;
    return {
        {"gamma", d(c.gamma)},
        {"v_plus", d(c.v_plus)},
        {"u_plus", d(c.u_plus)},
        {"delta1", d(c.delta1)},
        {"delta2", d(c.delta2)},
        {"lambda", d(c.lambda)},
        {"weight_K", d(c.weight_K)},
        {"weight_C", d(c.weight_C)},
        {"x_left", d(c.x_left)},
        {"x_right", d(c.x_right)},
        {"dx", d(c.dx)},
        {"T", d(c.T)},
        {"dt_factor", d(c.dt_factor)},
        {"frame_interval", d(c.frame_interval)},
        {"freeze_shifts", c.freeze_shifts ? "true" : "false"},
        {"pert_v_shape", c.pert_v_shape},
        {"pert_v_amplitude", d(c.pert_v_amplitude)},
        {"pert_v_center", d(c.pert_v_center)},
        {"pert_v_width", d(c.pert_v_width)},
        {"pert_u_shape", c.pert_u_shape},
        {"pert_u_amplitude", d(c.pert_u_amplitude)},
        {"pert_u_center", d(c.pert_u_center)},
        {"pert_u_width", d(c.pert_u_width)},
        {"profile_tol", d(c.profile_tol)},
        {"profile_rtol", d(c.profile_rtol)},
        {"checkpoint_every", std::to_string(c.checkpoint_every)},
        {"seed", std::to_string(c.seed)},
        {"delta0", d(c.delta0)},
        {"eps0", d(c.eps0)},
    };
}

}  // namespace twoshock
