#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twoshock {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key = value run description. Zero (or "auto") on the keys marked auto selects
// the documented default once the wave data are known.
struct RunConfig {
    double gamma = 5.0 / 3.0;
    double v_plus = 1.0;
    double u_plus = 0.0;
    double delta1 = 0.1;
    double delta2 = 0.1;

    double lambda = -1.0;    // auto (negative): min(sqrt delta_i) / 2
    double weight_K = 10.0;  // lower bound lambda >= K max delta (reported)
    double weight_C = 1.0;   // upper bound lambda <= C min sqrt delta (enforced)

    double x_left = 0.0, x_right = 0.0;  // auto: symmetric, see domain_half_width
    double dx = 0.0;                     // auto: 0.02 / max delta
    double T = 0.0;                      // auto: 50 / min delta
    double dt_factor = 0.4;              // dt = dt_factor * min(dx^2 min v, dx / c_max)
    double frame_interval = 0.0;         // auto: T / 500
    bool freeze_shifts = false;

    std::string pert_v_shape = "gaussian";
    double pert_v_amplitude = 0.01;
    double pert_v_center = 0.0;
    double pert_v_width = 10.0;
    std::string pert_u_shape = "zero";
    double pert_u_amplitude = 0.0;
    double pert_u_center = 0.0;
    double pert_u_width = 10.0;

    double profile_tol = 1e-6;
    double profile_rtol = 1e-10;
    long checkpoint_every = 0;  // frames between checkpoints, 0 = off
    long seed = 12345;

    double delta0 = 0.2;  // admissible strength bound
    double eps0 = 0.02;   // admissible perturbation amplitude bound
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys and malformed values throw.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Checks that do not need the wave data.
void validate_basic(const RunConfig& cfg);

// All keys with their current values, in a fixed order, floats at 17 significant digits.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

std::string format_double(double x);

}  // namespace twoshock
