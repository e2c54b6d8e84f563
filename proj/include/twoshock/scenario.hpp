#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twoshock/config.hpp"
#include "twoshock/functionals.hpp"
#include "twoshock/pde.hpp"

namespace twoshock {

// A validated run: wave data, grid, time step and frame stride resolved from a RunConfig.
struct Scenario {
    RunConfig config;  // auto keys replaced by their resolved values
    TwoShockConfig states;
    std::shared_ptr<const Composite> composite;
    WeightSpec weight;
    Grid grid;
    double dt = 0;
    long stride = 1;
    PerturbationSpec perturbation;
    std::vector<std::string> warnings;

    // Resolved config followed by derived quantities.
    std::vector<std::pair<std::string, std::string>> echo() const;
    long frame_count() const;  // floor(T / (stride dt)) + 1
};

// resolution_scale divides dx; dt and stride follow.
Scenario build_scenario(RunConfig cfg, double resolution_scale = 1.0);

struct SimulateOptions {
    std::string out_dir;      // frames.csv and checkpoint.txt; empty writes nothing
    bool resume = false;      // continue from out_dir/checkpoint.txt
    long halt_after_frames = 0;
    bool keep_frames = true;
    // Called with every emitted frame's state (h refreshed) and shifts.
    std::function<void(long frame_index, const FieldState&, const ShiftPair&)> on_state;
};

struct SimulationResult {
    std::vector<DiagnosticsFrame> frames;  // frames emitted by this call
    RunResult run;
    FieldState final_state;
    ShiftVec X{0.0, 0.0};
    long final_step = 0;
};

// Throws PositivityError after writing what was emitted so far.
SimulationResult simulate(const Scenario& sc, const SimulateOptions& opt = {});

// Header lines "# key = value", a column row, then one row per frame at 17 digits.
std::string csv_header(const Scenario& sc);
std::string csv_row(const DiagnosticsFrame& f);

struct Checkpoint {
    long step = 0;
    FieldState state;
    ShiftVec X{0.0, 0.0};
    std::vector<std::pair<std::string, std::string>> echo;
};

// Text checkpoint: config echo, step, t, shifts, then rows (x, v, u, h) in hex floats.
void write_checkpoint(const std::string& path, const Scenario& sc, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);

// Profile table of one family: xi, v, v', u, h.
void write_profile_table(const std::string& path, const Scenario& sc, int family);

}  // namespace twoshock
