#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twoshock/functionals.hpp"
#include "twoshock/scenario.hpp"

namespace twoshock {

struct CheckRecord {
    std::string name;
    bool passed = false;
    std::vector<std::pair<std::string, double>> values;  // fitted constants, measured quantities
    std::string detail;
};

class Report {
public:
    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void merge(const Report& other);
    const std::vector<CheckRecord>& records() const { return records_; }
    bool passed() const;
    std::string json() const;
    std::string text() const;

private:
    std::vector<CheckRecord> records_;
};

struct SweepSpec {
    std::vector<double> gammas{5.0 / 3.0};
    std::vector<double> deltas{0.025, 0.05, 0.1, 0.2};
    // includes a strongly asymmetric pair
    std::vector<std::pair<double, double>> pairs{{0.1, 0.1}, {0.2, 0.02}};
    double v_plus = 1.0;
    long seed = 12345;
    int samples = 1000;
};

// Tail regressions, decay-rate proportionality, second-derivative ratio, anchor slope,
// first-integral identity, inflection count and re-anchoring invariance.
Report check_lemma_profiles(const SweepSpec& sweep);

// Quadratic bounds of Q(v|w), p(v|w), Lipschitz bound of p, and the three small-gap bounds,
// evaluated in 50-digit arithmetic.
Report check_relative_quantities(const SweepSpec& sweep);

// Weighted Poincare inequality on random trigonometric polynomials and on f(y) = y.
Report check_poincare_random(long seed, int samples);

// Algebraic identities on frames of a short perturbed run, plus zero-perturbation fixed points.
Report check_exact_identities(const RunConfig& base, const SweepSpec& sweep);

// Collects Poincare slacks of the localized perturbations w_1, w_2 every `every` frames.
class PoincareMonitor {
public:
    PoincareMonitor(const Scenario& sc, long every = 10) : sc_(sc), every_(every) {}
    void operator()(long frame_index, const FieldState& s, const ShiftPair& X);
    CheckRecord record(const std::string& label) const;

private:
    const Scenario& sc_;
    long every_;
    long checked_ = 0;
    double min_slack_ = 0;
    double max_lhs_ = 0;
    bool first_ = true;
};

// Windowed-maximum decay of sup |v - vt| and |Xdot_i|, separation after t0, sublinear shifts.
struct TheoremFactors {
    double sup_perturbation = 0, xdot1 = 0, xdot2 = 0;
};
Report check_theorem_behavior(const std::vector<DiagnosticsFrame>& frames, const Scenario& sc,
                              const std::string& label, TheoremFactors* factors = nullptr);
Report check_resolution_drift(const TheoremFactors& a, const TheoremFactors& b,
                              const std::string& label, double tolerance = 0.10);

// Log-linear fits of the seven interaction quantities over [T/4, T].
Report check_separation_lemmas(const std::vector<DiagnosticsFrame>& frames, const Scenario& sc,
                               const std::string& label);

// Same seven fits on a synthetic setup with equal (zero) speeds and frozen shifts; the decay
// checks are expected to fail there.
std::vector<DiagnosticsFrame> negative_control_frames(const Scenario& sc, int count);
Report check_negative_control(const Scenario& sc);

// Relative residual of the weighted relative entropy identity and its refinement order.
Report check_identity_audit(const std::vector<DiagnosticsFrame>& base, double dx_base,
                            const std::vector<DiagnosticsFrame>& fine, double dx_fine,
                            const std::string& label);

}  // namespace twoshock
