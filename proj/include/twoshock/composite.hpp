#pragma once

#include <array>
#include <vector>

#include "twoshock/waves.hpp"

namespace twoshock {

struct ShiftPair {
    double X1 = 0, X2 = 0;
    double Xdot1 = 0, Xdot2 = 0;

    double X(int i) const { return i == 1 ? X1 : X2; }
    double Xdot(int i) const { return i == 1 ? Xdot1 : Xdot2; }
};

struct WeightSpec {
    double lambda = 0;
};

// min(sqrt(delta1), sqrt(delta2)) / 2
double default_lambda(const TwoShockConfig& cfg);

struct WeightBounds {
    bool above_strengths = false;  // lambda >= K max(delta1, delta2)
    bool below_root = false;       // lambda <= C min(sqrt delta1, sqrt delta2)
    bool below_quarter = false;    // lambda < 1/4
};

WeightBounds check_weight(const TwoShockConfig& cfg, const WeightSpec& w, double K = 10.0,
                          double C = 1.0);

// One wave sampled at a point: traveling coordinate and profile derivatives.
struct WaveSample {
    double v = 0, dv = 0, d2v = 0;
    double dL = 0, dR = 0;  // v - left endpoint, v - right endpoint
};

// Everything the reference composite provides at one (t, x).
struct CompositePoint {
    std::array<WaveSample, 2> wave;
    double v = 0, u = 0, h = 0;
    double vx = 0, vxx = 0, ux = 0, uxx = 0;
};

class Composite {
public:
    explicit Composite(const TwoShockConfig& cfg, const ProfileOptions& opt = {});
    Composite(const TwoShockConfig& cfg, ShockProfile p1, ShockProfile p2);

    const TwoShockConfig& config() const { return cfg_; }
    const GasLaw& law() const { return cfg_.law; }
    const ShockProfile& profile(int i) const { return i == 1 ? p1_ : p2_; }

    double xi(int i, double t, double x, const ShiftPair& s) const;

    CompositePoint eval(double t, double x, const ShiftPair& s) const;
    StatePoint state(double t, double x, const ShiftPair& s) const;
    // (v, h) form of the composite
    StatePoint state_vh(double t, double x, const ShiftPair& s) const;

    // a_i and (a_i)_x at a sample of wave i
    double weight_i(int i, const WaveSample& w, const WeightSpec& spec) const;
    double weight_i_x(int i, const WaveSample& w, const WeightSpec& spec) const;
    double weight_a(double t, double x, const ShiftPair& s, const WeightSpec& spec) const;

    // Interval in x where wave i differs from its endpoints.
    std::array<double, 2> support(int i, double t, const ShiftPair& s) const;

private:
    TwoShockConfig cfg_;
    ShockProfile p1_, p2_;
};

// phi1 = 1 left of (X1+sigma1 t)/2, 0 right of (X2+sigma2 t)/2, linear between; phi2 = 1 - phi1.
std::array<double, 2> cutoffs(const TwoShockConfig& cfg, const ShiftPair& s, double t, double x);
std::array<double, 2> cutoff_knots(const TwoShockConfig& cfg, const ShiftPair& s, double t);

struct InteractionFields {
    std::vector<double> E1, E2, E3;
};

double interaction_E1(const Composite& c, const CompositePoint& q);
double interaction_E2(const Composite& c, const CompositePoint& q);
double interaction_E3(const Composite& c, const CompositePoint& q);

InteractionFields interaction_errors(const Composite& c, const ShiftPair& s, double t,
                                     const std::vector<double>& x);

}  // namespace twoshock
