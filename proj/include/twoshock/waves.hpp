#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twoshock/eos.hpp"

namespace twoshock {

// End states, intermediate state and shock data of a 1-shock/2-shock pair.
struct TwoShockConfig {
    GasLaw law;
    double v_minus = 0, u_minus = 0;
    double v_m = 0, u_m = 0;
    double v_plus = 0, u_plus = 0;
    double sigma1 = 0, sigma2 = 0;
    double delta1 = 0, delta2 = 0;
};

class NoTwoShockSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sigma = -sqrt(-(p(vR)-p(vL))/(vR-vL)) for family 1, + for family 2.
double shock_speed(const GasLaw& law, double vL, double vR, int family);

TwoShockConfig construct_states(const GasLaw& law, double v_plus, double u_plus,
                                double delta1, double delta2);

struct IntermediateState {
    double v_m = 0;
    double u_m = 0;
    double residual = 0;
};

IntermediateState intermediate_state(const GasLaw& law, const StatePoint& U_minus,
                                     const StatePoint& U_plus);

// Largest of |-sigma dv - du| and |-sigma du + dp| over both shocks.
double rh_residual(const TwoShockConfig& cfg);

// Left/right states and speed of one shock family.
struct ShockFamily {
    int family = 1;
    double sigma = 0;
    double vL = 0, uL = 0, vR = 0, uR = 0;
    double delta = 0;
};

ShockFamily shock_family(const TwoShockConfig& cfg, int family);

// dv/dxi = -(v/sigma) [sigma^2 (v - vL) + p(v) - p(vL)]
double profile_rhs(const GasLaw& law, double v, const ShockFamily& f);
// d/dv of profile_rhs
double profile_rhs_dv(const GasLaw& law, double v, const ShockFamily& f);

// Closed-form profile quantities at one traveling-frame point.
// v - vL and v - vR are carried separately so tail offsets keep full relative precision.
struct ProfilePoint {
    double v = 0, dv = 0, d2v = 0;
    double dL = 0, dR = 0;
};

// Natural logs of |v'|, |v - vL|, |v - vR|; finite far beyond the range of double.
struct LogMagnitudes {
    double dv = 0, dL = 0, dR = 0;
};

class ShockProfile {
public:
    ShockProfile(const GasLaw& law, const ShockFamily& fam, std::vector<double> xi,
                 std::vector<double> v, bool truncated, double achieved_tol);

    int family() const { return fam_.family; }
    double sigma() const { return fam_.sigma; }
    double delta() const { return fam_.delta; }
    const ShockFamily& shock() const { return fam_; }
    const GasLaw& law() const { return law_; }
    const std::vector<double>& xi_table() const { return xi_; }
    const std::vector<double>& v_table() const { return v_; }
    double xi_min() const { return xi_.front(); }
    double xi_max() const { return xi_.back(); }
    bool truncated() const { return truncated_; }
    double achieved_tol() const { return achieved_tol_; }

    // Outside the table the profile follows the linearized exponential approach to
    // its endpoint, continuing from the table edge.
    ProfilePoint eval(double xi) const;
    LogMagnitudes log_magnitudes(double xi) const;
    // Decay rates of the linearized ODE at the endpoints (kappa_left > 0 > kappa_right).
    double kappa_left() const { return kL_; }
    double kappa_right() const { return kR_; }
    // Value, slope and pressure only; the hot path of the shift integrals.
    void value_slope(double xi, double& v, double& dv, double& p) const;
    double v(double xi) const { return eval(xi).v; }
    double dv(double xi) const { return eval(xi).dv; }
    double u(double xi) const;
    double du(double xi) const { return -fam_.sigma * dv(xi); }
    double h(double xi) const;
    // sigma h' = p(v)'
    double dh(double xi) const;

    // Throws std::out_of_range outside the table.
    double second_derivative(double xi) const;

private:
    GasLaw law_;
    ShockFamily fam_;
    std::vector<double> xi_, v_;
    std::vector<double> slope_;  // limited knot slopes of the Hermite interpolant
    bool truncated_ = false;
    double achieved_tol_ = 0;
    double kL_ = 0, kR_ = 0;
    double pL_ = 0;

    double interpolate(double xi) const;
};

struct ProfileOptions {
    double xi_max = 0;        // 0 selects 400/delta
    double tol = 1e-6;        // endpoint proximity in units of delta
    double rtol = 1e-10;
    double anchor_xi = 0.0;   // traveling-frame coordinate of the midpoint value
};

ShockProfile solve_profile(const TwoShockConfig& cfg, int family,
                           const ProfileOptions& opt = {});

double profile_second_derivative(const ShockProfile& profile, double xi);

}  // namespace twoshock
