#pragma once

#include <stdexcept>

namespace twoshock {

// Thrown when a thermodynamic argument leaves its domain (v <= 0, gamma <= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// gamma-law gas p(v) = b v^-gamma with b = mu = 1.
struct GasLaw {
    double gamma = 5.0 / 3.0;
    double b = 1.0;
    double mu = 1.0;

    explicit GasLaw(double g = 5.0 / 3.0);
};

struct StatePoint {
    double v = 1.0;
    double u = 0.0;
};

double pressure(const GasLaw& law, double v);
double dpressure(const GasLaw& law, double v);
double d2pressure(const GasLaw& law, double v);
// v such that p(v) = p; inverse of the pressure law.
double volume_from_pressure(const GasLaw& law, double p);

double internal_energy(const GasLaw& law, double v);

// p(v|w) = p(v) - p(w) - p'(w)(v - w)
double rel_pressure(const GasLaw& law, double v, double w);
// Q(v|w) = Q(v) - Q(w) - Q'(w)(v - w), Q' = -p
double rel_internal(const GasLaw& law, double v, double w);

// |u - ubar|^2 / 2 + Q(v|vbar)
double rel_entropy(const GasLaw& law, const StatePoint& U, const StatePoint& Ubar);

// Unchecked kernels for hot loops; callers guarantee v > 0.
inline double pressure_fast(double gamma, double v);
inline double rel_internal_fast(double gamma, double v, double w);
inline double rel_pressure_fast(double gamma, double v, double w);

}  // namespace twoshock

#include <cmath>

namespace twoshock {

inline double pressure_fast(double gamma, double v) { return std::pow(v, -gamma); }

inline double rel_internal_fast(double gamma, double v, double w) {
    // Q(v) - Q(w) + p(w)(v - w)
    double qv = std::pow(v, 1.0 - gamma) / (gamma - 1.0);
    double qw = std::pow(w, 1.0 - gamma) / (gamma - 1.0);
    return qv - qw + std::pow(w, -gamma) * (v - w);
}

inline double rel_pressure_fast(double gamma, double v, double w) {
    double pw = std::pow(w, -gamma);
    return std::pow(v, -gamma) - pw + gamma * pw / w * (v - w);
}

}  // namespace twoshock
