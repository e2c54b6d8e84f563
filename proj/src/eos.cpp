#include "twoshock/eos.hpp"

#include <cmath>
#include <string>

namespace twoshock {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive, got " + std::to_string(v));
}

}  // namespace

GasLaw::GasLaw(double g) : gamma(g) {
    if (!(g > 1.0)) throw DomainError("gamma must exceed 1, got " + std::to_string(g));
}

double pressure(const GasLaw& law, double v) {
    require_positive(v, "specific volume");
    return std::pow(v, -law.gamma);
}

double dpressure(const GasLaw& law, double v) {
    require_positive(v, "specific volume");
    return -law.gamma * std::pow(v, -law.gamma - 1.0);
}

double d2pressure(const GasLaw& law, double v) {
    require_positive(v, "specific volume");
    return law.gamma * (law.gamma + 1.0) * std::pow(v, -law.gamma - 2.0);
}

double volume_from_pressure(const GasLaw& law, double p) {
    require_positive(p, "pressure");
    return std::pow(p, -1.0 / law.gamma);
}

double internal_energy(const GasLaw& law, double v) {
    require_positive(v, "specific volume");
    return std::pow(v, 1.0 - law.gamma) / (law.gamma - 1.0);
}

double rel_pressure(const GasLaw& law, double v, double w) {
    return pressure(law, v) - pressure(law, w) - dpressure(law, w) * (v - w);
}

double rel_internal(const GasLaw& law, double v, double w) {
    return internal_energy(law, v) - internal_energy(law, w) + pressure(law, w) * (v - w);
}

double rel_entropy(const GasLaw& law, const StatePoint& U, const StatePoint& Ubar) {
    double du = U.u - Ubar.u;
    return 0.5 * du * du + rel_internal(law, U.v, Ubar.v);
}

}  // namespace twoshock
