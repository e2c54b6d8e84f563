#pragma once

#include <vector>

namespace twoshock::refsol {

// Forced smooth solution on [0, 2pi], evolved to T with a source term; max error of (v, u).
double manufactured_error(int n, double T = 0.5);

// One viscous shock of strength delta started on its own profile; max |v - vt| at time T.
double traveling_wave_error(double dx, double delta, double T, int family = 2);

}  // namespace twoshock::refsol
