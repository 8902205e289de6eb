#pragma once

#include "nldw/grid.hpp"

namespace nldw {

// Radial Newton potential of a nonnegative density profile rho(r):
//   Phi(r) = (4 pi / r) int_0^r rho t^2 dt + 4 pi int_r^inf rho t dt,
// cumulative trapezoid on the given radii; rho is extended by its first value
// on [0, r_0] and by zero beyond the last radius.
RadialProfile newton_potential_radial(const RadialProfile& rho);

// Total mass 4 pi int rho t^2 dt under the same quadrature rule.
double radial_mass(const RadialProfile& rho);

struct NewtonBoundReport {
    double max_violation = 0.0;  // max over radii of Phi(r) - m/r
    double mass = 0.0;
    double at_radius = 0.0;
};

// Checks the bound Phi(r) <= m/r for nonnegative profiles.
NewtonBoundReport newton_bound_check(const RadialProfile& rho);

}  // namespace nldw
