#include "nldw/radial.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nldw {

namespace {

void require_nonneg(const RadialProfile& rho) {
    for (double v : rho.values)
        if (v < -1e-12) throw std::invalid_argument("radial profile must be nonnegative");
}

}  // namespace

RadialProfile newton_potential_radial(const RadialProfile& rho) {
    require_nonneg(rho);
    const std::size_t n = rho.size();
    std::vector<double> inner(n, 0.0);  // int_0^{r_i} rho t^2 dt
    std::vector<double> outer(n, 0.0);  // int_{r_i}^{inf} rho t dt
    if (n == 0) return rho;

    inner[0] = rho.values[0] * rho.r[0] * rho.r[0] * rho.r[0] / 3.0;  // constant extension on [0, r_0]
    for (std::size_t i = 1; i < n; ++i) {
        const double dr = rho.r[i] - rho.r[i - 1];
        inner[i] = inner[i - 1] + 0.5 * dr * (rho.values[i - 1] * rho.r[i - 1] * rho.r[i - 1] +
                                              rho.values[i] * rho.r[i] * rho.r[i]);
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        const double dr = rho.r[i + 1] - rho.r[i];
        outer[i] = outer[i + 1] +
                   0.5 * dr * (rho.values[i] * rho.r[i] + rho.values[i + 1] * rho.r[i + 1]);
    }
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i)
        phi[i] = 4.0 * std::numbers::pi * (inner[i] / rho.r[i] + outer[i]);
    return RadialProfile(rho.r, std::move(phi));
}

double radial_mass(const RadialProfile& rho) {
    require_nonneg(rho);
    const std::size_t n = rho.size();
    if (n == 0) return 0.0;
    double acc = rho.values[0] * rho.r[0] * rho.r[0] * rho.r[0] / 3.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double dr = rho.r[i] - rho.r[i - 1];
        acc += 0.5 * dr * (rho.values[i - 1] * rho.r[i - 1] * rho.r[i - 1] +
                           rho.values[i] * rho.r[i] * rho.r[i]);
    }
    return 4.0 * std::numbers::pi * acc;
}

NewtonBoundReport newton_bound_check(const RadialProfile& rho) {
    NewtonBoundReport rep;
    if (rho.size() == 0) return rep;
    const RadialProfile phi = newton_potential_radial(rho);
    rep.mass = radial_mass(rho);
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double v = phi.values[i] - rep.mass / rho.r[i];
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.at_radius = rho.r[i];
        }
    }
    return rep;
}

}  // namespace nldw
