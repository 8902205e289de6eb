#include "nldw/grid.hpp"

#include <cmath>

namespace nldw {

RadialProfile::RadialProfile(std::vector<double> r_, std::vector<double> v_)
    : r(std::move(r_)), values(std::move(v_)) {
    if (r.size() != values.size()) throw std::invalid_argument("RadialProfile: length mismatch");
    if (!r.empty() && !(r.front() > 0.0)) throw std::invalid_argument("RadialProfile: r[0] must be > 0");
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (!(r[i] < r[i + 1])) throw std::invalid_argument("RadialProfile: radii must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("RadialProfile: non-finite value");
}

void ModelParams::validate() const {
    if (!(Z >= 0.0)) throw std::invalid_argument("ModelParams: Z must be >= 0");
    if (!(M > 0.0)) throw std::invalid_argument("ModelParams: M must be > 0");
    if (!(tol_grad > 0.0) || !(tol_mass > 0.0)) throw std::invalid_argument("ModelParams: tolerances must be > 0");
    if (max_iters < 1) throw std::invalid_argument("ModelParams: max_iters must be >= 1");
    if (!(tau0 > 0.0)) throw std::invalid_argument("ModelParams: tau0 must be > 0");
    if (!(escape_radius_fraction > 0.0) || !(escape_radius_fraction < 1.0))
        throw std::invalid_argument("ModelParams: escape_radius_fraction must be in (0,1)");
    Grid3D check(grid.n, grid.h);  // revalidates grid invariants
    (void)check;
}

RadialProfile uniform_radii(double r_max, std::size_t count) {
    if (count == 0 || !(r_max > 0.0)) throw std::invalid_argument("uniform_radii: bad arguments");
    std::vector<double> r(count), v(count, 0.0);
    for (std::size_t i = 0; i < count; ++i)
        r[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(count);
    return RadialProfile(std::move(r), std::move(v));
}

}  // namespace nldw
