#include "nldw/energy.hpp"

#include "nldw/fields.hpp"
#include "nldw/summation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nldw {

std::string EnergyBreakdown::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"gradient\":" << gradient << ",\"double_well\":" << double_well
       << ",\"attraction\":" << attraction << ",\"coulomb\":" << coulomb
       << ",\"total\":" << total << "}";
    return os.str();
}

double double_well(const ScalarField3D& u) {
    const auto& v = u.values;
    return 0.5 * u.grid.cell_volume() *
           pairwise_sum_indexed(0, v.size(), [&](std::size_t i) {
               const double w = 1.0 - v[i];
               return v[i] * v[i] * w * w;
           });
}

double attraction(const ScalarField3D& u, double Z, const NucleusWeights& w) {
    if (!(Z >= 0.0)) throw std::invalid_argument("attraction: Z must be >= 0");
    if (!(u.grid == w.grid)) throw std::invalid_argument("attraction: grid mismatch");
    if (Z == 0.0) return 0.0;
    return -Z * u.grid.cell_volume() * pairwise_dot(u.values, w.values);
}

EnergyBreakdown total_energy_with_potential(const ScalarField3D& u, double Z,
                                            const CoulombSolver& solver,
                                            const ScalarField3D& phi) {
    EnergyBreakdown b;
    b.gradient = gradient_energy(u);
    b.double_well = double_well(u);
    b.attraction = attraction(u, Z, solver.nucleus_weights());
    b.coulomb = 0.5 * u.grid.cell_volume() * pairwise_dot(u.values, phi.values);
    b.total = b.gradient + b.double_well + b.attraction + b.coulomb;
    return b;
}

EnergyBreakdown total_energy(const ScalarField3D& u, double Z, const CoulombSolver& solver) {
    return total_energy_with_potential(u, Z, solver, solver.potential(u));
}

ScalarField3D first_variation_with_potential(const ScalarField3D& u, double Z,
                                             const CoulombSolver& solver,
                                             const ScalarField3D& phi) {
    ScalarField3D g = grad_adjoint_grad(u);
    const auto& w = solver.nucleus_weights().values;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double v = u.values[i];
        g.values[i] += v - 3.0 * v * v + 2.0 * v * v * v - Z * w[i] + phi.values[i];
    }
    return g;
}

ScalarField3D first_variation(const ScalarField3D& u, double Z, const CoulombSolver& solver) {
    return first_variation_with_potential(u, Z, solver, solver.potential(u));
}

double sigma_scaling(const ScalarField3D& u, double Z, double sigma, const CoulombSolver& solver) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma_scaling: sigma must be >= 0");
    const double h3 = u.grid.cell_volume();
    const auto& v = u.values;
    const double grad = gradient_energy(u);
    const double att = attraction(u, Z, solver.nucleus_weights());
    const double D = solver.repulsion(u, u);
    const double s2 = h3 * pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return v[i] * v[i]; });
    const double s3 = h3 * pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return v[i] * v[i] * v[i]; });
    const double s4 = h3 * pairwise_sum_indexed(0, v.size(), [&](std::size_t i) {
        const double q = v[i] * v[i];
        return q * q;
    });
    return sigma * att +
           sigma * sigma * (grad + D + 0.5 * (s2 - 2.0 * sigma * s3 + sigma * sigma * s4));
}

std::vector<DilationCurvePoint> dilation_energy_limit(const ScalarField3D& u,
                                                      std::vector<double> sigmas,
                                                      const CoulombSolver& solver) {
    for (std::size_t i = 0; i + 1 < sigmas.size(); ++i)
        if (!(sigmas[i] > sigmas[i + 1]))
            throw std::invalid_argument("dilation_energy_limit: sigma list must be decreasing");
    std::vector<DilationCurvePoint> out;
    out.reserve(sigmas.size());
    for (double s : sigmas) {
        const ScalarField3D us = dilate(u, s);
        out.push_back({s, total_energy(us, 0.0, solver).total});
    }
    return out;
}

}  // namespace nldw
