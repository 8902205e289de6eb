#pragma once

#include "nldw/coulomb.hpp"
#include "nldw/grid.hpp"
#include "nldw/stencil.hpp"

#include <string>
#include <vector>

namespace nldw {

// The four terms of the energy plus their sum:
//   gradient    (1/2) int |grad u|^2
//   double_well (1/2) int u^2 (1-u)^2
//   attraction  -Z int u / |x|          (signed, <= 0 for nonneg u)
//   coulomb     D(u)
struct EnergyBreakdown {
    double gradient = 0.0;
    double double_well = 0.0;
    double attraction = 0.0;
    double coulomb = 0.0;
    double total = 0.0;

    std::string to_json() const;
};

double double_well(const ScalarField3D& u);
double attraction(const ScalarField3D& u, double Z, const NucleusWeights& w);

EnergyBreakdown total_energy(const ScalarField3D& u, double Z, const CoulombSolver& solver);

// Same breakdown when the potential of u is already available (saves the FFT
// pair inside descent loops).
EnergyBreakdown total_energy_with_potential(const ScalarField3D& u, double Z,
                                            const CoulombSolver& solver,
                                            const ScalarField3D& phi);

// g = D^T D u + u - 3u^2 + 2u^3 - Z w + potential(u); the directional
// derivative of total_energy along phi equals h^3 <g, phi> exactly.
ScalarField3D first_variation(const ScalarField3D& u, double Z, const CoulombSolver& solver);
ScalarField3D first_variation_with_potential(const ScalarField3D& u, double Z,
                                             const CoulombSolver& solver,
                                             const ScalarField3D& phi);

// E_Z(sigma u) assembled from the moments of u:
//   sigma * att + sigma^2 [grad + D + (1/2)(S2 - 2 sigma S3 + sigma^2 S4)],
// which matches total_energy(sigma u) identically at the discrete level.
double sigma_scaling(const ScalarField3D& u, double Z, double sigma, const CoulombSolver& solver);

struct DilationCurvePoint {
    double sigma = 0.0;
    double energy = 0.0;  // E_{Z=0}(dilate(u, sigma))
};

// E_{Z=0} along the mass-preserving dilation family, sigma decreasing.
std::vector<DilationCurvePoint> dilation_energy_limit(const ScalarField3D& u,
                                                      std::vector<double> sigmas,
                                                      const CoulombSolver& solver);

}  // namespace nldw
