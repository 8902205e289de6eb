#pragma once

#include "nldw/grid.hpp"

#include <array>

namespace nldw {

// h^3 * sum(values). Equals the L1 norm for nonnegative fields.
double mass(const ScalarField3D& u);

// (h^3 * sum |u|^p)^(1/p), p >= 1.
double lp_norm(const ScalarField3D& u, double p);

// Field value at an arbitrary point, zero outside the box.
double sample_trilinear(const ScalarField3D& u, double x, double y, double z);
double sample_tricubic(const ScalarField3D& u, double x, double y, double z);

// Spherical averages over the radii of `radii` (its values are ignored).
// Quadrature: tensor Gauss-Legendre(cos theta) x uniform(phi) angular design,
// 288 nodes, tricubic sampling of u.
RadialProfile spherical_average(const ScalarField3D& u, const RadialProfile& radii);

// Exact L2 projection onto {u >= 0, integral = M}: max(0, u - mu*) with mu*
// found by bisection to 1e-12. Output is flagged nonneg.
ScalarField3D project_mass_nonneg(const ScalarField3D& u, double M, double tol_mass = 1e-8);

// Mass-preserving dilation u -> sigma^3 u(sigma x), trilinear resampling.
// Throws if the dilated support leaks through the box boundary (detected as a
// mass change beyond 1e-3 relative).
ScalarField3D dilate(const ScalarField3D& u, double sigma);

struct TwoClusterResult {
    ScalarField3D field;
    double overlap = 0.0;      // h^3 sum |u1| * |shifted u2|
    double overlap_tol = 0.0;  // 1e-8 * min(m1, m2)
    bool within_tol = true;
};

// u1(.) + u2(. + offset); offset must be a lattice vector (integer multiples
// of h). Overlap beyond tolerance is recorded as a warning on the result.
TwoClusterResult two_cluster(const ScalarField3D& u1, const ScalarField3D& u2,
                             const std::array<double, 3>& offset);

// Mass on {|x| >= r} divided by total mass.
double outer_mass_fraction(const ScalarField3D& u, double r);

// Trial-state constructors used by the flow drivers and test fixtures.
ScalarField3D gaussian_field(const Grid3D& g, double inv_width_sq = 1.0,
                             const std::array<double, 3>& center = {0.0, 0.0, 0.0});
// Smooth droplet: height * S((R - |x - c|) / edge) with S a cubic smoothstep.
ScalarField3D smooth_ball_field(const Grid3D& g, double radius, double height,
                                double edge_width,
                                const std::array<double, 3>& center = {0.0, 0.0, 0.0});

}  // namespace nldw
