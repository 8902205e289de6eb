#pragma once

#include "nldw/grid.hpp"

namespace nldw {

// Radial two-piece partition of unity used by the localization estimates:
//   chi_i(x) = g_i((nu . theta(x) - ell) / s),  i = 1, 2,
// with g1(t) = cos(pi/2 clamp(t,0,1)), g2 = sqrt(1 - g1^2),
// theta(x) = x eta(|x|), eta a cubic smoothstep that is 0 on [0, r] and 1 on
// [(1+lambda) r, inf), and nu the exterior unit normal of {|x| <= r}, so
// nu . theta(x) = |x| eta(|x|).
struct PartitionSpec {
    double r = 1.0;
    double lambda = 0.5;  // in (0, 1/2]
    double s = 1.0;
    double ell = 0.0;

    PartitionSpec(double r_, double lambda_, double s_, double ell_ = 0.0);

    double g1(double t) const;
    double g2(double t) const;
    double eta(double rho) const;
    double radial_theta(double rho) const;  // nu . theta = rho eta(rho)
    double chi1(double rho) const;
    double chi2(double rho) const;

    // dense-sampled bounds, reported alongside certificates
    double sup_grad_theta() const;     // sup |grad theta| (operator norm)
    double c_theta() const;            // lambda * sup |grad theta|
    double sup_g_deriv_sq() const;     // sup (g1'^2 + g2'^2)
    double sup_grad_chi_sq_sum() const;  // sum_i ||grad chi_i||_inf^2
    double eq22_constant() const;      // sup_g_deriv_sq * c_theta^2

    ScalarField3D chi1_field(const Grid3D& g) const;
    ScalarField3D chi2_field(const Grid3D& g) const;
};

}  // namespace nldw
