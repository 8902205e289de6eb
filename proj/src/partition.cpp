#include "nldw/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nldw {

namespace {
constexpr int kDenseSamples = 200001;
}

PartitionSpec::PartitionSpec(double r_, double lambda_, double s_, double ell_)
    : r(r_), lambda(lambda_), s(s_), ell(ell_) {
    if (!(r > 0.0)) throw std::invalid_argument("PartitionSpec: r must be > 0");
    if (!(lambda > 0.0) || !(lambda <= 0.5))
        throw std::invalid_argument("PartitionSpec: lambda must be in (0, 1/2]");
    if (!(s > 0.0)) throw std::invalid_argument("PartitionSpec: s must be > 0");
    if (ell < 0.0) throw std::invalid_argument("PartitionSpec: ell must be >= 0");
}

double PartitionSpec::g1(double t) const {
    const double c = std::clamp(t, 0.0, 1.0);
    return std::cos(0.5 * std::numbers::pi * c);
}

double PartitionSpec::g2(double t) const {
    const double c = std::clamp(t, 0.0, 1.0);
    return std::sin(0.5 * std::numbers::pi * c);
}

double PartitionSpec::eta(double rho) const {
    const double t = std::clamp((rho - r) / (lambda * r), 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

double PartitionSpec::radial_theta(double rho) const { return rho * eta(rho); }

double PartitionSpec::chi1(double rho) const { return g1((radial_theta(rho) - ell) / s); }

double PartitionSpec::chi2(double rho) const { return g2((radial_theta(rho) - ell) / s); }

double PartitionSpec::sup_grad_theta() const {
    // theta = x eta(|x|): |grad theta| = eta + rho eta' along the radial
    // direction (eta' >= 0), attained inside the transition shell
    const double hi = (1.0 + lambda) * r;
    double sup = 1.0;  // eta = 1, eta' = 0 outside the shell
    for (int i = 0; i < kDenseSamples; ++i) {
        const double rho = r + (hi - r) * i / (kDenseSamples - 1.0);
        const double t = std::clamp((rho - r) / (lambda * r), 0.0, 1.0);
        const double deta = 6.0 * t * (1.0 - t) / (lambda * r);
        sup = std::max(sup, eta(rho) + rho * deta);
    }
    return sup;
}

double PartitionSpec::c_theta() const { return lambda * sup_grad_theta(); }

double PartitionSpec::sup_g_deriv_sq() const {
    const double half_pi = 0.5 * std::numbers::pi;
    double sup = 0.0;
    for (int i = 0; i < kDenseSamples; ++i) {
        const double t = static_cast<double>(i) / (kDenseSamples - 1.0);
        const double d1 = -half_pi * std::sin(half_pi * t);
        const double d2 = half_pi * std::cos(half_pi * t);
        sup = std::max(sup, d1 * d1 + d2 * d2);
    }
    return sup;
}

double PartitionSpec::sup_grad_chi_sq_sum() const {
    // |grad chi_i| = |g_i'(t)| (eta + rho eta') / s with t = (rho eta - ell)/s
    const double half_pi = 0.5 * std::numbers::pi;
    const double hi = (1.0 + lambda) * r + ell + s + 1.0;
    double sup1 = 0.0, sup2 = 0.0;
    for (int i = 0; i < kDenseSamples; ++i) {
        const double rho = hi * i / (kDenseSamples - 1.0);
        const double t = (radial_theta(rho) - ell) / s;
        if (t <= 0.0 || t >= 1.0) continue;
        const double tt = std::clamp((rho - r) / (lambda * r), 0.0, 1.0);
        const double deta = 6.0 * tt * (1.0 - tt) / (lambda * r);
        const double slope = (eta(rho) + rho * deta) / s;
        sup1 = std::max(sup1, half_pi * std::sin(half_pi * t) * slope);
        sup2 = std::max(sup2, half_pi * std::cos(half_pi * t) * slope);
    }
    return sup1 * sup1 + sup2 * sup2;
}

double PartitionSpec::eq22_constant() const {
    const double ct = c_theta();
    return sup_g_deriv_sq() * ct * ct;
}

namespace {

ScalarField3D radial_eval(const Grid3D& g, const PartitionSpec& spec, bool first) {
    ScalarField3D out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
                const double rho = std::sqrt(x * x + y * y + z * z);
                out.values[g.index(i, j, k)] = first ? spec.chi1(rho) : spec.chi2(rho);
            }
    out.nonneg = true;
    return out;
}

}  // namespace

ScalarField3D PartitionSpec::chi1_field(const Grid3D& g) const { return radial_eval(g, *this, true); }

ScalarField3D PartitionSpec::chi2_field(const Grid3D& g) const { return radial_eval(g, *this, false); }

}  // namespace nldw
