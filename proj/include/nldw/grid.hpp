#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nldw {

// Uniform cubic grid on [-L/2, L/2]^3 with cell-centered samples
//   x_i = -L/2 + (i + 1/2) h,   i = 0..n-1,  L = n h.
// n is even, so the origin (the nucleus site) falls on a cell corner and no
// sample coincides with the 1/|x| singularity.
struct Grid3D {
    int n = 0;
    double h = 0.0;

    Grid3D() = default;
    Grid3D(int n_, double h_) : n(n_), h(h_) {
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid3D: n must be even and >= 8");
        if (!(h > 0.0)) throw std::invalid_argument("Grid3D: h must be positive");
    }

    double extent() const { return n * h; }
    double inradius() const { return 0.5 * extent(); }
    double cell_volume() const { return h * h * h; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    double coord(int i) const { return (i + 0.5) * h - 0.5 * extent(); }

    bool operator==(const Grid3D&) const = default;
};

// Real scalar field sampled on a Grid3D, row-major (k fastest).
struct ScalarField3D {
    Grid3D grid;
    std::vector<double> values;
    bool nonneg = false;

    ScalarField3D() = default;
    explicit ScalarField3D(const Grid3D& g, double fill = 0.0)
        : grid(g), values(g.size(), fill), nonneg(fill >= 0.0) {}

    double& at(int i, int j, int k) { return values[grid.index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[grid.index(i, j, k)]; }
    std::size_t size() const { return values.size(); }
};

// Radial samples: strictly increasing radii, r[0] > 0.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> values;

    RadialProfile() = default;
    RadialProfile(std::vector<double> r_, std::vector<double> v_);
    std::size_t size() const { return r.size(); }
};

// Model parameters shared by the energy, flow and verification drivers.
struct ModelParams {
    double Z = 1.0;                       // nuclear charge
    double M = 0.5;                       // prescribed mass
    Grid3D grid{32, 0.375};
    double tol_grad = 1e-5;               // KKT residual tolerance
    double tol_mass = 1e-8;               // relative mass tolerance
    int max_iters = 5000;
    double tau0 = 0.1;                    // initial step
    double escape_radius_fraction = 0.8;  // escape radius = fraction * L/2

    void validate() const;
    double u_floor() const {              // active-set floor
        const double L = grid.extent();
        return 1e-8 * M / (L * L * L);
    }
};

// Evenly spaced radii covering (0, r_max], for spherical averages and tests.
RadialProfile uniform_radii(double r_max, std::size_t count);

}  // namespace nldw
