#include "nldw/fields.hpp"

#include "nldw/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nldw {

double mass(const ScalarField3D& u) {
    return u.grid.cell_volume() * pairwise_sum(u.values);
}

double lp_norm(const ScalarField3D& u, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto& v = u.values;
    double s;
    if (p == 1.0) {
        s = pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return std::abs(v[i]); });
    } else if (p == 2.0) {
        s = pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return v[i] * v[i]; });
    } else {
        s = pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return std::pow(std::abs(v[i]), p); });
    }
    return std::pow(u.grid.cell_volume() * s, 1.0 / p);
}

namespace {

// Map a physical coordinate to the fractional cell-center index.
inline double to_index(const Grid3D& g, double x) {
    return (x + 0.5 * g.extent()) / g.h - 0.5;
}

inline double cubic_lagrange(double t, const double f[4]) {
    // 4-point Lagrange interpolation at local coordinate t in [0,1] between
    // the middle pair of nodes (-1, 0, 1, 2).
    const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    return w0 * f[0] + w1 * f[1] + w2 * f[2] + w3 * f[3];
}

}  // namespace

double sample_trilinear(const ScalarField3D& u, double x, double y, double z) {
    const Grid3D& g = u.grid;
    const double fi = to_index(g, x), fj = to_index(g, y), fk = to_index(g, z);
    const int i0 = static_cast<int>(std::floor(fi));
    const int j0 = static_cast<int>(std::floor(fj));
    const int k0 = static_cast<int>(std::floor(fk));
    const double tx = fi - i0, ty = fj - j0, tz = fk - k0;
    double acc = 0.0;
    for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj)
            for (int dk = 0; dk < 2; ++dk) {
                const int i = i0 + di, j = j0 + dj, k = k0 + dk;
                if (i < 0 || i >= g.n || j < 0 || j >= g.n || k < 0 || k >= g.n) continue;
                const double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty) * (dk ? tz : 1.0 - tz);
                acc += w * u.values[g.index(i, j, k)];
            }
    return acc;
}

double sample_tricubic(const ScalarField3D& u, double x, double y, double z) {
    const Grid3D& g = u.grid;
    const double fi = to_index(g, x), fj = to_index(g, y), fk = to_index(g, z);
    int i0 = static_cast<int>(std::floor(fi));
    int j0 = static_cast<int>(std::floor(fj));
    int k0 = static_cast<int>(std::floor(fk));
    if (fi < -1.0 || fi > g.n || fj < -1.0 || fj > g.n || fk < -1.0 || fk > g.n) return 0.0;
    // local coordinates before clamping the stencil to the grid
    double tx = fi - i0, ty = fj - j0, tz = fk - k0;
    const auto clamp_base = [&](int& b, double& t) {
        if (b < 1) { t -= (1 - b); b = 1; }
        if (b > g.n - 3) { t += (b - (g.n - 3)); b = g.n - 3; }
    };
    clamp_base(i0, tx);
    clamp_base(j0, ty);
    clamp_base(k0, tz);
    double plane[4], line[4], col[4];
    for (int di = -1; di <= 2; ++di) {
        for (int dj = -1; dj <= 2; ++dj) {
            for (int dk = -1; dk <= 2; ++dk)
                col[dk + 1] = u.values[g.index(i0 + di, j0 + dj, k0 + dk)];
            line[dj + 1] = cubic_lagrange(tz, col);
        }
        plane[di + 1] = cubic_lagrange(ty, line);
    }
    return cubic_lagrange(tx, plane);
}

RadialProfile spherical_average(const ScalarField3D& u, const RadialProfile& radii) {
    const Grid3D& g = u.grid;
    for (double r : radii.r)
        if (r > g.inradius())
            throw std::invalid_argument("spherical_average: radius exceeds box inradius");

    // fixed product design: 12 Gauss-Legendre nodes in cos(theta) x 24 in phi
    constexpr int n_mu = 12, n_phi = 24;
    static const std::array<double, 12> mu_nodes = {
        -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
        -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
        0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
        0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
    static const std::array<double, 12> mu_weights = {
        0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
        0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
        0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
        0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

    std::vector<double> out(radii.size(), 0.0);
    for (std::size_t ir = 0; ir < radii.size(); ++ir) {
        const double r = radii.r[ir];
        double acc = 0.0;
        for (int a = 0; a < n_mu; ++a) {
            const double mu = mu_nodes[a];
            const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            double ring = 0.0;
            for (int b = 0; b < n_phi; ++b) {
                const double phi = 2.0 * std::numbers::pi * (b + 0.5) / n_phi;
                ring += sample_tricubic(u, r * s * std::cos(phi), r * s * std::sin(phi), r * mu);
            }
            acc += mu_weights[a] * ring / n_phi;
        }
        out[ir] = 0.5 * acc;  // GL weights integrate d(mu) over [-1,1] to total 2
    }
    return RadialProfile(radii.r, std::move(out));
}

ScalarField3D project_mass_nonneg(const ScalarField3D& u, double M, double tol_mass) {
    if (!(M > 0.0)) throw std::invalid_argument("project_mass_nonneg: M must be > 0");
    const double h3 = u.grid.cell_volume();
    const double volume = h3 * static_cast<double>(u.size());
    const auto clipped_mass = [&](double mu) {
        return h3 * pairwise_sum_indexed(0, u.size(), [&](std::size_t i) {
                   return std::max(u.values[i] - mu, 0.0);
               });
    };
    const auto [mn, mx] = std::minmax_element(u.values.begin(), u.values.end());
    double lo = *mn - M / volume;  // guarantees mass(lo) >= M
    double hi = *mx;               // mass(hi) = 0 < M
    if (!(clipped_mass(lo) >= M))
        throw std::runtime_error("project_mass_nonneg: bisection bracket failed");
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    while (hi - lo > 1e-12 * scale) {
        const double mid = 0.5 * (lo + hi);
        (clipped_mass(mid) >= M ? lo : hi) = mid;
    }
    // Newton polish on the active linear piece: the clipped mass is piecewise
    // linear in mu with slope -h^3 * #active, so one or two corrections land
    // the mass exactly (up to summation roundoff) even when the bisection
    // interval is limited by the ulp of a large mu scale.
    double mu = lo;
    for (int it = 0; it < 8; ++it) {
        const double m_cur = clipped_mass(mu);
        if (std::abs(m_cur - M) <= 0.25 * tol_mass * M) break;
        std::size_t active = 0;
        for (double v : u.values) active += v > mu;
        if (active == 0) break;
        mu += (m_cur - M) / (h3 * static_cast<double>(active));
    }
    ScalarField3D out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out.values[i] = std::max(u.values[i] - mu, 0.0);
    out.nonneg = true;
    if (std::abs(mass(out) - M) > tol_mass * M)
        throw std::runtime_error("project_mass_nonneg: mass tolerance not met");
    return out;
}

ScalarField3D dilate(const ScalarField3D& u, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("dilate: sigma must be > 0");
    const Grid3D& g = u.grid;
    ScalarField3D out(g);
    const double s3 = sigma * sigma * sigma;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                out.values[g.index(i, j, k)] =
                    s3 * sample_trilinear(u, sigma * g.coord(i), sigma * g.coord(j), sigma * g.coord(k));
    out.nonneg = u.nonneg;
    // |sigma^3 u(sigma x)| integrates to the L1 norm of u; a deficit beyond
    // the resampling tolerance means the dilated support left the box.
    const double l1 = lp_norm(u, 1.0);
    if (std::abs(lp_norm(out, 1.0) - l1) > 1e-3 * l1)
        throw std::domain_error("dilate: support leaves the box at this sigma");
    return out;
}

TwoClusterResult two_cluster(const ScalarField3D& u1, const ScalarField3D& u2,
                             const std::array<double, 3>& offset) {
    if (!(u1.grid == u2.grid)) throw std::invalid_argument("two_cluster: grid mismatch");
    const Grid3D& g = u1.grid;
    int shift[3];
    for (int a = 0; a < 3; ++a) {
        const double steps = offset[a] / g.h;
        shift[a] = static_cast<int>(std::llround(steps));
        if (std::abs(steps - shift[a]) > 1e-9)
            throw std::invalid_argument("two_cluster: offset must be a lattice vector");
    }
    // u2(x + offset): sample index i + shift
    TwoClusterResult res;
    res.field = u1;
    res.field.nonneg = u1.nonneg && u2.nonneg;
    double overlap = 0.0, m2_in = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const int i2 = i + shift[0], j2 = j + shift[1], k2 = k + shift[2];
                if (i2 < 0 || i2 >= g.n || j2 < 0 || j2 >= g.n || k2 < 0 || k2 >= g.n) continue;
                const double v2 = u2.values[g.index(i2, j2, k2)];
                const std::size_t id = g.index(i, j, k);
                overlap += std::abs(u1.values[id]) * std::abs(v2);
                m2_in += std::abs(v2);
                res.field.values[id] += v2;
            }
    // the shifted support must stay inside the box: |u2| mass conserved
    const double m2_all = pairwise_sum_indexed(0, u2.size(), [&](std::size_t i) {
        return std::abs(u2.values[i]);
    });
    if (std::abs(m2_in - m2_all) > 1e-12 * std::max(1.0, m2_all))
        throw std::invalid_argument("two_cluster: shifted support leaves the box");

    const double m1 = lp_norm(u1, 1.0), m2 = g.cell_volume() * m2_all;
    res.overlap = g.cell_volume() * overlap;
    res.overlap_tol = 1e-8 * std::min(m1, m2);
    res.within_tol = res.overlap <= res.overlap_tol || m2 == 0.0;
    return res;
}

double outer_mass_fraction(const ScalarField3D& u, double r) {
    const Grid3D& g = u.grid;
    const double r2 = r * r;
    double outer = 0.0, total = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
                const double v = u.values[g.index(i, j, k)];
                total += v;
                if (x * x + y * y + z * z >= r2) outer += v;
            }
    if (total <= 0.0) throw std::invalid_argument("outer_mass_fraction: zero total mass");
    return std::clamp(outer / total, 0.0, 1.0);
}

ScalarField3D gaussian_field(const Grid3D& g, double inv_width_sq,
                             const std::array<double, 3>& center) {
    ScalarField3D out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double dx = g.coord(i) - center[0];
                const double dy = g.coord(j) - center[1];
                const double dz = g.coord(k) - center[2];
                out.values[g.index(i, j, k)] = std::exp(-inv_width_sq * (dx * dx + dy * dy + dz * dz));
            }
    out.nonneg = true;
    return out;
}

ScalarField3D smooth_ball_field(const Grid3D& g, double radius, double height,
                                double edge_width, const std::array<double, 3>& center) {
    ScalarField3D out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double dx = g.coord(i) - center[0];
                const double dy = g.coord(j) - center[1];
                const double dz = g.coord(k) - center[2];
                const double rr = std::sqrt(dx * dx + dy * dy + dz * dz);
                const double t = std::clamp((radius - rr) / edge_width, 0.0, 1.0);
                out.values[g.index(i, j, k)] = height * t * t * (3.0 - 2.0 * t);
            }
    out.nonneg = height >= 0.0;
    return out;
}

}  // namespace nldw
