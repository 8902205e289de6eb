#include "nldw/coulomb.hpp"

#include "nldw/fields.hpp"
#include "nldw/summation.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nldw {

namespace {

// 48-point Gauss-Legendre nodes/weights on [0,1], generated by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int m) : x(m), w(m) {
        for (int i = 0; i < m; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = m * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = m * (t * p1 - p0) / (t * t - 1.0);
            x[i] = 0.5 * (1.0 + t);
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

// J = integral over [0,1]^2 of 1/sqrt(1+u^2+v^2); the corner-box integral of
// 1/|y| over [0,1]^3 equals (3/2) J by the Duffy split.
double corner_box_J() {
    static const GaussLegendre gl(48);
    double s = 0.0;
    for (std::size_t a = 0; a < gl.x.size(); ++a)
        for (std::size_t b = 0; b < gl.x.size(); ++b)
            s += gl.w[a] * gl.w[b] / std::sqrt(1.0 + gl.x[a] * gl.x[a] + gl.x[b] * gl.x[b]);
    return s;
}

double cell_average_inv_r(double cx, double cy, double cz, double h) {
    static const GaussLegendre gl(16);
    double s = 0.0;
    for (std::size_t a = 0; a < gl.x.size(); ++a) {
        const double x = cx + h * (gl.x[a] - 0.5);
        for (std::size_t b = 0; b < gl.x.size(); ++b) {
            const double y = cy + h * (gl.x[b] - 0.5);
            for (std::size_t c = 0; c < gl.x.size(); ++c) {
                const double z = cz + h * (gl.x[c] - 0.5);
                s += gl.w[a] * gl.w[b] * gl.w[c] / std::sqrt(x * x + y * y + z * z);
            }
        }
    }
    return s;
}

// calibration probe: Gaussian wide enough for the grid, narrow enough for the box
double probe_inv_width_sq(const Grid3D& g) {
    const double sigma = std::max(4.0 * g.h, g.extent() / 16.0);
    return 1.0 / (sigma * sigma);
}

double gaussian_potential_exact(double a, double r) {
    const double m = std::pow(std::numbers::pi / a, 1.5);
    if (r < 1e-12) return m * 2.0 * std::sqrt(a / std::numbers::pi);
    return m * std::erf(std::sqrt(a) * r) / r;
}

}  // namespace

NucleusWeights::NucleusWeights(const Grid3D& g) : grid(g), values(g.size()) {
    const double h = g.h;
    const double corner_avg = 1.5 * corner_box_J() / h;  // average over a cell with the origin at a corner
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
                const double m = std::max({std::abs(x), std::abs(y), std::abs(z)});
                double w;
                if (m < 0.6 * h)
                    w = corner_avg;
                else if (m < 2.6 * h)
                    w = cell_average_inv_r(x, y, z, h);
                else
                    w = 1.0 / std::sqrt(x * x + y * y + z * z);
                values[g.index(i, j, k)] = w;
            }

    // lattice-deficit calibration on the analytic probe
    const double a = probe_inv_width_sq(g);
    probe_width = 1.0 / std::sqrt(a);
    const ScalarField3D probe = gaussian_field(g, a);
    const double measured = g.cell_volume() * pairwise_dot(probe.values, values);
    const double exact = 2.0 * std::numbers::pi / a;
    gamma = (exact - measured) / (h * h);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
                if (std::max({std::abs(x), std::abs(y), std::abs(z)}) < 0.6 * h)
                    values[g.index(i, j, k)] += gamma / (8.0 * h);
            }
}

struct CoulombSolver::Plans {
    int m = 0;  // padded size per axis
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Plans(int m_) : m(m_) {
        const std::size_t nreal = static_cast<std::size_t>(m) * m * m;
        const std::size_t ncplx = static_cast<std::size_t>(m) * m * (m / 2 + 1);
        double* re = fftw_alloc_real(nreal);
        fftw_complex* cx = fftw_alloc_complex(ncplx);
        fwd = fftw_plan_dft_r2c_3d(m, m, m, re, cx, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(m, m, m, cx, re, FFTW_ESTIMATE);
        fftw_free(cx);
        fftw_free(re);
        if (!fwd || !bwd) throw std::runtime_error("CoulombSolver: FFTW planning failed");
    }
    ~Plans() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

namespace {

struct FftwReal {
    double* p;
    explicit FftwReal(std::size_t n) : p(fftw_alloc_real(n)) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwReal() { fftw_free(p); }
};

struct FftwComplex {
    fftw_complex* p;
    explicit FftwComplex(std::size_t n) : p(fftw_alloc_complex(n)) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwComplex() { fftw_free(p); }
};

}  // namespace

CoulombSolver::CoulombSolver(const Grid3D& grid)
    : grid_(grid), nucleus_(grid), plans_(std::make_unique<Plans>(2 * grid.n)) {
    const int n = grid_.n;
    const int m = 2 * n;
    const double h = grid_.h;
    const std::size_t nreal = static_cast<std::size_t>(m) * m * m;
    const std::size_t ncplx = static_cast<std::size_t>(m) * m * (m / 2 + 1);

    c0_ = 3.0 * corner_box_J();  // cell average of 1/|x| over the centered unit cell

    FftwReal kern(nreal);
    for (int i = 0; i < m; ++i) {
        const double dx = ((i + n) % m - n) * h;
        for (int j = 0; j < m; ++j) {
            const double dy = ((j + n) % m - n) * h;
            for (int k = 0; k < m; ++k) {
                const double dz = ((k + n) % m - n) * h;
                const double r2 = dx * dx + dy * dy + dz * dz;
                kern.p[(static_cast<std::size_t>(i) * m + j) * m + k] =
                    r2 > 0.0 ? 1.0 / std::sqrt(r2) : c0_ / h;
            }
        }
    }
    FftwComplex spec(ncplx);
    fftw_execute_dft_r2c(plans_->fwd, kern.p, spec.p);
    kernel_hat_.resize(ncplx);
    for (std::size_t i = 0; i < ncplx; ++i) kernel_hat_[i] = spec.p[i][0];  // kernel is even: spectrum is real

    // lattice-deficit calibration: the deficit of the plain-sampled kernel is
    // kappa * h^2 * u(x) to leading order; shifting the singular cell value by
    // -kappa/h (a constant shift of the whole spectrum) cancels it.
    const double a = probe_inv_width_sq(grid_);
    probe_width_ = 1.0 / std::sqrt(a);
    const ScalarField3D probe = gaussian_field(grid_, a);
    const ScalarField3D raw = potential(probe);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t id = grid_.index(i, j, k);
                const double uv = probe.values[id];
                if (uv < 1e-2) continue;  // probe core only
                const double x = grid_.coord(i), y = grid_.coord(j), z = grid_.coord(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                acc += (raw.values[id] - gaussian_potential_exact(a, r)) / (h * h * uv);
                ++cnt;
            }
    kappa_ = acc / static_cast<double>(cnt);
    for (double& s : kernel_hat_) s -= kappa_ / h;
}

CoulombSolver::~CoulombSolver() = default;

void CoulombSolver::convolve(const std::vector<double>& in, std::vector<double>& out) const {
    const int n = grid_.n;
    const int m = 2 * n;
    const std::size_t nreal = static_cast<std::size_t>(m) * m * m;
    const std::size_t ncplx = static_cast<std::size_t>(m) * m * (m / 2 + 1);

    FftwReal pad(nreal);
    std::fill(pad.p, pad.p + nreal, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = &in[grid_.index(i, j, 0)];
            double* dst = &pad.p[(static_cast<std::size_t>(i) * m + j) * m];
            for (int k = 0; k < n; ++k) dst[k] = src[k];
        }
    FftwComplex spec(ncplx);
    fftw_execute_dft_r2c(plans_->fwd, pad.p, spec.p);
    const double scale = grid_.cell_volume() / static_cast<double>(nreal);
    for (std::size_t i = 0; i < ncplx; ++i) {
        const double s = kernel_hat_[i] * scale;
        spec.p[i][0] *= s;
        spec.p[i][1] *= s;
    }
    fftw_execute_dft_c2r(plans_->bwd, spec.p, pad.p);
    out.resize(grid_.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = &pad.p[(static_cast<std::size_t>(i) * m + j) * m];
            double* dst = &out[grid_.index(i, j, 0)];
            for (int k = 0; k < n; ++k) dst[k] = src[k];
        }
}

ScalarField3D CoulombSolver::potential(const ScalarField3D& u) const {
    if (!(u.grid == grid_)) throw std::invalid_argument("CoulombSolver::potential: grid mismatch");
    ScalarField3D phi(grid_);
    convolve(u.values, phi.values);
    phi.nonneg = false;
    return phi;
}

double CoulombSolver::repulsion(const ScalarField3D& f, const ScalarField3D& g) const {
    if (!(f.grid == grid_) || !(g.grid == grid_))
        throw std::invalid_argument("CoulombSolver::repulsion: grid mismatch");
    const ScalarField3D phi = potential(g);
    return 0.5 * grid_.cell_volume() * pairwise_dot(f.values, phi.values);
}

}  // namespace nldw
