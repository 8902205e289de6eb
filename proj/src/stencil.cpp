#include "nldw/stencil.hpp"

#include "nldw/summation.hpp"

#include <array>
#include <stdexcept>

namespace nldw {

namespace {

struct RowEntry {
    int col;
    double coeff;
};

// Coefficients of row i of the 1D difference operator, scaled by 1/h.
// Returns the number of entries written (2 or 4).
inline int row_coeffs(int n, int i, double inv_h, std::array<RowEntry, 4>& e) {
    if (i == 0) {
        e[0] = {0, -inv_h};
        e[1] = {1, inv_h};
        return 2;
    }
    if (i == n - 1) {
        e[0] = {n - 2, -inv_h};
        e[1] = {n - 1, inv_h};
        return 2;
    }
    if (i == 1 || i == n - 2) {
        e[0] = {i - 1, -0.5 * inv_h};
        e[1] = {i + 1, 0.5 * inv_h};
        return 2;
    }
    const double c = inv_h / 12.0;
    e[0] = {i - 2, c};
    e[1] = {i - 1, -8.0 * c};
    e[2] = {i + 1, 8.0 * c};
    e[3] = {i + 2, -c};
    return 4;
}

template <typename Body>
void for_each_line(const Grid3D& g, int axis, Body&& body) {
    const int n = g.n;
    const std::size_t stride = axis == 0 ? static_cast<std::size_t>(n) * n
                             : axis == 1 ? static_cast<std::size_t>(n)
                                         : 1;
    // iterate over all lines along `axis`
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::size_t base;
            if (axis == 0)
                base = g.index(0, a, b);
            else if (axis == 1)
                base = g.index(a, 0, b);
            else
                base = g.index(a, b, 0);
            body(base, stride);
        }
}

}  // namespace

void apply_gradient_axis(const ScalarField3D& u, int axis, std::vector<double>& out) {
    const Grid3D& g = u.grid;
    if (axis < 0 || axis > 2) throw std::invalid_argument("apply_gradient_axis: bad axis");
    out.assign(g.size(), 0.0);
    const double inv_h = 1.0 / g.h;
    const int n = g.n;
    // difference-of-neighbors form so constants are annihilated exactly
    for_each_line(g, axis, [&](std::size_t base, std::size_t stride) {
        const auto at = [&](int i) { return u.values[base + i * stride]; };
        out[base] = inv_h * (at(1) - at(0));
        out[base + stride] = 0.5 * inv_h * (at(2) - at(0));
        for (int i = 2; i < n - 2; ++i)
            out[base + i * stride] = (inv_h / 12.0) * (at(i - 2) - at(i + 2)) +
                                     (8.0 * inv_h / 12.0) * (at(i + 1) - at(i - 1));
        out[base + (n - 2) * stride] = 0.5 * inv_h * (at(n - 1) - at(n - 3));
        out[base + (n - 1) * stride] = inv_h * (at(n - 1) - at(n - 2));
    });
}

void apply_gradient_axis_adjoint(const std::vector<double>& v, const Grid3D& g, int axis,
                                 std::vector<double>& acc) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("apply_gradient_axis_adjoint: bad axis");
    if (v.size() != g.size() || acc.size() != g.size())
        throw std::invalid_argument("apply_gradient_axis_adjoint: size mismatch");
    const double inv_h = 1.0 / g.h;
    const int n = g.n;
    for_each_line(g, axis, [&](std::size_t base, std::size_t stride) {
        std::array<RowEntry, 4> e;
        for (int i = 0; i < n; ++i) {
            const double vi = v[base + i * stride];
            if (vi == 0.0) continue;
            const int m = row_coeffs(n, i, inv_h, e);
            for (int t = 0; t < m; ++t) acc[base + e[t].col * stride] += e[t].coeff * vi;
        }
    });
}

double gradient_energy(const ScalarField3D& u) {
    std::vector<double> comp;
    double total = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        apply_gradient_axis(u, axis, comp);
        total += pairwise_sum_indexed(0, comp.size(), [&](std::size_t i) { return comp[i] * comp[i]; });
    }
    return 0.5 * u.grid.cell_volume() * total;
}

ScalarField3D grad_adjoint_grad(const ScalarField3D& u) {
    ScalarField3D out(u.grid);
    std::vector<double> comp;
    for (int axis = 0; axis < 3; ++axis) {
        apply_gradient_axis(u, axis, comp);
        apply_gradient_axis_adjoint(comp, u.grid, axis, out.values);
    }
    out.nonneg = false;
    return out;
}

}  // namespace nldw
