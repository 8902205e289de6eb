#pragma once

#include "nldw/grid.hpp"

#include <vector>

namespace nldw {

// Discrete gradient D used by the energy: fourth-order centered differences
// in the interior, second-order centered one layer in from the faces, and
// first-order one-sided on the faces. Every row annihilates constants.
// The adjoint is assembled from the same row definition, so <Dp, q> equals
// <p, D^T q> to machine precision for arbitrary fields.

// out = D_axis u (same layout as u.values)
void apply_gradient_axis(const ScalarField3D& u, int axis, std::vector<double>& out);

// acc += D_axis^T v
void apply_gradient_axis_adjoint(const std::vector<double>& v, const Grid3D& g, int axis,
                                 std::vector<double>& acc);

// (1/2) h^3 sum_a |D_a u|^2
double gradient_energy(const ScalarField3D& u);

// sum_a D_a^T D_a u  — the discrete -Laplacian matching gradient_energy
ScalarField3D grad_adjoint_grad(const ScalarField3D& u);

}  // namespace nldw
