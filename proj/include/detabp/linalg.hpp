#pragma once

#include <optional>

#include "detabp/field.hpp"
#include "detabp/grid.hpp"

namespace detabp {

using scalar_matrix = grid<scalar>;

scalar_matrix scalar_identity(std::size_t n, const field_spec& f);
scalar_matrix scalar_mat_mul(const scalar_matrix& a, const scalar_matrix& b);

// Row rank by exact Gaussian elimination.
std::size_t matrix_rank(scalar_matrix m);

// Exact determinant by fraction-free (Bareiss) elimination with row pivoting;
// divisions are by previous pivots only, so integer inputs stay integral.
scalar matrix_det(scalar_matrix m, const field_spec& f);

// Exact inverse by Gauss-Jordan; empty when the matrix is singular.
std::optional<scalar_matrix> matrix_inverse(scalar_matrix m, const field_spec& f);

}  // namespace detabp
