#include "detabp/linalg.hpp"

namespace detabp {

scalar_matrix scalar_identity(std::size_t n, const field_spec& f) {
  scalar_matrix m(n, n, scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = scalar::one(f);
  return m;
}

scalar_matrix scalar_mat_mul(const scalar_matrix& a, const scalar_matrix& b) {
  if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix product shapes");
  if (a.rows() == 0 || b.cols() == 0) return scalar_matrix(a.rows(), b.cols(), scalar());
  scalar zero = scalar::zero(a.at(0, 0).field());
  scalar_matrix r(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return r;
}

std::size_t matrix_rank(scalar_matrix m) {
  std::size_t rank = 0;
  // Pivot search is first-nonzero in row-major order among the remaining rows.
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    scalar inv = m.at(rank, col).inv();
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m.at(i, col).is_zero()) continue;
      scalar factor = m.at(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

scalar matrix_det(scalar_matrix m, const field_spec& f) {
  if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return scalar::one(f);
  bool negate = false;
  scalar prev = scalar::one(f);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return scalar::zero(f);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = scalar::zero(f);
    }
    prev = m.at(k, k);
  }
  scalar det = m.at(n - 1, n - 1);
  return negate ? -det : det;
}

std::optional<scalar_matrix> matrix_inverse(scalar_matrix m, const field_spec& f) {
  if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  scalar_matrix inv = scalar_identity(n, f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(col, j), m.at(pivot, j));
        std::swap(inv.at(col, j), inv.at(pivot, j));
      }
    }
    scalar scale = m.at(col, col).inv();
    for (std::size_t j = 0; j < n; ++j) {
      m.at(col, j) *= scale;
      inv.at(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m.at(i, col).is_zero()) continue;
      scalar factor = m.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) -= factor * m.at(col, j);
        inv.at(i, j) -= factor * inv.at(col, j);
      }
    }
  }
  return inv;
}

}  // namespace detabp
