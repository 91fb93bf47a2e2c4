#include "detabp/pencil.hpp"

namespace detabp {

pencil::pencil(std::size_t s, int nvars, field_spec f)
    : nvars_(nvars), field_(f), entries_(s, s, linform(nvars, f)) {
  if (s == 0) fail(errc::invalid_argument, "pencil size must be positive");
  if (nvars < 0) fail(errc::invalid_argument, "negative variable count");
}

scalar_matrix pencil::constant_part() const {
  std::size_t s = size();
  scalar_matrix m(s, s, scalar::zero(field_));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) m.at(i, j) = at(i, j).constant_term();
  }
  return m;
}

rregularity_report constant_rank(const pencil& p) {
  rregularity_report rep;
  rep.s = p.size();
  rep.constant_rank = matrix_rank(p.constant_part());
  rep.corank = rep.s - rep.constant_rank;
  rep.regular = rep.corank == 1;
  return rep;
}

namespace {

void row_scale(pencil& p, std::size_t i, const scalar& c) {
  for (std::size_t j = 0; j < p.size(); ++j) p.at(i, j) = p.at(i, j).scaled(c);
}

// row_i += c * row_k
void row_add(pencil& p, std::size_t i, std::size_t k, const scalar& c) {
  for (std::size_t j = 0; j < p.size(); ++j) p.at(i, j) += p.at(k, j).scaled(c);
}

void col_scale(pencil& p, std::size_t j, const scalar& c) {
  for (std::size_t i = 0; i < p.size(); ++i) p.at(i, j) = p.at(i, j).scaled(c);
}

void col_add(pencil& p, std::size_t j, std::size_t k, const scalar& c) {
  for (std::size_t i = 0; i < p.size(); ++i) p.at(i, j) += p.at(i, k).scaled(c);
}

}  // namespace

normal_form_pencil normal_form(const pencil& input) {
  pencil p = input;
  std::size_t s = p.size();
  const field_spec& f = p.field();
  // delta accumulates the determinant of all transfer matrices applied, so
  // det(p) = delta * det(input) at every step.
  scalar delta = scalar::one(f);

  std::size_t rank = 0;
  for (std::size_t k = 0; k < s; ++k) {
    // First nonzero constant in row-major order over the untouched corner.
    std::size_t pi = s, pj = s;
    for (std::size_t i = k; i < s && pi == s; ++i) {
      for (std::size_t j = k; j < s; ++j) {
        if (!p.at(i, j).constant_term().is_zero()) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == s) break;
    if (pi != k) {
      for (std::size_t j = 0; j < s; ++j) std::swap(p.at(k, j), p.at(pi, j));
      delta = -delta;
    }
    if (pj != k) {
      for (std::size_t i = 0; i < s; ++i) std::swap(p.at(i, k), p.at(i, pj));
      delta = -delta;
    }
    scalar pivot_inv = p.at(k, k).constant_term().inv();
    row_scale(p, k, pivot_inv);
    delta *= pivot_inv;
    for (std::size_t i = 0; i < s; ++i) {
      if (i == k) continue;
      scalar c = p.at(i, k).constant_term();
      if (!c.is_zero()) row_add(p, i, k, -c);
    }
    for (std::size_t j = 0; j < s; ++j) {
      if (j == k) continue;
      scalar c = p.at(k, j).constant_term();
      if (!c.is_zero()) col_add(p, j, k, -c);
    }
    ++rank;
  }

  std::size_t r = s - rank;
  if (r == 0) fail(errc::constant_part_invertible, "constant part has full rank");

  // Move the zero diagonal entries to the front by one simultaneous row and
  // column permutation; applying the same permutation twice leaves the
  // determinant unchanged.
  std::vector<std::size_t> old_of_new(s);
  for (std::size_t i = 0; i < rank; ++i) old_of_new[r + i] = i;
  for (std::size_t i = 0; i < r; ++i) old_of_new[i] = rank + i;
  pencil q(s, p.nvars(), f);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) q.at(i, j) = p.at(old_of_new[i], old_of_new[j]);
  }

  // det(q) = delta * det(input); cancel delta on row 0, whose entries have
  // zero constant term, so the diagonal constant part is preserved.
  if (!delta.is_one()) row_scale(q, 0, delta.inv());
  return normal_form_pencil{q, r};
}

pencil_blocks blocks(const normal_form_pencil& nf) {
  std::size_t s = nf.p.size();
  std::size_t r = nf.r;
  std::size_t m = s - r;
  const field_spec& f = nf.p.field();
  int nv = nf.p.nvars();
  pencil_blocks out{grid<linform>(r, r, linform(nv, f)), grid<linform>(r, m, linform(nv, f)),
                    grid<linform>(m, r, linform(nv, f)), grid<linform>(m, m, linform(nv, f))};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out.a.at(i, j) = nf.p.at(i, j);
    for (std::size_t j = 0; j < m; ++j) out.b.at(i, j) = nf.p.at(i, r + j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < r; ++j) out.c.at(i, j) = nf.p.at(r + i, j);
    for (std::size_t j = 0; j < m; ++j) {
      linform ident = i == j ? linform::constant(nv, scalar::one(f)) : linform(nv, f);
      out.d.at(i, j) = ident - nf.p.at(r + i, r + j);
    }
  }
  return out;
}

scalar pencil_eval_det(const pencil& p, const std::vector<scalar>& point) {
  std::size_t s = p.size();
  scalar_matrix m(s, s, scalar::zero(p.field()));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) m.at(i, j) = p.at(i, j).eval(point);
  }
  return matrix_det(std::move(m), p.field());
}

}  // namespace detabp
