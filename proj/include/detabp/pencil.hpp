#pragma once

#include <cstddef>
#include <vector>

#include "detabp/grid.hpp"
#include "detabp/linalg.hpp"
#include "detabp/linform.hpp"

namespace detabp {

// Square matrix of affine-linear forms; its determinant is the represented
// polynomial.
class pencil {
 public:
  pencil(std::size_t s, int nvars, field_spec f);

  std::size_t size() const { return entries_.rows(); }
  int nvars() const { return nvars_; }
  const field_spec& field() const { return field_; }

  linform& at(std::size_t i, std::size_t j) { return entries_.at(i, j); }
  const linform& at(std::size_t i, std::size_t j) const { return entries_.at(i, j); }
  const grid<linform>& entries() const { return entries_; }

  scalar_matrix constant_part() const;

  bool operator==(const pencil& b) const {
    return nvars_ == b.nvars_ && field_ == b.field_ && entries_ == b.entries_;
  }

 private:
  int nvars_;
  field_spec field_;
  grid<linform> entries_;
};

struct rregularity_report {
  std::size_t s = 0;
  std::size_t constant_rank = 0;
  std::size_t corank = 0;           // r = s - rank of the constant part
  bool regular = false;             // corank == 1
};

rregularity_report constant_rank(const pencil& p);

// Pencil with constant part diag(0,...,0,1,...,1), corank-many zeros first,
// obtained by determinant-preserving constant row/column operations.
struct normal_form_pencil {
  pencil p;
  std::size_t r = 0;  // corank, always >= 1
};

// Throws constant_part_invertible when the constant part has full rank.
normal_form_pencil normal_form(const pencil& p);

// The four blocks of a normal form: top-left r x r, top-right r x m,
// bottom-left m x r, and d with bottom-right = I - d (m = s - r). All four
// have homogeneous-linear entries by construction of the normal form.
struct pencil_blocks {
  grid<linform> a, b, c, d;
};

pencil_blocks blocks(const normal_form_pencil& nf);

scalar pencil_eval_det(const pencil& p, const std::vector<scalar>& point);

}  // namespace detabp
