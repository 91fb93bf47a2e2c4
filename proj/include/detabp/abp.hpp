#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "detabp/grid.hpp"
#include "detabp/linalg.hpp"
#include "detabp/linform.hpp"
#include "detabp/poly.hpp"

namespace detabp {

// Layered algebraic branching program b^T M_1 ... M_k c with affine-linear
// labels. Vertex layers have widths w_0..w_k; size counts all layer vertices
// (the scalar source/sink implied by the two contractions are not counted);
// layer_count() counts the k+2 edge-label layers b, M_1..M_k, c.
class abp {
 public:
  abp(int nvars, field_spec f, std::vector<std::size_t> widths, std::vector<linform> b,
      std::vector<linform> c, std::vector<grid<linform>> mats);

  static abp zero(int nvars, const field_spec& f);

  int nvars() const { return nvars_; }
  const field_spec& field() const { return field_; }
  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t num_mats() const { return mats_.size(); }
  std::size_t layer_count() const { return mats_.size() + 2; }
  std::size_t size() const;
  std::size_t width() const;
  const std::vector<linform>& b() const { return b_; }
  const std::vector<linform>& c() const { return c_; }
  const grid<linform>& mat(std::size_t t) const { return mats_[t]; }

  // All labels in b, c, and the matrices have zero constant term. A
  // homogeneous program with k matrices computes zero or degree k+2 exactly.
  bool is_homogeneous() const;

  scalar eval(const std::vector<scalar>& point) const;
  poly to_poly() const;

  bool operator==(const abp& o) const {
    return nvars_ == o.nvars_ && field_ == o.field_ && widths_ == o.widths_ && b_ == o.b_ &&
           c_ == o.c_ && mats_ == o.mats_;
  }

 private:
  int nvars_;
  field_spec field_;
  std::vector<std::size_t> widths_;
  std::vector<linform> b_, c_;
  std::vector<grid<linform>> mats_;
};

struct scalar_abp {
  scalar value;
};

// Extends the program to exactly k matrix layers by collapsing c into a
// column matrix and appending a constant-1 width-1 corridor. Padding
// introduces constant labels, so it breaks homogeneity.
abp pad_to_mats(const abp& a, std::size_t k);

// Parallel combination computing poly(a1) + poly(a2); shorter input is
// corridor-padded when the matrix layer counts differ.
abp abp_sum(const abp& a1, const abp& a2);

// Removes vertices unreachable from the source or not reaching the sink
// through nonzero labels. Collapses to the canonical zero program when
// nothing survives.
abp prune_dead(const abp& a);

// Replaces each outer variable y_{ij} (index i*m+j) by the polynomial of
// inner(i,j): every edge labeled c0 + sum c_{ij} y_{ij} becomes a gadget of
// parallel paths, one constant path for c0 plus one scaled copy of inner(i,j)
// per nonzero coefficient, re-layered so the result is a legal layered ABP.
abp abp_substitute(const abp& outer, const grid<abp>& inner);

// Affine specialization: outer variable y_{ij} is replaced by the linear
// form entries(i,j); labels compose directly, the layer structure is kept.
abp substitute_linear(const abp& outer, const grid<linform>& entries);

// Clow-sequence determinant program over the n*n variables x_{ij} (index
// i*n+j): computes the signed determinant, width <= n^2, exactly n+1
// edge-label layers (n-1 matrices plus the two contractions). Clow-closing
// edges carry factor -1 and the final contraction carries (-1)^n.
abp det_abp(std::size_t n, const field_spec& f);

// The 2m x 2m block transfer matrix [[I, I], [0, D]]; its (d-1)-th power
// holds sum_{t=0}^{d-2} D^t as the top-right block.
grid<linform> series_block_matrix(const grid<linform>& d_block);

// Entry (i,j) computes (sum_{t=0}^{d-2} D^t)_{ij} through the block power
// [[I, I], [0, D]]^(d-1): width <= 2m, d-1 matrix layers.
grid<abp> geometric_series_grid(const grid<linform>& d_block, int d);

struct hom_component_result {
  std::optional<abp> program;          // degree >= 1
  std::optional<scalar_abp> constant;  // degree == 0
  // Resources of the (vertex, degree)-splitting stage, before constant-run
  // absorption and pruning; exactly the (d+1)-factor of the input.
  std::size_t split_size = 0;
  std::size_t split_width = 0;
};

// Extracts the degree-d homogeneous component of poly(a). For d >= 2 the
// result has homogeneous labels and exactly d edge-label layers: output
// layers are indexed by accumulated degree, states are (input layer, vertex)
// pairs, and constant runs between consecutive linear steps are absorbed
// into the labels. d == 1 yields the width-1 program (component form)*(1),
// d == 0 the scalar wrapper.
hom_component_result hom_component_abp(const abp& a, int d);

}  // namespace detabp
