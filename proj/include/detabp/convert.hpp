#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detabp/abp.hpp"
#include "detabp/pencil.hpp"
#include "detabp/verify.hpp"

namespace detabp {

// Documented bound constants: the general path asserts
// out_size <= conv_c * d^5 * s and out_size <= conv_c_prime * r^3 * d^2 * s.
inline constexpr std::uint64_t conv_c = 64;
inline constexpr std::uint64_t conv_c_prime = 64;

enum class convert_mode { automatic, force_regular, force_general };

struct conversion_report {
  std::size_t s = 0;
  int d = 0;
  std::size_t r = 0;
  std::string path;  // Regular | General | FullyHomogeneousDirect
  std::size_t out_size = 0;
  std::size_t out_width = 0;
  std::size_t out_layers = 0;
  std::uint64_t bound_size = 0;
  std::uint64_t bound_width = 0;
  std::uint64_t bound_size_rreg = 0;  // the corank-sensitive size bound
  std::uint64_t c = conv_c;
  std::uint64_t c_prime = conv_c_prime;
  double ratio = 0.0;  // out_size / bound_size
};

struct conversion_result {
  abp program;
  conversion_report report;
};

// Width-(s-1) extraction from a corank-1 normal form: boundary rows of the
// off-diagonal blocks around d-2 copies of the homogeneous block, with the
// sign folded into the sink vector. Exact resources: width s-1, size
// (d-1)(s-1), d-2 matrix layers. Output is deliberately unpruned so the
// equalities hold structurally.
abp regular_pencil_to_abp(const normal_form_pencil& nf, int d);

struct vanishing_report {
  bool top_entry_zero = false;      // the 1x1 block is the zero form
  std::vector<bool> series_zero;    // index i: b^T D^i c = 0, for 0 <= i <= d-3
  bool passed = false;
};

// Symbolic check of the corank-1 vanishing constraints; a failure certifies
// that the determinant is not homogeneous of degree d.
vanishing_report check_regular_vanishing(const normal_form_pencil& nf, int d);

// Default truncation index for the power-series tail, and the tighter
// experimental index validated per-instance by symbolic comparison.
inline int default_truncation_index(int d) { return d - 2; }
int tight_truncation_index(int d, std::size_t r);

// The r x r grid whose entry (i,j) is a program computing
// A_ij - sum_{t=0}^{trunc} (B D^t C)_ij; trunc defaults to d-2, trunc = -1
// drops the series entirely. Entry resources: width 1+2(s-r), trunc+2
// vertex layers.
grid<abp> build_w_grid(const normal_form_pencil& nf, int d,
                       std::optional<int> trunc = std::nullopt);

// Full dispatcher. Certifies homogeneity (inferring the degree when absent),
// then routes: degree-1 determinants directly, zero constant part through the
// symbolic-matrix determinant program, corank 1 through the width-(s-1)
// extraction, everything else through the series grid, the determinant
// program of corank size, and degree-component extraction.
conversion_result pencil_to_abp(const pencil& p, std::optional<int> degree = std::nullopt,
                                convert_mode mode = convert_mode::automatic, int trials = 64,
                                std::uint64_t seed = 1);

// Reverse reduction: a program computing f with f(0) = 0 becomes a regular
// pencil of size size(a)+2 with determinant exactly f (adjacency matrix with
// unit diagonal off the source, a unit closing entry, and a sign fix on the
// source row when the matrix-layer count is odd).
pencil abp_to_pencil(const abp& a);

}  // namespace detabp
