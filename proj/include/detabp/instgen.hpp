#pragma once

#include <cstdint>
#include <vector>

#include "detabp/abp.hpp"
#include "detabp/pencil.hpp"
#include "detabp/rng.hpp"

namespace detabp {

// b = c = (x_1..x_n) around d-2 diagonal layers: computes sum_i x_i^d,
// width n, size (d-1)n, homogeneous.
abp power_sum_abp(int n, int d, const field_spec& f);

// Homogeneous program for the k-th elementary symmetric polynomial. States
// at layer j are the last chosen index, so every edge carries a variable;
// width is n-k+1. For k = 1 the result is the degenerate width-1 form
// (sum x_i)*(1), which is not homogeneous in the label sense.
abp elem_sym_abp(int n, int k, const field_spec& f);

// Homogeneous program with d-1 layers of width w and random homogeneous
// labels: each variable appears with probability 1/2; rational coefficients
// are nonzero in [-3, 3], prime-field ones uniform nonzero. Deterministic
// in the seed.
abp random_hom_abp(int n, int d, std::size_t w, std::uint64_t seed, const field_spec& f);

// Block-diagonal direct sum; the determinant is the product of the base
// determinants and the corank is the number of blocks. Every base pencil
// must have corank exactly 1.
pencil synth_r_regular_pencil(const std::vector<pencil>& base);

// Random pencil whose constant part has the requested rank: the constant
// part is P * diag(1,..,1,0,..,0) * Q for random unimodular P, Q, and the
// linear parts are random at sparsity 1/2. Exercises the normal form across
// mixed coranks.
pencil random_mixed_pencil(std::size_t s, int n, std::size_t rank0, std::uint64_t seed,
                           const field_spec& f);

// Shared label sampler: each variable present with probability 1/2,
// coefficients as in random_hom_abp.
linform random_hom_linform(rng& gen, int n, const field_spec& f);

}  // namespace detabp
