#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "detabp/abp.hpp"
#include "detabp/pencil.hpp"

namespace detabp {

// One side of an identity test: a pencil (standing for its determinant), a
// branching program, or a plain polynomial.
using subject = std::variant<pencil, abp, poly>;

int subject_nvars(const subject& s);
const field_spec& subject_field(const subject& s);
// Conservative total-degree cap: pencil size, program layer count, or the
// polynomial's own degree. Used for error bounds and degree inference.
int subject_degree_cap(const subject& s);
scalar subject_eval(const subject& s, const std::vector<scalar>& point);
// Full symbolic expansion; meant for desk-scale inputs.
poly subject_poly(const subject& s);
// Heuristic: symbolic expansion is cheap enough to prefer over sampling.
bool subject_symbolic_scale(const subject& s);

struct verdict {
  std::string outcome;  // equal | not-equal | certified | refuted | pass | fail
  std::optional<std::vector<scalar>> witness;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string per_trial_error_bound;  // "d/p" for sampling-based verdicts
  std::optional<int> degree;          // confirmed or inferred degree
  std::optional<std::pair<int, int>> witness_degrees;  // two distinct term degrees
  bool identically_zero = false;      // subject found to be the zero polynomial
  bool ok() const { return outcome == "equal" || outcome == "certified" || outcome == "pass"; }
};

// Exact determinant by cofactor expansion memoized on column subsets.
poly symbolic_det(const pencil& p);

// Schwartz-Zippel equality at uniform points. Rational inputs are mapped
// into the default prime field first (falling back to a second prime when a
// denominator is divisible by the modulus); prime inputs are used as-is.
verdict pit_equal(const subject& lhs, const subject& rhs, int trials, std::uint64_t seed);

// Exact comparison of full expansions; trials = 0 and error bound "0".
verdict symbolic_equal(const subject& lhs, const subject& rhs);

enum class certify_strategy { automatic, symbolic, randomized };

// Certifies that the subject computes a homogeneous polynomial, of degree d
// when given, inferring the degree otherwise. Symbolic degree filter at desk
// scale; otherwise a randomized scaling test f(t*a) = t^d f(a) per trial.
verdict certify_homogeneous(const subject& obj, std::optional<int> d, int trials,
                            std::uint64_t seed,
                            certify_strategy strategy = certify_strategy::automatic);

// Samples random integer matrices with invertible bottom-right block and
// checks det(M) = det(A - B D^{-1} C) * det(D) exactly over the rationals.
verdict schur_self_test(std::size_t k, std::size_t m, int trials, std::uint64_t seed);

}  // namespace detabp
