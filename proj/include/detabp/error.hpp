#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace detabp {

enum class errc {
  division_by_zero,
  field_mismatch,
  dimension_mismatch,
  variable_count_mismatch,
  nonzero_constant_term,
  constant_part_invertible,
  not_regular,
  not_homogeneous,
  degree_too_small,
  size_degree_mismatch,
  parse_error,
  invalid_argument,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  error(errc code, const std::string& what, std::vector<long> data)
      : std::runtime_error(what), code_(code), data_(std::move(data)) {}
  errc code() const { return code_; }
  // Optional structured detail, e.g. two witness degrees for a homogeneity
  // refutation; surfaced in CLI diagnostics.
  const std::vector<long>& data() const { return data_; }

 private:
  errc code_;
  std::vector<long> data_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }
[[noreturn]] inline void fail(errc code, const std::string& what, std::vector<long> data) {
  throw error(code, what, std::move(data));
}

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "division-by-zero";
    case errc::field_mismatch: return "field-mismatch";
    case errc::dimension_mismatch: return "dimension-mismatch";
    case errc::variable_count_mismatch: return "variable-count-mismatch";
    case errc::nonzero_constant_term: return "nonzero-constant-term";
    case errc::constant_part_invertible: return "constant-part-invertible";
    case errc::not_regular: return "not-regular";
    case errc::not_homogeneous: return "not-homogeneous";
    case errc::degree_too_small: return "degree-too-small";
    case errc::size_degree_mismatch: return "size-degree-mismatch";
    case errc::parse_error: return "parse-error";
    case errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace detabp
