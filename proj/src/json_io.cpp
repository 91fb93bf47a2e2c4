#include "detabp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace detabp {

using nlohmann::json;

namespace {

// Surfaces every defect in a serialized object as parse_error so callers see
// one error class for malformed files; genuine parse_errors pass through.
template <typename Fn>
auto wrap_parse(const char* what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const error& e) {
    if (e.code() == errc::parse_error) throw;
    fail(errc::parse_error, std::string(what) + ": " + e.what());
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json field_to_json(const field_spec& f) {
  json j;
  if (f.kind == field_kind::rational) {
    j["kind"] = "rational";
  } else {
    j["kind"] = "prime";
    j["p"] = std::to_string(f.p);
  }
  return j;
}

field_spec field_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return field_spec::rationals();
  if (kind == "prime") {
    std::uint64_t p = std::stoull(j.at("p").get<std::string>());
    return field_spec::prime(p);
  }
  fail(errc::parse_error, "unknown field kind: " + kind);
}

json linform_to_json(const linform& l) {
  json j;
  j["const"] = l.constant_term().str();
  json coeffs = json::object();
  for (const auto& [i, c] : l.coeffs()) coeffs[std::to_string(i)] = c.str();
  j["coeffs"] = std::move(coeffs);
  return j;
}

linform linform_from_json(const json& j, int nvars, const field_spec& f) {
  linform l(nvars, f);
  l.set_constant(scalar::parse(f, j.at("const").get<std::string>()));
  for (const auto& [key, val] : j.at("coeffs").items()) {
    int i = std::stoi(key);
    if (i < 0 || i >= nvars) fail(errc::parse_error, "variable index out of range: " + key);
    l.set_coeff(i, scalar::parse(f, val.get<std::string>()));
  }
  return l;
}

json pencil_to_json(const pencil& p) {
  json j;
  j["s"] = p.size();
  j["nvars"] = p.nvars();
  j["field"] = field_to_json(p.field());
  json rows = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < p.size(); ++k) row.push_back(linform_to_json(p.at(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

pencil pencil_from_json(const json& j) {
  return wrap_parse("bad pencil json", [&] {
    std::size_t s = j.at("s").get<std::size_t>();
    if (s == 0) fail(errc::parse_error, "pencil size must be positive");
    int nvars = j.at("nvars").get<int>();
    if (nvars < 0) fail(errc::parse_error, "negative variable count");
    field_spec f = field_from_json(j.at("field"));
    const json& rows = j.at("entries");
    if (rows.size() != s) fail(errc::parse_error, "entry row count does not match s");
    pencil p(s, nvars, f);
    for (std::size_t i = 0; i < s; ++i) {
      if (rows[i].size() != s) fail(errc::parse_error, "entry column count does not match s");
      for (std::size_t k = 0; k < s; ++k) p.at(i, k) = linform_from_json(rows[i][k], nvars, f);
    }
    return p;
  });
}

json abp_to_json(const abp& a) {
  json j;
  j["nvars"] = a.nvars();
  j["field"] = field_to_json(a.field());
  j["widths"] = a.widths();
  json b = json::array();
  for (const auto& l : a.b()) b.push_back(linform_to_json(l));
  j["b"] = std::move(b);
  json c = json::array();
  for (const auto& l : a.c()) c.push_back(linform_to_json(l));
  j["c"] = std::move(c);
  json mats = json::array();
  for (std::size_t t = 0; t < a.num_mats(); ++t) {
    const grid<linform>& m = a.mat(t);
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(linform_to_json(m.at(i, k)));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  j["mats"] = std::move(mats);
  return j;
}

abp abp_from_json(const json& j) {
  return wrap_parse("bad abp json", [&] {
    int nvars = j.at("nvars").get<int>();
    if (nvars < 0) fail(errc::parse_error, "negative variable count");
    field_spec f = field_from_json(j.at("field"));
    std::vector<std::size_t> widths = j.at("widths").get<std::vector<std::size_t>>();
    if (widths.empty()) fail(errc::parse_error, "widths must be nonempty");
    for (std::size_t w : widths)
      if (w == 0) fail(errc::parse_error, "zero layer width");
    auto forms = [&](const json& arr) {
      std::vector<linform> out;
      for (const auto& e : arr) out.push_back(linform_from_json(e, nvars, f));
      return out;
    };
    std::vector<linform> b = forms(j.at("b"));
    std::vector<linform> c = forms(j.at("c"));
    std::vector<grid<linform>> mats;
    const json& jm = j.at("mats");
    for (std::size_t t = 0; t < jm.size(); ++t) {
      const json& rows = jm[t];
      std::size_t nr = rows.size();
      if (nr == 0) fail(errc::parse_error, "empty matrix");
      std::size_t nc = rows[0].size();
      grid<linform> m(nr, nc, linform(nvars, f));
      for (std::size_t i = 0; i < nr; ++i) {
        if (rows[i].size() != nc) fail(errc::parse_error, "ragged matrix rows");
        for (std::size_t k = 0; k < nc; ++k) m.at(i, k) = linform_from_json(rows[i][k], nvars, f);
      }
      mats.push_back(std::move(m));
    }
    return abp(nvars, f, std::move(widths), std::move(b), std::move(c), std::move(mats));
  });
}

json report_to_json(const conversion_report& r) {
  json j;
  j["s"] = r.s;
  j["d"] = r.d;
  j["r"] = r.r;
  j["path"] = r.path;
  j["out_size"] = r.out_size;
  j["out_width"] = r.out_width;
  j["out_layers"] = r.out_layers;
  j["bound_size"] = r.bound_size;
  j["bound_width"] = r.bound_width;
  j["bound_size_rreg"] = r.bound_size_rreg;
  j["c"] = r.c;
  j["c_prime"] = r.c_prime;
  j["ratio"] = r.ratio;
  return j;
}

json verdict_to_json(const verdict& v) {
  json j;
  j["verdict"] = v.outcome;
  if (v.witness) {
    json w = json::array();
    for (const auto& s : *v.witness) w.push_back(s.str());
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["trials"] = v.trials;
  j["seed"] = v.seed;
  j["per_trial_error_bound"] = v.per_trial_error_bound;
  if (v.degree) j["degree"] = *v.degree;
  if (v.witness_degrees) {
    j["witness_degrees"] = json::array({v.witness_degrees->first, v.witness_degrees->second});
  }
  return j;
}

json subject_stats_json(const subject& s) {
  json j;
  if (const abp* a = std::get_if<abp>(&s)) {
    j["kind"] = "abp";
    j["nvars"] = a->nvars();
    j["size"] = a->size();
    j["width"] = a->width();
    j["layers"] = a->layer_count();
    j["homogeneous"] = a->is_homogeneous();
  } else if (const pencil* p = std::get_if<pencil>(&s)) {
    auto rep = constant_rank(*p);
    j["kind"] = "pencil";
    j["nvars"] = p->nvars();
    j["s"] = p->size();
    j["constant_rank"] = rep.constant_rank;
    j["corank"] = rep.corank;
    j["regular"] = rep.regular;
  } else {
    const poly& f = std::get<poly>(s);
    j["kind"] = "poly";
    j["nvars"] = f.nvars();
    j["terms"] = f.terms().size();
  }
  return j;
}

json vanishing_to_json(const vanishing_report& v) {
  json j;
  j["top_entry_zero"] = v.top_entry_zero;
  j["series_zero"] = v.series_zero;
  j["passed"] = v.passed;
  return j;
}

subject subject_from_json(const json& j) {
  if (!j.is_object()) fail(errc::parse_error, "expected a json object");
  if (j.contains("entries")) return subject{pencil_from_json(j)};
  if (j.contains("widths")) return subject{abp_from_json(j)};
  fail(errc::parse_error, "object is neither a pencil (entries) nor an abp (widths)");
}

subject load_subject(const std::string& path) { return subject_from_json(read_json_file(path)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(errc::parse_error, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(errc::parse_error, "write failed: " + path);
}

}  // namespace detabp
