#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "detabp/convert.hpp"
#include "detabp/instgen.hpp"
#include "detabp/json_io.hpp"

namespace py = pybind11;

namespace {

using namespace detabp;
using nlohmann::json;

std::string dump(const json& j) { return j.dump(2); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact conversions between determinantal representations and branching programs; "
            "all values cross the boundary as json strings";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const error& e) {
      PyErr_SetString(PyExc_ValueError,
                      (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "power_sum",
      [](int n, int d) { return dump(abp_to_json(power_sum_abp(n, d, field_spec::rationals()))); },
      py::arg("n"), py::arg("d"), "program for the degree-d power sum in n variables");

  m.def(
      "elem_sym",
      [](int n, int k) { return dump(abp_to_json(elem_sym_abp(n, k, field_spec::rationals()))); },
      py::arg("n"), py::arg("k"), "program for the k-th elementary symmetric polynomial");

  m.def(
      "random_hom",
      [](int n, int d, std::size_t w, std::uint64_t seed) {
        return dump(abp_to_json(random_hom_abp(n, d, w, seed, field_spec::rationals())));
      },
      py::arg("n"), py::arg("d"), py::arg("w"), py::arg("seed"),
      "seed-deterministic homogeneous program with d-1 layers of width w");

  m.def(
      "to_pencil",
      [](const std::string& abp_json) {
        return dump(pencil_to_json(abp_to_pencil(abp_from_json(parse(abp_json)))));
      },
      py::arg("abp_json"), "determinantal representation of a program computing f with f(0) = 0");

  m.def(
      "convert",
      [](const std::string& pencil_json, const std::string& mode, std::optional<int> degree) {
        convert_mode cm = convert_mode::automatic;
        if (mode == "regular") cm = convert_mode::force_regular;
        if (mode == "general") cm = convert_mode::force_general;
        auto res = pencil_to_abp(pencil_from_json(parse(pencil_json)), degree, cm);
        json j;
        j["abp"] = abp_to_json(res.program);
        j["report"] = report_to_json(res.report);
        return dump(j);
      },
      py::arg("pencil_json"), py::arg("mode") = "auto", py::arg("degree") = py::none(),
      "pencil to program; returns {\"abp\": ..., \"report\": ...}");

  m.def(
      "verify",
      [](const std::string& a, const std::string& b, int trials, std::uint64_t seed,
         bool symbolic) {
        subject sa = subject_from_json(parse(a));
        subject sb = subject_from_json(parse(b));
        verdict v = symbolic ? symbolic_equal(sa, sb) : pit_equal(sa, sb, trials, seed);
        if (symbolic) v.seed = seed;
        return dump(verdict_to_json(v));
      },
      py::arg("a"), py::arg("b"), py::arg("trials") = 200, py::arg("seed") = 1,
      py::arg("symbolic") = false, "identity test between two pencil/program json values");

  m.def(
      "stats",
      [](const std::string& subject_json) {
        return dump(subject_stats_json(subject_from_json(parse(subject_json))));
      },
      py::arg("subject_json"), "resource measurements of a pencil or program");

  m.def(
      "eval_at",
      [](const std::string& subject_json, const std::vector<std::string>& point) {
        subject s = subject_from_json(parse(subject_json));
        const field_spec& f = subject_field(s);
        std::vector<scalar> pt;
        for (const auto& t : point) pt.push_back(scalar::parse(f, t));
        return subject_eval(s, pt).str();
      },
      py::arg("subject_json"), py::arg("point"),
      "evaluate at a point given as scalar strings; pencils evaluate to their determinant");
}
