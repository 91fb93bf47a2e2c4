#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "detabp/abp.hpp"
#include "detabp/convert.hpp"
#include "detabp/pencil.hpp"
#include "detabp/verify.hpp"

namespace detabp {

// Serialized forms shared by files and the CLI. Keys are emitted in sorted
// order and scalars as decimal strings, so output is byte-stable across runs.
nlohmann::json field_to_json(const field_spec& f);
field_spec field_from_json(const nlohmann::json& j);

nlohmann::json linform_to_json(const linform& l);
linform linform_from_json(const nlohmann::json& j, int nvars, const field_spec& f);

nlohmann::json pencil_to_json(const pencil& p);
pencil pencil_from_json(const nlohmann::json& j);

nlohmann::json abp_to_json(const abp& a);
abp abp_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const conversion_report& r);
// Resource measurements: size/width/layers/homogeneity for a program,
// size/rank/corank for a pencil.
nlohmann::json subject_stats_json(const subject& s);
nlohmann::json verdict_to_json(const verdict& v);
nlohmann::json vanishing_to_json(const vanishing_report& v);

// Reads a pencil or an ABP, telling them apart by their keys ("entries" vs
// "widths"). Malformed input of any kind surfaces as parse_error.
subject load_subject(const std::string& path);
subject subject_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace detabp
