#pragma once

// Tower documents: the JSON input format of the command-line tool.
//
//   {
//     "stages": [n_1, ..., n_m],
//     "coefficients": [ [a_{2,1}], [a_{3,1}, a_{3,2}], ..., [a_{m,1}, ..., a_{m,m-1}] ]
//   }
//
// "coefficients" may be omitted when m = 1. Optional "name" and "comment"
// strings are accepted and ignored.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "json.hpp"

#include "fanobott/error.hpp"
#include "fanobott/tower.hpp"

namespace fanobott {

namespace detail {

inline Int json_integer(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
      throw ParseError(where + ": integer out of range");
    return static_cast<Int>(u);
  }
  if (v.is_number_integer()) return v.get<Int>();
  throw ParseError(where + ": expected an integer, got " + std::string(v.type_name()));
}

}  // namespace detail

/// Reads a tower from a parsed document. Shape errors cite the (j,l,k)
/// path; the result is not validated.
inline GeneralizedBottTower tower_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("tower document: expected a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "stages" && key != "coefficients" && key != "name" && key != "comment")
      throw ParseError("tower document: unknown key '" + key + "'");

  if (!doc.contains("stages")) throw ParseError("tower document: missing 'stages'");
  const auto& stages = doc.at("stages");
  if (!stages.is_array()) throw ParseError("stages: expected an array");

  GeneralizedBottTower t;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const Int n = detail::json_integer(stages[i], "stages[" + std::to_string(i) + "] (n_" + std::to_string(i + 1) + ")");
    if (n > std::numeric_limits<int>::max() || n < std::numeric_limits<int>::min())
      throw ParseError("stages[" + std::to_string(i) + "]: out of range");
    t.stage_dims.push_back(static_cast<int>(n));
  }

  if (!doc.contains("coefficients")) return t;
  const auto& coeffs = doc.at("coefficients");
  if (!coeffs.is_array()) throw ParseError("coefficients: expected an array indexed by j = 2..m");
  for (std::size_t jj = 0; jj < coeffs.size(); ++jj) {
    const std::size_t j = jj + 2;
    const auto& row = coeffs[jj];
    const std::string at_j = "coefficients (j=" + std::to_string(j) + ")";
    if (!row.is_array()) throw ParseError(at_j + ": expected an array indexed by l = 1..j-1");
    std::vector<IntVec> vecs;
    for (std::size_t ll = 0; ll < row.size(); ++ll) {
      const std::size_t l = ll + 1;
      const std::string at_jl = "coefficients (j=" + std::to_string(j) + ", l=" + std::to_string(l) + ")";
      if (!row[ll].is_array()) throw ParseError(at_jl + ": expected an array of n_j integers");
      IntVec a;
      for (std::size_t kk = 0; kk < row[ll].size(); ++kk)
        a.push_back(detail::json_integer(row[ll][kk], "coefficients (j=" + std::to_string(j) + ", l=" +
                                                          std::to_string(l) + ", k=" + std::to_string(kk + 1) + ")"));
      vecs.push_back(std::move(a));
    }
    t.coeffs.push_back(std::move(vecs));
  }
  return t;
}

/// Parses and validates a tower document.
inline GeneralizedBottTower parse_tower_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("tower document: ") + e.what());
  }
  GeneralizedBottTower t = tower_from_json(doc);
  validate(t);
  return t;
}

inline nlohmann::json tower_to_json(const GeneralizedBottTower& t) {
  nlohmann::json doc;
  doc["stages"] = t.stage_dims;
  doc["coefficients"] = nlohmann::json::array();
  for (const auto& row : t.coeffs) doc["coefficients"].push_back(row);
  return doc;
}

}  // namespace fanobott
