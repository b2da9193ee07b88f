#pragma once

#include <string>

#include <json.hpp>

#include "nilmult/algebra.hpp"

namespace nilmult {

using Json = nlohmann::ordered_json;

/// Wire format for algebras:
///   { "dim": n, "brackets": { "i,j": { "k": "p/q", ... }, ... },
///     "name": optional }
/// with 1 <= i < j <= n, omitted pairs meaning zero brackets, and rationals
/// as "p/q" strings ("p" when the denominator is 1).
inline Json algebra_to_json(const NilpotentAlgebra& l) {
  Json j;
  j["dim"] = l.dim();
  Json brackets = Json::object();
  for (const auto& [pair, col] : l.structure_constants()) {
    Json entry = Json::object();
    for (const auto& [k, c] : col) entry[std::to_string(k)] = to_string(c);
    brackets[std::to_string(pair.first) + "," + std::to_string(pair.second)] =
        std::move(entry);
  }
  j["brackets"] = std::move(brackets);
  if (l.name()) j["name"] = *l.name();
  return j;
}

inline NilpotentAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("algebra JSON: missing integer \"dim\"");
  int n = j["dim"].get<int>();
  NilpotentAlgebra::Table table;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_object())
      throw std::invalid_argument("algebra JSON: \"brackets\" must be an object");
    for (const auto& [key, entry] : j["brackets"].items()) {
      std::size_t comma = key.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("algebra JSON: bracket key \"" + key +
                                    "\" is not of the form \"i,j\"");
      int i = std::stoi(key.substr(0, comma));
      int jj = std::stoi(key.substr(comma + 1));
      NilpotentAlgebra::SparseVec col;
      for (const auto& [k, value] : entry.items())
        col[std::stoi(k)] = parse_rational(value.get<std::string>());
      table[{i, jj}] = std::move(col);
    }
  }
  std::optional<std::string> name;
  if (j.contains("name")) name = j["name"].get<std::string>();
  return NilpotentAlgebra::from_structure_constants(n, std::move(table), name);
}

}  // namespace nilmult
