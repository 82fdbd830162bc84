#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "forge/tensor334.hpp"

namespace forge {

/// {"p": prime, "entries": 3x4x3 nested integers, "side": "primal" | "dual"}
inline nlohmann::json tensor_to_json(const FiveTuple &t) {
  const auto &f = t.tensor.field();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json slab = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < 3; ++k) row.push_back(f.signed_value(t.tensor(i, j, k)));
      slab.push_back(std::move(row));
    }
    entries.push_back(std::move(slab));
  }
  return {{"p", f.prime()}, {"entries", std::move(entries)}, {"side", side_name(t.side)}};
}

/// Parses the schema above; `fallback` supplies the prime when "p" is absent.
inline FiveTuple tensor_from_json(const nlohmann::json &j, const PrimeField &fallback) {
  PrimeField f = fallback;
  if (j.contains("p")) {
    auto p = j.at("p").get<std::uint32_t>();
    if (p != fallback.prime()) f = PrimeField(p);
  }
  const auto &e = j.at("entries");
  if (!e.is_array() || e.size() != 3) throw std::invalid_argument("tensor json: entries must have shape 3x4x3");
  Tensor334 t(f);
  for (int i = 0; i < 3; ++i) {
    if (!e[i].is_array() || e[i].size() != 4) throw std::invalid_argument("tensor json: entries must have shape 3x4x3");
    for (int jj = 0; jj < 4; ++jj) {
      if (!e[i][jj].is_array() || e[i][jj].size() != 3)
        throw std::invalid_argument("tensor json: entries must have shape 3x4x3");
      for (int k = 0; k < 3; ++k) t(i, jj, k) = f.from_int(e[i][jj][k].get<std::int64_t>());
    }
  }
  Side side = Side::Primal;
  if (j.contains("side")) {
    auto s = j.at("side").get<std::string>();
    if (s == "dual")
      side = Side::Dual;
    else if (s != "primal")
      throw std::invalid_argument("tensor json: side must be \"primal\" or \"dual\", got \"" + s + "\"");
  }
  return {t, side};
}

}  // namespace forge
