#pragma once

#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "forge/codes.hpp"
#include "forge/nodal.hpp"
#include "forge/tensor_json.hpp"

namespace forge {

inline constexpr const char *kReportSchema = "forge-report/1";
inline constexpr const char *kToolVersion = "0.1.0";

using nlohmann::json;

namespace detail {

template <class T>
json opt(const std::optional<T> &v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

inline json envelope(const std::string &command, json config) {
  return {{"schema", kReportSchema},
          {"tool", {{"name", "forge"}, {"version", kToolVersion}}},
          {"command", command},
          {"config", std::move(config)}};
}

inline json expectations_json(const std::vector<Expectation> &es) {
  json out = json::array();
  for (const auto &e : es)
    out.push_back({{"name", e.name}, {"expected", e.expected}, {"actual", e.actual}, {"pass", e.pass}});
  return out;
}

inline std::vector<Expectation> expectations_from_json(const json &j) {
  std::vector<Expectation> out;
  for (const auto &e : j)
    out.push_back({e.at("name"), e.at("expected"), e.at("actual"), e.at("pass").get<bool>()});
  return out;
}

inline bool all_pass(const std::vector<Expectation> &es) {
  for (const auto &e : es)
    if (!e.pass) return false;
  return true;
}

inline std::string join_weights(const std::map<unsigned, std::uint64_t> &dist, bool with_zero) {
  std::string s;
  for (auto [w, c] : dist) {
    if (!with_zero && w == 0) continue;
    if (!s.empty()) s += ",";
    s += std::to_string(w);
  }
  return s;
}

inline json distribution_json(const std::map<unsigned, std::uint64_t> &dist) {
  json out = json::object();
  for (auto [w, c] : dist) out[std::to_string(w)] = c;
  return out;
}

inline std::string gf2_poly_text(gf2::Poly p) {
  std::string s;
  for (int d = gf2::degree(p); d >= 0; --d) {
    if (!(p >> d & 1)) continue;
    if (!s.empty()) s += "+";
    s += d == 0 ? "1" : d == 1 ? "x" : "x^" + std::to_string(d);
  }
  return s.empty() ? "0" : s;
}

}  // namespace detail

inline PipelineMode mode_from_name(const std::string &s) {
  for (auto m : {PipelineMode::B0, PipelineMode::Generic, PipelineMode::Tensor})
    if (mode_name(m) == s) return m;
  throw std::invalid_argument("unknown pipeline mode \"" + s + "\"");
}

/// Nodal pipeline report. Timings are wall-clock and so only included on request;
/// without them the output is a function of the config alone.
inline json to_json(const NodalReport &r, const std::string &command = "run", bool with_timings = false) {
  json config = {{"seed", r.seed}, {"prime", r.prime}, {"mode", mode_name(r.mode)}};
  json j = detail::envelope(command, std::move(config));
  json res;
  res["tensor"] = r.tensor ? tensor_to_json({*r.tensor, Side::Primal}) : json(nullptr);
  res["solution_dimension"] = detail::opt(r.solution_dimension);
  res["extraction_attempts"] = detail::opt(r.extraction_attempts);
  res["sextic"] = r.sextic ? json(r.sextic->to_string()) : json(nullptr);
  res["degree"] = detail::opt(r.degree);
  res["double_cubic"] = detail::opt(r.double_cubic);
  res["cubic"] = r.cubic ? json(r.cubic->to_string()) : json(nullptr);
  res["cubic_is_involution_determinant"] = detail::opt(r.cubic_is_involution_determinant);
  res["sing_codim"] = detail::opt(r.sing_codim);
  res["sing_degree"] = detail::opt(r.sing_degree);
  res["radical"] = detail::opt(r.radical);
  res["minor_codim"] = detail::opt(r.minor_codim);
  res["minor_degree"] = detail::opt(r.minor_degree);
  res["even_set_match"] = detail::opt(r.even_set_match);
  res["tangent_dimension"] = detail::opt(r.tangent_dimension);
  res["reduced_tangent_dimension"] = detail::opt(r.reduced_tangent_dimension);
  j["results"] = std::move(res);
  j["notes"] = r.notes;
  j["expectations"] = detail::expectations_json(r.expectations);
  j["failed_stage"] = detail::opt(r.failed_stage);
  j["error"] = detail::opt(r.error);
  j["ok"] = r.all_expectations_pass();
  if (with_timings) {
    json t = json::array();
    for (const auto &s : r.timings) t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    j["timings"] = std::move(t);
  }
  return j;
}

inline NodalReport nodal_report_from_json(const json &j) {
  if (j.at("schema") != kReportSchema) throw std::invalid_argument("report: unsupported schema");
  NodalReport r;
  const auto &c = j.at("config");
  r.seed = c.at("seed");
  r.prime = c.at("prime");
  r.mode = mode_from_name(c.at("mode"));
  const PrimeField f(r.prime);
  const auto &res = j.at("results");
  if (!res.at("tensor").is_null()) r.tensor = tensor_from_json(res.at("tensor"), f).tensor;
  r.solution_dimension = detail::get_opt<std::size_t>(res, "solution_dimension");
  r.extraction_attempts = detail::get_opt<unsigned>(res, "extraction_attempts");
  if (auto s = detail::get_opt<std::string>(res, "sextic")) r.sextic = MultiPoly::parse(f, 4, *s);
  r.degree = detail::get_opt<int>(res, "degree");
  r.double_cubic = detail::get_opt<bool>(res, "double_cubic");
  if (auto s = detail::get_opt<std::string>(res, "cubic")) r.cubic = MultiPoly::parse(f, 4, *s);
  r.cubic_is_involution_determinant = detail::get_opt<bool>(res, "cubic_is_involution_determinant");
  r.sing_codim = detail::get_opt<unsigned>(res, "sing_codim");
  r.sing_degree = detail::get_opt<unsigned long long>(res, "sing_degree");
  r.radical = detail::get_opt<bool>(res, "radical");
  r.minor_codim = detail::get_opt<unsigned>(res, "minor_codim");
  r.minor_degree = detail::get_opt<unsigned long long>(res, "minor_degree");
  r.even_set_match = detail::get_opt<bool>(res, "even_set_match");
  r.tangent_dimension = detail::get_opt<std::size_t>(res, "tangent_dimension");
  r.reduced_tangent_dimension = detail::get_opt<std::size_t>(res, "reduced_tangent_dimension");
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.expectations = detail::expectations_from_json(j.at("expectations"));
  r.failed_stage = detail::get_opt<std::string>(j, "failed_stage");
  r.error = detail::get_opt<std::string>(j, "error");
  if (j.contains("timings"))
    for (const auto &t : j.at("timings")) r.timings.push_back({t.at("stage"), t.at("seconds").get<double>()});
  return r;
}

inline json codes_report() {
  json j = detail::envelope("codes", json::object());
  auto factor = u51_factor();
  auto u = build_U51();
  auto k = build_K56();
  auto du = weight_distribution(u), dk = weight_distribution(k);
  bool mod8 = true;
  for (auto [w, c] : dk) mod8 = mod8 && w % 8 == 0;

  j["results"] = {
      {"U51", {{"length", u.length()}, {"factor", detail::gf2_poly_text(factor)}, {"dimension", u.dimension()},
               {"weights", detail::distribution_json(du)}}},
      {"K56", {{"length", k.length()}, {"dimension", k.dimension()}, {"weights", detail::distribution_json(dk)}}},
  };
  std::vector<Expectation> es;
  auto add = [&](const std::string &name, const std::string &expected, const std::string &actual) {
    es.push_back({name, expected, actual, expected == actual});
  };
  add("U51_dimension", "8", std::to_string(u.dimension()));
  add("U51_nonzero_weights", "24,32", detail::join_weights(du, false));
  add("K56_dimension", "9", std::to_string(k.dimension()));
  add("K56_weights", "0,24,32,56", detail::join_weights(dk, true));
  add("K56_weights_mod_8", "true", mod8 ? "true" : "false");
  j["expectations"] = detail::expectations_json(es);
  j["ok"] = detail::all_pass(es);
  return j;
}

inline json chern_report(unsigned a = 9, unsigned b = 3, unsigned order = 4) {
  json j = detail::envelope("chern", {{"a", a}, {"b", b}, {"order", order}});
  auto c = chern_series(a, b, order);
  j["results"] = {{"coefficients", c}};
  std::vector<Expectation> es;
  if (a == 9 && b == 3 && order == 4) {
    json actual = c;
    es.push_back({"chern_polynomial", "[1,3,6,4]", actual.dump(), c == std::vector<long long>{1, 3, 6, 4}});
  }
  j["expectations"] = detail::expectations_json(es);
  j["ok"] = detail::all_pass(es);
  return j;
}

/// Applies the involution once. The only expectation is that it is defined,
/// i.e. the input satisfies the main assumption.
inline json involution_report(const FiveTuple &in) {
  json j = detail::envelope("involution", {{"tensor", tensor_to_json(in)}});
  json res;
  const bool ok = main_assumption_holds(in.tensor);
  res["input_main_assumption"] = ok;
  res["input_cubic"] = det_cubic(in.tensor).to_string();
  std::vector<Expectation> es;
  es.push_back({"input_main_assumption", "true", ok ? "true" : "false", ok});
  if (ok) {
    auto out = cross_involution(in);
    res["output"] = tensor_to_json(out);
    res["output_main_assumption"] = main_assumption_holds(out.tensor);
    res["output_cubic"] = det_cubic(out.tensor).to_string();
    res["fixed"] = out.tensor == in.tensor;
  }
  j["results"] = std::move(res);
  j["expectations"] = detail::expectations_json(es);
  j["ok"] = detail::all_pass(es);
  return j;
}

}  // namespace forge
