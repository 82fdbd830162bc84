#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "forge/forge.hpp"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitError = 2;

std::uint32_t default_prime() {
  if (const char *env = std::getenv("FORGE_PRIME")) {
    try {
      auto p = std::stoul(env);
      forge::PrimeField check(static_cast<std::uint32_t>(p));
      return check.prime();
    } catch (const std::exception &e) {
      throw std::invalid_argument(std::string("FORGE_PRIME: ") + e.what());
    }
  }
  return 101;
}

nlohmann::json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

forge::FiveTuple fixture_tensor(const std::string &name, const forge::PrimeField &f) {
  using namespace forge::fixtures;
  if (name == "b0") return {b0(f), forge::Side::Primal};
  if (name == "scroll-general") return {scroll_projection_general(f), forge::Side::Primal};
  if (name == "scroll-special") return {scroll_projection_special(f), forge::Side::Primal};
  throw std::invalid_argument("unknown fixture \"" + name + "\"");
}

int emit(const nlohmann::json &report, const std::string &out_path) {
  const auto text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  if (report.contains("failed_stage") && !report["failed_stage"].is_null())
    std::cerr << "forge: stage " << report["failed_stage"].get<std::string>()
              << " failed: " << report.value("error", "") << "\n";
  for (const auto &e : report["expectations"])
    if (!e["pass"].get<bool>())
      std::cerr << "forge: expectation " << e["name"].get<std::string>() << " failed: expected "
                << e["expected"].get<std::string>() << ", got " << e["actual"].get<std::string>() << "\n";
  return report["ok"].get<bool>() ? 0 : kExitFailedChecks;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"forge: nodal sextic and 3x3x4 tensor toolkit over prime fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", forge::kToolVersion);

  std::uint64_t seed = 1;
  std::uint32_t prime = 0;
  std::string tensor_file, fixture, out_path;
  bool generic = false, timings = false;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--prime,-p", prime, "prime field characteristic (default: $FORGE_PRIME or 101)");
    sub->add_option("--out,-o", out_path, "write the JSON report here instead of stdout");
  };

  auto *run = app.add_subcommand("run", "full nodal pipeline (B0 by default)");
  add_common(run);
  run->add_option("--seed,-s", seed, "random seed");
  auto *tensor_opt = run->add_option("--tensor", tensor_file, "tensor JSON file instead of B0")->check(CLI::ExistingFile);
  run->add_flag("--generic", generic, "random admissible tensor instead of B0")->excludes(tensor_opt);
  run->add_flag("--timings", timings, "include per-stage wall-clock times");

  auto *tangent = app.add_subcommand("tangent", "tangent dimensions at B0 without the nodal checks");
  add_common(tangent);
  tangent->add_option("--seed,-s", seed, "random seed");
  tangent->add_flag("--timings", timings, "include per-stage wall-clock times");

  auto *involution = app.add_subcommand("involution", "apply the cross-product involution once");
  add_common(involution);
  auto *inv_tensor = involution->add_option("--tensor", tensor_file, "tensor JSON file")->check(CLI::ExistingFile);
  involution->add_option("--fixture", fixture, "b0, scroll-general or scroll-special")->excludes(inv_tensor);

  auto *codes = app.add_subcommand("codes", "the codes U51 and K56 with weight distributions");
  codes->add_option("--out,-o", out_path, "write the JSON report here instead of stdout");

  auto *chern = app.add_subcommand("chern", "Chern polynomial coefficients");
  chern->add_option("--out,-o", out_path, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    const bool prime_given = prime != 0;
    if (!prime_given) prime = default_prime();

    if (*run || *tangent) {
      forge::PipelineConfig cfg;
      cfg.seed = seed;
      cfg.prime = prime;
      if (*run && generic) cfg.mode = forge::PipelineMode::Generic;
      if (*run && !tensor_file.empty()) {
        auto j = read_json_file(tensor_file);
        if (j.contains("p")) {
          auto file_prime = j["p"].get<std::uint32_t>();
          if (prime_given && file_prime != prime)
            throw std::invalid_argument("--prime " + std::to_string(prime) + " differs from the tensor file prime " +
                                        std::to_string(file_prime));
          cfg.prime = file_prime;
        }
        cfg.mode = forge::PipelineMode::Tensor;
        cfg.tensor = forge::tensor_from_json(j, forge::PrimeField(cfg.prime)).tensor;
      }
      if (*tangent) cfg.nodal_checks = false;
      auto report = forge::full_pipeline(cfg);
      return emit(forge::to_json(report, *run ? "run" : "tangent", timings), out_path);
    }
    if (*involution) {
      const forge::PrimeField f(prime);
      if (tensor_file.empty() && fixture.empty())
        throw std::invalid_argument("involution needs --tensor FILE or --fixture NAME");
      auto in = tensor_file.empty() ? fixture_tensor(fixture, f) : forge::tensor_from_json(read_json_file(tensor_file), f);
      return emit(forge::involution_report(in), out_path);
    }
    if (*codes) return emit(forge::codes_report(), out_path);
    if (*chern) return emit(forge::chern_report(), out_path);
  } catch (const std::exception &e) {
    std::cerr << "forge: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
