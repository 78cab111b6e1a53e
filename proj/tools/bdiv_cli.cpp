#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bdiv/checks.hpp"
#include "bdiv/session.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ','))
    if (!token.empty()) out.push_back(token);
  return out;
}

int run_session(const std::string& path, const std::string& format) {
  const bdiv::SessionResult result = bdiv::Session::run_file(path);
  if (format == "structured")
    std::cout << result.report.dump(2) << "\n";
  else
    std::cout << result.human;
  return result.exit_code;
}

int run_check(std::uint64_t seed, int samples, const std::string& scope_csv,
              const std::string& format) {
  bdiv::SuiteOptions opts;
  opts.seed = seed;
  opts.samples = samples;
  opts.scope = split_csv(scope_csv);
  const auto results = bdiv::run_theorem_suite(opts);
  if (format == "structured") {
    std::cout << bdiv::suite_report(opts, results).dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.samples
                << " samples)\n";
      if (!r.passed) std::cout << "  counterexample: " << r.counterexample.dump() << "\n";
    }
  }
  for (const auto& r : results)
    if (!r.passed) return 4;
  return 0;
}

int run_catalog(const std::string& spec, const std::string& format) {
  bdiv::Tower tw;
  bdiv::ConeOracle cones(tw);
  const bdiv::ModelId m = bdiv::parse_model_spec(tw, spec);
  const bdiv::Json report = bdiv::catalog_report(tw, cones, m);
  if (format == "structured") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "model: " << report.at("model").get<std::string>() << "\n";
    std::cout << "negative curves (" << report.at("negative_curves").size() << "):\n";
    for (const auto& c : report.at("negative_curves")) std::cout << "  " << c.dump() << "\n";
    std::cout << "nef generators (" << report.at("nef_generators").size() << "):\n";
    for (const auto& g : report.at("nef_generators")) std::cout << "  " << g.dump() << "\n";
    std::cout << "exactness: " << report.at("exactness").get<std::string>() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact b-divisor class calculus on blow-up towers of surfaces"};
  app.set_version_flag("--version", std::string(bdiv::kToolName) + " " + bdiv::kToolVersion);
  app.require_subcommand(1);

  auto* session_cmd = app.add_subcommand("session", "work with session files");
  session_cmd->require_subcommand(1);
  auto* run_cmd = session_cmd->add_subcommand("run", "execute the queries of a session file");
  std::string session_path;
  std::string session_format = "human";
  run_cmd->add_option("path", session_path, "JSON session file")->required();
  run_cmd->add_option("--format", session_format, "output format")
      ->check(CLI::IsMember({"human", "structured"}));

  auto* check_cmd = app.add_subcommand("check", "run the seeded property-check suite");
  std::uint64_t seed = 1;
  int samples = 100;
  std::string scope_csv;
  std::string check_format = "human";
  check_cmd->add_option("--seed", seed, "PRNG seed (default 1)");
  check_cmd->add_option("--samples", samples, "samples per check (default 100)")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--scope", scope_csv, "comma-separated list of check names");
  check_cmd->add_option("--format", check_format, "output format")
      ->check(CLI::IsMember({"human", "structured"}));

  auto* catalog_cmd =
      app.add_subcommand("catalog", "print negative curves and nef generators of a model");
  std::string model_spec;
  std::string catalog_format = "human";
  catalog_cmd->add_option("spec", model_spec, "model spec, e.g. P2 or P2:p,q@p")->required();
  catalog_cmd->add_option("--format", catalog_format, "output format")
      ->check(CLI::IsMember({"human", "structured"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run_session(session_path, session_format);
    if (check_cmd->parsed()) return run_check(seed, samples, scope_csv, check_format);
    if (catalog_cmd->parsed()) return run_catalog(model_spec, catalog_format);
  } catch (const bdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bdiv::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
