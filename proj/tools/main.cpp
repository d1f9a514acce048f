// qubitizer command-line front end: build, verify, count, bounds.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "jobs.hpp"
#include "qubitizer/errors.hpp"

using namespace qubitizer;
using nlohmann::json;

namespace {

constexpr int kExitSpecError = 2;

void emit(const json& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << report.dump(2) << '\n';
}

int fail(const std::string& code, const std::string& message, const json& extra = nullptr) {
  json e{{"error", code}, {"message", message}};
  if (!extra.is_null()) e["worst"] = extra;
  std::cerr << e.dump() << '\n';
  return kExitSpecError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower structured matrices to qubitized Hamiltonians and synthesize query circuits"};
  app.require_subcommand(1);

  cli::JobConfig cfg;
  std::string query = "be";
  std::string groups;

  auto* build = app.add_subcommand("build", "write a query circuit and a JSON report");
  auto* verify = app.add_subcommand("verify", "compare the query against the dense oracle");
  auto* count = app.add_subcommand("count", "builder summand counts against the closed forms");
  auto* bounds = app.add_subcommand("bounds", "variance, Trotter and sampling bounds");

  for (auto* sub : {build, verify, count, bounds}) {
    sub->add_option("--spec", cfg.spec_path, "spec JSON file");
    sub->add_option("--variant", cfg.variant, "builder variant override");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "circuit or table output path");
    sub->add_option("--report", cfg.report, "JSON report path (default stdout)");
    sub->add_option("--tol", cfg.tol, "tolerance override")->envname("QUBITIZER_TOL");
  }
  for (auto* sub : {build, verify}) {
    sub->add_option("--query", query, "hs, be, measure or walk")
        ->check(CLI::IsMember({"hs", "be", "measure", "walk"}))
        ->capture_default_str();
    sub->add_option("--t", cfg.t, "evolution time")->capture_default_str();
    sub->add_option("--steps", cfg.steps, "Trotter steps")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--order", cfg.order, "product formula order")->check(CLI::IsMember({1, 2}))->capture_default_str();
  }
  count->add_option("--sweep", cfg.sweep, "count every n in [1, N]");
  bounds->add_option("--shots", cfg.shots, "Monte-Carlo shots per term");
  bounds->add_option("--groups", groups, "term partition, e.g. \"0,1;2\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what());
  }

  try {
    cfg.query = cli::parse_query(query);
    if (!groups.empty()) cfg.groups = cli::parse_groups(groups);
    cli::JobResult r;
    if (build->parsed()) {
      r = cli::cmd_build(cfg);
    } else if (verify->parsed()) {
      r = cli::cmd_verify(cfg);
    } else if (count->parsed()) {
      r = cli::cmd_count(cfg);
    } else {
      r = cli::cmd_bounds(cfg);
    }
    emit(r.report, cfg.report);
    if (r.exit_code != 0 && r.report.contains("worst")) {
      const json& w = r.report["worst"];
      std::cerr << json{{"error", std::string(to_string(ErrorCode::kVerificationFailed))},
                        {"message", "check " + w["name"].get<std::string>() + " out of tolerance"},
                        {"worst", w}}
                       .dump()
                << '\n';
    }
    return r.exit_code;
  } catch (const Error& e) {
    return fail(std::string(to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail("InternalError", e.what());
  }
}
