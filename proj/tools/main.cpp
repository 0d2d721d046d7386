// Scenario runner. `verify` executes the checks of a scenario file and
// emits a deterministic JSON report; `list-checks` prints the catalog.
// Exit codes: 0 all checks pass, 1 any check fails or errors, 2 input error.

#include "zalg/checks.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic workbench for group-ring constructions"};
  app.require_subcommand(1);

  std::string path, report_path;
  long max_degree = -1;
  std::uint64_t seed = 0;
  long jobs = 1;
  bool timing = false;

  auto* verify = app.add_subcommand("verify", "run the checks of a scenario file");
  verify->add_option("scenario", path, "scenario JSON file")->required();
  verify->add_option("--report", report_path, "write the report here instead of stdout");
  verify->add_option("--max-degree", max_degree, "override the truncation degree (0..6)");
  auto* seed_opt = verify->add_option("--seed", seed, "override the scenario seed");
  verify->add_option("--jobs", jobs, "run independent checks concurrently");
  verify->add_flag("--timing", timing, "record per-check wall times in the report");

  auto* list = app.add_subcommand("list-checks", "print every check id with its arguments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    for (const auto& info : zalg::check_catalog())
      std::cout << info.id << "  args: " << info.args << "  anchor: " << info.anchor
                << "\n";
    return 0;
  }

  zalg::Scenario sc;
  try {
    sc = zalg::load_scenario(path);
    if (max_degree != -1) {
      if (max_degree < 0 || max_degree > zalg::kMaxTruncation)
        throw zalg::ScenarioError("--max-degree out of range 0..6");
      sc.max_degree = max_degree;
    }
    if (seed_opt->count() > 0) sc.seed = seed;
    if (jobs < 1 || jobs > 64) throw zalg::ScenarioError("--jobs out of range 1..64");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const long n = static_cast<long>(sc.checks.size());
  std::vector<zalg::CheckOutcome> results(n);
#ifdef _OPENMP
#pragma omp parallel for num_threads(static_cast<int>(jobs)) schedule(dynamic)
#endif
  for (long i = 0; i < n; ++i)
    results[i] = zalg::run_check(sc, sc.checks[i], static_cast<int>(i),
                                 static_cast<int>(sc.max_degree), sc.seed);

  long npass = 0, nfail = 0, nerror = 0;
  zalg::json checks = zalg::json::array();
  for (auto& r : results) {
    switch (r.status) {
      case zalg::CheckStatus::pass: ++npass; break;
      case zalg::CheckStatus::fail: ++nfail; break;
      default: ++nerror; break;
    }
    checks.push_back({{"id", r.id},
                      {"status", zalg::to_string(r.status)},
                      {"details", r.details},
                      {"ms", timing ? r.ms : 0}});
  }
  zalg::json report = {
      {"summary", {{"pass", npass}, {"fail", nfail}, {"error", nerror}}},
      {"checks", checks},
      {"env",
       {{"version", zalg::kToolVersion},
        {"schema_version", sc.schema_version},
        {"seed", sc.seed},
        {"max_degree", sc.max_degree}}}};

  std::string body = report.dump(2) + "\n";
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return 2;
    }
    f << body;
    std::cout << "pass " << npass << "  fail " << nfail << "  error " << nerror << "\n";
  } else {
    std::cout << body;
  }
  return (nfail == 0 && nerror == 0) ? 0 : 1;
}
