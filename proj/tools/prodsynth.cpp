// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prodsynth/bench.hpp"
#include "prodsynth/census.hpp"
#include "prodsynth/synthesis.hpp"

using namespace prodsynth;

namespace {

enum Exit { kOk = 0, kNoSolution = 1, kTimeout = 2, kInputError = 3 };

struct SynthArgs {
  std::string file;
  int max_size = SearchLimits{}.max_total_size;
  double timeout = SearchLimits{}.timeout_seconds;
  bool no_focus = false, lazy = false, trace = false, stats = false;
};

int run_synth(const SynthArgs& a) {
  auto p = load_problem(a.file);
  SearchLimits limits;
  limits.max_total_size = a.max_size;
  limits.timeout_seconds = a.timeout;
  SynthOptions opts;
  opts.mode = a.no_focus ? EngineMode::NoFocus : EngineMode::Focusing;
  opts.eager_focus = !a.lazy;
  auto r = synthesize(p, limits, opts);
  if (a.trace)
    for (auto& l : r.trace) std::cerr << l << '\n';
  if (a.stats) {
    std::cerr << "status=" << status_name(r.status) << "\nsize=" << r.size << "\ncandidates=" << r.stats.candidates
              << "\ngoals=" << r.stats.goals << "\nmemo_hits=" << r.stats.memo_hits
              << "\nfocus_steps=" << r.stats.focus_steps << "\nbudget_reached=" << r.stats.budget_reached
              << "\nseconds=" << r.stats.seconds << '\n';
    for (auto& [rule, n] : r.stats.rules) std::cerr << "rule." << rule << '=' << n << '\n';
  }
  switch (r.status) {
    case SynthStatus::Solved:
      std::cout << pretty_print(r.program, PrintOptions::from(p.sigma)) << '\n';
      return kOk;
    case SynthStatus::NoSolution:
      std::cerr << "no solution of size <= " << a.max_size << '\n';
      return kNoSolution;
    case SynthStatus::Timeout:
      std::cerr << "timeout after " << a.timeout << " s (last complete size " << r.stats.budget_reached << ")\n";
      return kTimeout;
  }
  return kNoSolution;
}

int run_check(const std::string& file, const std::string& program_file) {
  auto p = load_problem(file);
  std::ifstream in(program_file);
  if (!in) throw InputError("cannot open file: " + program_file);
  std::stringstream ss;
  ss << in.rdbuf();
  auto program = parse_expr(ss.str(), p.sigma);
  auto v = verify(p, program, default_fuel());
  if (v.ok()) {
    std::cout << "ok size=" << ast_size(program) << '\n';
    return kOk;
  }
  std::cerr << v.detail << '\n';
  return kNoSolution;
}

int run_census(const std::string& type, int max_nodes, const std::string& mode) {
  Type tau = parse_type(type);
  auto& sigma = nat_context();
  if (max_nodes < 1) throw InputError("--max-nodes must be positive");
  if (mode == "compare") {
    std::cout << "n,all,typed,normal\n";
    for (int n = 1; n <= max_nodes; ++n)
      std::cout << n << ',' << count_asts(sigma, tau, n, CensusMode::All) << ','
                << count_asts(sigma, tau, n, CensusMode::Typed) << ','
                << count_asts(sigma, tau, n, CensusMode::Normal) << '\n';
    return kOk;
  }
  CensusMode m = parse_census_mode(mode);
  std::cout << "n,count\n";
  for (int n = 1; n <= max_nodes; ++n) std::cout << n << ',' << count_asts(sigma, tau, n, m) << '\n';
  return kOk;
}

int run_bench(const std::string& dir, double timeout, int max_size, const std::string& format, bool parallel) {
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir);
  SearchLimits limits;
  limits.timeout_seconds = timeout;
  limits.max_total_size = max_size;
  auto report = run_suite(dir, limits, parallel);
  std::cout << (format == "md" ? to_markdown(report) : to_csv(report));
  return report.acceptance_ok() ? kOk : kNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type-directed program synthesis from examples"};
  app.set_config("--config", "", "TOML file supplying option values");
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesize the smallest program meeting a problem's examples");
  synth->add_option("file", sa.file, "Problem file")->required();
  synth->add_option("--max-size", sa.max_size, "Largest program size tried")->check(CLI::PositiveNumber);
  synth->add_option("--timeout", sa.timeout, "Wall-clock limit in seconds")->check(CLI::NonNegativeNumber);
  synth->add_flag("--no-focus", sa.no_focus, "Use the engine without focusing");
  synth->add_flag("--lazy-focus", sa.lazy, "Focus bindings only when a goal is examined");
  synth->add_flag("--trace", sa.trace, "Print the derivation on stderr");
  synth->add_flag("--stats", sa.stats, "Print key=value statistics on stderr");

  std::string census_type = "nat -> nat", census_mode = "compare";
  int max_nodes = 8;
  auto* census = app.add_subcommand("census", "Count terms by size (CSV)");
  census->add_option("--type", census_type, "Goal type");
  census->add_option("--max-nodes", max_nodes, "Largest node count");
  census->add_option("--mode", census_mode, "all, typed, normal or compare")
      ->check(CLI::IsMember({"all", "typed", "normal", "compare"}));

  std::string bench_dir, bench_format = "csv";
  double bench_timeout = 60;
  int bench_max = SearchLimits{}.max_total_size;
  bool parallel = false;
  auto* bench = app.add_subcommand("bench", "Benchmark harness");
  bench->require_subcommand(1);
  auto* bench_run = bench->add_subcommand("run", "Synthesize every problem in a directory");
  bench_run->add_option("dir", bench_dir, "Corpus directory")->required();
  bench_run->add_option("--timeout", bench_timeout, "Per-program limit in seconds");
  bench_run->add_option("--max-size", bench_max, "Largest program size tried")->check(CLI::PositiveNumber);
  bench_run->add_option("--format", bench_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  bench_run->add_flag("--parallel", parallel, "Run programs concurrently");

  std::string check_file, program_file;
  auto* check = app.add_subcommand("check", "Verify a program against a problem");
  check->add_option("file", check_file, "Problem file")->required();
  check->add_option("program", program_file, "File holding the program")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*synth) return run_synth(sa);
    if (*census) return run_census(census_type, max_nodes, census_mode);
    if (*bench_run) return run_bench(bench_dir, bench_timeout, bench_max, bench_format, parallel);
    if (*check) return run_check(check_file, program_file);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoSolution;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
