// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

namespace prodsynth {

namespace {

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

bool BenchReport::acceptance_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.tier != "acceptance" || r.passed(); });
}

BenchRow run_one(const std::string& path, const SearchLimits& limits) {
  BenchRow row;
  row.name = std::filesystem::path(path).stem().string();
  row.tier = "acceptance";
  try {
    auto p = load_problem(path);
    if (!p.tier.empty()) row.tier = p.tier;
    row.examples = p.example_count();
    auto r = synthesize(p, limits);
    row.status = r.status;
    row.seconds = r.stats.seconds;
    if (r.status == SynthStatus::Solved) {
      row.size = r.size;
      row.program = pretty_print(r.program, PrintOptions::from(p.sigma));
      row.verified = verify(p, r.program, limits.eval_fuel).ok();
    }
  } catch (const InputError& e) {
    row.error = e.what();
  }
  return row;
}

BenchReport run_suite(const std::string& dir, const SearchLimits& limits, bool parallel) {
  std::vector<std::string> files;
  for (auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".mls") files.push_back(f.path().string());
  std::sort(files.begin(), files.end());
  BenchReport report;
  if (parallel) {
    std::vector<std::future<BenchRow>> jobs;
    for (auto& f : files) jobs.push_back(std::async(std::launch::async, run_one, f, limits));
    for (auto& j : jobs) report.rows.push_back(j.get());
  } else {
    for (auto& f : files) report.rows.push_back(run_one(f, limits));
  }
  return report;
}

std::string to_csv(const BenchReport& r) {
  std::ostringstream o;
  o << "name,tier,status,verified,size,examples,seconds,program\n";
  for (auto& row : r.rows)
    o << row.name << ',' << row.tier << ',' << (row.error.empty() ? status_name(row.status) : "InputError") << ','
      << (row.verified ? "yes" : "no") << ',' << row.size << ',' << row.examples << ',' << fixed(row.seconds, 4)
      << ',' << csv_field(row.error.empty() ? row.program : row.error) << '\n';
  return o.str();
}

std::string to_markdown(const BenchReport& r) {
  std::ostringstream o;
  o << "| program | tier | status | verified | size | examples | seconds |\n";
  o << "|---|---|---|---|---:|---:|---:|\n";
  for (auto& row : r.rows)
    o << "| " << row.name << " | " << row.tier << " | "
      << (row.error.empty() ? status_name(row.status) : "InputError") << " | " << (row.verified ? "yes" : "no")
      << " | " << row.size << " | " << row.examples << " | " << fixed(row.seconds, 4) << " |\n";
  return o.str();
}

}  // namespace prodsynth
