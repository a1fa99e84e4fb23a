// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "prodsynth/synthesis.hpp"

namespace prodsynth {

struct BenchRow {
  std::string name;  // file stem
  std::string tier;  // "acceptance" or the file's `expected:` value
  SynthStatus status = SynthStatus::NoSolution;
  bool verified = false;
  int size = 0;
  int examples = 0;
  double seconds = 0;
  std::string program;
  std::string error;  // input error, if the file failed to load
  bool passed() const { return status == SynthStatus::Solved && verified && error.empty(); }
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // True when every acceptance-tier program was solved and verified.
  bool acceptance_ok() const;
};

// Runs every *.mls file in dir, sorted by name.
BenchReport run_suite(const std::string& dir, const SearchLimits& limits, bool parallel = false);
BenchRow run_one(const std::string& path, const SearchLimits& limits);

std::string to_csv(const BenchReport& r);
std::string to_markdown(const BenchReport& r);

}  // namespace prodsynth
