// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prodsynth/eval.hpp"
#include "prodsynth/focusing.hpp"
#include "prodsynth/syntax.hpp"

namespace prodsynth {

struct SearchLimits {
  int max_total_size = 60;
  int max_scrutinee_size = 6;
  int max_match_depth = 2;
  double timeout_seconds = 60.0;
  std::uint64_t eval_fuel = default_fuel();
};

enum class EngineMode { Focusing, NoFocus };

struct SynthOptions {
  EngineMode mode = EngineMode::Focusing;
  // Focus new bindings when a goal is created (true) or only when the goal is
  // first examined, processing the queue from the back (false).
  bool eager_focus = true;
  // Called with each line of the derivation of the returned program.
  std::function<void(const std::string&)> on_trace;
};

enum class SynthStatus { Solved, NoSolution, Timeout };

struct SynthStats {
  std::uint64_t candidates = 0;  // elimination forms and arguments generated
  std::uint64_t goals = 0;       // distinct goals solved
  std::uint64_t memo_hits = 0;
  std::uint64_t focus_steps = 0;
  std::map<std::string, std::uint64_t> rules;  // rule firings
  int budget_reached = 0;
  double seconds = 0;
};

struct SynthResult {
  SynthStatus status = SynthStatus::NoSolution;
  Expr program;
  int size = 0;
  SynthStats stats;
  std::vector<std::string> trace;
};

SynthResult synthesize(const SynthesisProblem& problem, const SearchLimits& limits,
                       const SynthOptions& options = {});
SynthResult synthesize_nofocus(const SynthesisProblem& problem, const SearchLimits& limits);

// Accepted only when at least two branches receive worlds.
bool informative(const std::vector<int>& branch_world_counts);

// Every use of a fixpoint-bound name is an application whose first argument
// is a projection chain of a variable bound by matching on that fixpoint's
// parameter (transitively).
bool check_structural(const Expr& program);

struct Verification {
  bool typechecks = false;
  bool satisfies = false;
  bool structural = false;
  bool normal = false;
  std::string detail;
  bool ok() const { return typechecks && satisfies && structural && normal; }
};

// Independent of the engine: typecheck, normal form, structural recursion and
// evaluation against the examples with library functions substituted.
Verification verify(const SynthesisProblem& problem, const Expr& program, std::uint64_t fuel);

const char* status_name(SynthStatus s);

}  // namespace prodsynth
