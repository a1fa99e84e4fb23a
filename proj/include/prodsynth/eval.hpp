// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prodsynth/syntax.hpp"

namespace prodsynth {

enum class StepStatus { Stepped, Value, Stuck };

struct StepResult {
  StepStatus status;
  Expr next;                 // set when Stepped
  const char* rule = "";     // name of the rule that fired
};

// How applications of partial-function values are treated. `Stuck` is the
// plain relation; `Lookup` evaluates the argument and reads the table.
enum class PartialApp { Stuck, Lookup };

StepResult step(const ConstructorContext& sigma, const Expr& e, PartialApp mode = PartialApp::Stuck);

enum class EvalStatus { Value, Stuck, FuelExhausted, Unbound };

struct EvalResult {
  EvalStatus status;
  Expr value;  // final term (a value when status == Value)
  std::uint64_t steps = 0;
  bool ok() const { return status == EvalStatus::Value; }
};

// 10^6, or the PRODSYNTH_FUEL environment variable when set.
std::uint64_t default_fuel();

EvalResult eval(const ConstructorContext& sigma, const Expr& e, std::uint64_t fuel,
                PartialApp mode = PartialApp::Stuck);

// Example context: elimination forms bound to examples.
using ExampleContext = std::vector<std::pair<Expr, Expr>>;

// Substitutes the bindings (longest form first) and evaluates with lookup.
EvalResult eval_in_world(const ConstructorContext& sigma, const ExampleContext& env, const Expr& e,
                         std::uint64_t fuel);

// Whether a value meets an example. Closures are compared pointwise on the
// example's keys.
bool satisfies(const ConstructorContext& sigma, const Expr& v, const Expr& example, std::uint64_t fuel);

// Table lookup by structural key equality; null when undefined.
const Expr* lookup_case(const Expr& partial, const Expr& key);

std::vector<std::string> free_vars(const Expr& e);

}  // namespace prodsynth
