// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "prodsynth/decls.hpp"
#include "prodsynth/expr.hpp"
#include "prodsynth/type.hpp"

namespace prodsynth {

// Library function given only by examples (a `val` binding).
struct AuxBinding {
  std::string name;
  Type type;
  Expr examples;  // PartialFn
};

struct SynthesisProblem {
  ConstructorContext sigma;
  std::vector<AuxBinding> aux;
  std::string name;
  Type type;
  Expr examples;     // PartialFn over the first argument
  std::string tier;  // "" or the value of an `expected:` pragma comment
  int example_count() const;  // number of top-level input tuples
};

SynthesisProblem parse_problem(const std::string& text);
SynthesisProblem load_problem(const std::string& path);

// Parses a program or value. Literal sugar needs `sigma`.
Expr parse_expr(const std::string& text, const ConstructorContext& sigma);
// Parses a value and resolves list literals against the expected type.
Expr parse_value(const std::string& text, const ConstructorContext& sigma, const Type& expected);
Type parse_type(const std::string& text);

struct PrintOptions {
  bool numerals = false;
  std::string nil, cons;  // list sugar for the single list-shaped type, if unique
  static PrintOptions from(const ConstructorContext& sigma);
};

std::string pretty_print(const Expr& e, const PrintOptions& opts = {});

// Merges cases with equal keys; throws ContradictoryExamples on conflict.
Expr normalize_examples(const Expr& pf);

}  // namespace prodsynth
