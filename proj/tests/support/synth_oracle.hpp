// SPDX-License-Identifier: Apache-2.0
// Reference checks for synthesized programs.
#pragma once

#include <functional>
#include <random>

#include "prodsynth/syntax.hpp"

namespace oracle {

using namespace prodsynth;

struct Flat {
  std::vector<Expr> args;
  Expr out;
};
// Example tables flattened to argument lists.
std::vector<Flat> flatten(const Expr& pf);

// Runs the program on every flattened example by ordinary evaluation.
bool meets_examples(const ConstructorContext& sigma, const Expr& program, const Expr& examples);

// Every recursive call's first argument is reached by matching on the
// parameter of the called fixpoint.
bool structurally_recursive(const Expr& program);

// Every beta-normal eta-long term of exactly n nodes checking at t.
void each_normal(const ConstructorContext& sigma, const Type& t, int n, const std::function<void(const Expr&)>& visit);

// Smallest size <= max_size of a normal, structurally recursive program meeting
// the examples, or -1.
int smallest_solution(const SynthesisProblem& p, int max_size);

// Random problem with 2..4 examples over a small fixed signature set.
SynthesisProblem random_problem(std::mt19937& rng);

}  // namespace oracle
