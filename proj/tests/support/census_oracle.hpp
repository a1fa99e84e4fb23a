// SPDX-License-Identifier: Apache-2.0
// Enumerate-and-filter reference for the AST census.
#pragma once

#include <cstdint>
#include <functional>

#include "prodsynth/syntax.hpp"

namespace oracle {

using namespace prodsynth;

// Every closed, branch-complete term of exactly n nodes whose outermost
// introduction form (if any) matches tau's type former. Fixpoint annotations
// are placeholders. Projection indices range over 1..proj.
void each_term(const ConstructorContext& sigma, const Type& tau, int n, int proj,
               const std::function<void(const Expr&)>& visit);

// Some assignment of annotations makes the term check at tau.
bool typeable(const ConstructorContext& sigma, const Expr& e, const Type& tau);

// Beta-normal eta-long term checking at tau (annotations ignored).
bool normal_at(const ConstructorContext& sigma, const Expr& e, const Type& tau);

struct CensusRow {
  std::uint64_t all = 0, typed = 0, normal = 0;
};
CensusRow census_by_enumeration(const ConstructorContext& sigma, const Type& tau, int n, int proj);

}  // namespace oracle
