// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "prodsynth/decls.hpp"
#include "prodsynth/type.hpp"

namespace prodsynth {

enum class CensusMode { All, Typed, Normal };

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultCensusCeiling = 1'000'000'000'000ull;

// Counts terms of exactly n nodes (fixpoint annotations erased and free).
//   All:    closed, branch-complete terms whose outermost introduction form,
//           if any, builds a value of tau's type former.
//   Typed:  All terms admitting a typing at tau.
//   Normal: beta-normal eta-long terms checking at tau.
// Throws BudgetExceeded when a count or the enumeration work passes ceiling.
std::uint64_t count_asts(const ConstructorContext& sigma, const Type& tau, int n, CensusMode mode,
                         std::uint64_t ceiling = kDefaultCensusCeiling);

// Largest projection index generated: max(2, widest product in sigma and tau).
int projection_bound(const ConstructorContext& sigma, const Type& tau);

// The fixed environment `type nat = O of unit | S of nat`.
const ConstructorContext& nat_context();

CensusMode parse_census_mode(const std::string& s);
const char* census_mode_name(CensusMode m);

}  // namespace prodsynth
