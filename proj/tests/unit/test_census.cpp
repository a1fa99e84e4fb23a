// SPDX-License-Identifier: Apache-2.0
#include "census_oracle.hpp"
#include "doctest.h"
#include "prodsynth/census.hpp"

using namespace prodsynth;

namespace {

const Type& nat_to_nat() {
  static Type t = parse_type("nat -> nat");
  return t;
}

std::uint64_t count(int n, CensusMode m, const Type& t = nat_to_nat()) { return count_asts(nat_context(), t, n, m); }

}  // namespace

TEST_CASE("no one-node closed term at arrow type") {
  CHECK(count(1, CensusMode::All) == 0);
  CHECK(count(1, CensusMode::Typed) == 0);
  CHECK(count(1, CensusMode::Normal) == 0);
  CHECK(count(1, CensusMode::All, Type::unit()) == 1);
}

TEST_CASE("small counts by hand") {
  // fix f x = f | x | ()  and the two projections and two constructors of ()
  CHECK(count(2, CensusMode::All) == 5);
  CHECK(count(2, CensusMode::Typed) == 1);
  CHECK(count(2, CensusMode::Normal) == 1);
  // fix f x = S x | fix f x = O ()
  CHECK(count(3, CensusMode::Typed) == 2);
  // S (S x), S (O ()), f x
  CHECK(count(4, CensusMode::Typed) == 3);
  CHECK(count(4, CensusMode::Normal) == 3);
}

TEST_CASE("oracle filters") {
  auto& s = nat_context();
  CHECK(oracle::typeable(s, parse_expr("fix f (x : nat) : nat = (fix g (y : unit) : nat = x) ()", s), nat_to_nat()));
  CHECK_FALSE(oracle::normal_at(s, parse_expr("fix f (x : nat) : nat = (fix g (y : unit) : nat = x) ()", s),
                                nat_to_nat()));
  CHECK(oracle::typeable(s, parse_expr("fix f (x : nat) : nat = #1 (x, ())", s), nat_to_nat()));
  CHECK_FALSE(oracle::typeable(s, parse_expr("fix f (x : nat) : nat = #3 (x, ())", s), nat_to_nat()));
  CHECK_FALSE(oracle::typeable(s, parse_expr("fix f (x : nat) : nat = f f", s), nat_to_nat()));
  CHECK(oracle::typeable(s, Expr::app(Expr::proj(1, Expr::tuple({
                                          Expr::fix("g", "y", Type::unit(), Type::unit(), Expr::var("y")),
                                          Expr::unit()})),
                                      Expr::unit()),
                         Type::unit()));
}

TEST_CASE("recurrence matches enumeration") {
  const Type types[] = {nat_to_nat(), parse_type("nat"), parse_type("nat * nat"), parse_type("unit -> nat * unit")};
  for (auto& t : types) {
    int proj = projection_bound(nat_context(), t);
    for (int n = 1; n <= 6; ++n) {
      auto row = oracle::census_by_enumeration(nat_context(), t, n, proj);
      INFO(t.str() << " n=" << n);
      CHECK(count(n, CensusMode::All, t) == row.all);
      CHECK(count(n, CensusMode::Typed, t) == row.typed);
      CHECK(count(n, CensusMode::Normal, t) == row.normal);
    }
  }
}

TEST_CASE("ordering and separation") {
  double prev = 0;
  for (int n = 1; n <= 10; ++n) {
    auto a = count(n, CensusMode::All), t = count(n, CensusMode::Typed), m = count(n, CensusMode::Normal);
    CHECK(m <= t);
    CHECK(t <= a);
    if (n >= 5) {
      CHECK(m < t);
      CHECK(t < a);
    }
    if (m) {
      double r = static_cast<double>(t) / static_cast<double>(m);
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("budget ceiling") {
  CHECK_THROWS_AS(count_asts(nat_context(), nat_to_nat(), 8, CensusMode::All, 1000), BudgetExceeded);
  CHECK_THROWS_AS(count_asts(nat_context(), nat_to_nat(), 8, CensusMode::Typed, 1000), BudgetExceeded);
  CHECK_THROWS_AS(count_asts(nat_context(), nat_to_nat(), 0, CensusMode::All), InputError);
  CHECK(projection_bound(nat_context(), parse_type("nat * nat * nat")) == 3);
  CHECK(parse_census_mode("typed") == CensusMode::Typed);
  CHECK_THROWS_AS(parse_census_mode("bogus"), InputError);
}
