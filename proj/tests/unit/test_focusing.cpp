// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "doctest.h"
#include "focus_gen.hpp"
#include "oracles.hpp"
#include "prodsynth/focusing.hpp"

using namespace prodsynth;

namespace {

const ConstructorContext& sig() {
  static ConstructorContext s =
      parse_problem(std::string(oracle::kNatDecls) + "let f : nat -> nat |> { 0 => 0 } = ?").sigma;
  return s;
}

Expr E(const char* s) { return parse_expr(s, sig()); }
Type T(const char* s) { return parse_type(s); }

}  // namespace

TEST_CASE("focus tuple splits the examples") {
  FocusState s;
  s.omega = {{E("x"), T("nat * natlist")}};
  s.worlds = {{{{E("x"), E("(1, [])")}}, E("0")}};
  FocusEvent ev;
  auto r = focus_step(s, &ev);
  REQUIRE(r);
  CHECK(ev.rule == "Focus-Tuple");
  REQUIRE(r->delta.size() == 1);
  CHECK(r->delta[0].elim == E("x"));
  REQUIRE(r->omega.size() == 2);
  CHECK(r->omega[0].elim == E("#1 x"));
  CHECK(r->omega[1].type == T("natlist"));
  auto& env = r->worlds[0].env;
  REQUIRE(env.size() == 2);
  CHECK(env[0].first == E("#1 x"));
  CHECK(env[0].second == E("1"));
  CHECK(env[1].second == E("[]"));
  CHECK(r->gamma.empty());
}

TEST_CASE("trivial focus rules") {
  FocusState s;
  s.omega = {{E("y"), Type::unit()}};
  s.worlds = {{{{E("y"), E("()")}}, E("()")}};
  FocusEvent ev;
  auto r = focus_step(s, &ev);
  REQUIRE(r);
  CHECK(ev.rule == "Focus-Unit");
  CHECK(r->gamma.size() == 1);
  CHECK(r->omega.empty());
  CHECK(r->delta.empty());
  CHECK(r->worlds[0].env == s.worlds[0].env);

  CHECK_FALSE(focus_step(FocusState{}));

  FocusState f;
  f.omega = {{E("g"), T("nat -> nat")}};
  auto c = focus_closure(f);
  REQUIRE(c.gamma.size() == 1);
  CHECK(c.gamma[0].elim == E("g"));
}

TEST_CASE("nested product closure") {
  FocusState s;
  s.omega = {{E("p"), T("(nat * natlist) * nat")}};
  std::vector<FocusEvent> evs;
  auto c = focus_closure(s, &evs);
  std::set<std::string> g, d;
  for (auto& b : c.gamma) g.insert(pretty_print(b.elim) + " : " + b.type.str());
  for (auto& b : c.delta) d.insert(pretty_print(b.elim));
  CHECK(g == std::set<std::string>{"#1 #1 p : nat", "#2 #1 p : natlist", "#2 p : nat"});
  CHECK(d == std::set<std::string>{"p", "#1 p"});
  CHECK(evs.size() == 5);
}

TEST_CASE("world without a binding is focused without rewriting") {
  FocusState s;
  s.omega = {{E("f x"), T("nat * nat")}};
  s.worlds = {{{}, E("0")}};
  auto c = focus_closure(s);
  CHECK(c.gamma.size() == 2);
  CHECK(c.worlds[0].env.empty());
}

TEST_CASE("malformed world") {
  FocusState s;
  s.omega = {{E("x"), T("nat * nat")}};
  s.worlds = {{{{E("x"), E("0")}}, E("0")}};
  CHECK_THROWS_AS(focus_step(s), MalformedWorld);
}

TEST_CASE("potential") {
  CHECK(potential({}) == 0);
  CHECK(potential({{E("x"), T("nat * natlist")}}) == 3);
  FocusState s;
  s.omega = {{E("x"), T("(nat -> nat) * (unit * nat)")}, {E("y"), T("nat")}};
  int before = potential(s.omega);
  while (auto n = focus_step(s)) {
    CHECK(potential(n->omega) < before);
    before = potential(n->omega);
    s = *n;
  }
}

TEST_CASE("focusing properties on random states") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    FocusState s = focusgen::random_state(rng, sig());
    VarContext vars = extract_vars({&s.gamma, &s.delta, &s.omega});
    REQUIRE(ctx_well_formed(sig(), s.gamma, vars));
    REQUIRE(ctx_well_formed(sig(), s.omega, vars));
    auto r = focusgen::check_properties(sig(), s);
    INFO(r.message);
    CHECK(r.ok);
  }
}
