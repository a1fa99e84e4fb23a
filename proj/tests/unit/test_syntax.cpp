// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace prodsynth;

namespace {

Expr nat(int n) {
  Expr e = Expr::ctor("O", Expr::unit());
  while (n-- > 0) e = Expr::ctor("S", e);
  return e;
}

ConstructorContext nat_sigma() { return parse_problem(std::string(oracle::kNatDecls) + "let f : nat -> nat |> { 0 => 0 } = ?").sigma; }

}  // namespace

TEST_CASE("types print and parse") {
  Type t = parse_type("nat * nat -> (nat -> nat) * unit");
  CHECK(t.is_arrow());
  CHECK(t.domain().components().size() == 2);
  CHECK(t.str() == "nat * nat -> (nat -> nat) * unit");
  CHECK(parse_type(t.str()) == t);
  Type flat = parse_type("a * b * c");
  CHECK(flat.components().size() == 3);
  Type nested = parse_type("(a * b) * c");
  CHECK(nested.components().size() == 2);
  CHECK(nested.str() == "(a * b) * c");
  CHECK(parse_type("a -> b -> c").codomain().is_arrow());
  CHECK(parse_type("(a -> b) -> c").domain().is_arrow());
  CHECK(parse_type("nat * nat").tree_size() == 3);
}

TEST_CASE("parse simple problem with numerals") {
  auto p = parse_problem("type nat = O of unit | S of nat \n let f : nat -> nat |> { 0 => 1 } = ?");
  CHECK(p.name == "f");
  CHECK(p.type == Type::arrow(Type::base("nat"), Type::base("nat")));
  REQUIRE(p.examples.cases().size() == 1);
  CHECK(p.examples.cases()[0].input == nat(0));
  CHECK(p.examples.cases()[0].output == nat(1));
}

TEST_CASE("parse len problem") {
  auto p = parse_problem(oracle::kLenProblem);
  CHECK(p.type.str() == "natlist -> nat");
  REQUIRE(p.examples.cases().size() == 3);
  auto nil = Expr::ctor("Nil", Expr::unit());
  auto cons = [](Expr h, Expr t) { return Expr::ctor("Cons", Expr::tuple({h, t})); };
  CHECK(p.examples.cases()[0].input == nil);
  CHECK(p.examples.cases()[1].input == cons(nat(3), nil));
  CHECK(p.examples.cases()[2].input == cons(nat(4), cons(nat(3), nil)));
  CHECK(p.examples.cases()[2].output == nat(2));
  CHECK(p.example_count() == 3);
}

TEST_CASE("multi-argument examples nest and merge") {
  auto p = parse_problem(std::string(oracle::kNatDecls) +
                         "let add : nat -> nat -> nat |> { 0 => 1 => 1 ; 0 => 2 => 2 ; 1 => 1 => 2 } = ?");
  REQUIRE(p.examples.cases().size() == 2);
  CHECK(p.examples.cases()[0].output.cases().size() == 2);
  CHECK(p.example_count() == 3);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(parse_expr("{ 0 => 1 ; 0 => 2 }", nat_sigma()), ContradictoryExamples);
  CHECK_THROWS_AS(parse_problem("type a = A | A\nlet f : a -> a |> { A => A } = ?"), DuplicateConstructor);
  CHECK_THROWS_AS(parse_problem("type a = A of b\nlet f : a -> a |> { } = ?"), UnknownType);
  CHECK_THROWS_AS(parse_problem("type a = A\nlet f : a -> c |> { } = ?"), UnknownType);
  CHECK_THROWS_AS(parse_problem("type a = A\nlet f : a -> a |> { 0 => A } = ?"), ParseError);
  try {
    parse_problem("type a = A\nlet f : a -> a |>\n  { A => ( } = ?");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 12);
  }
  // list sugar needs a list-shaped type
  CHECK_THROWS_AS(parse_problem("type nat = O of unit | S of nat\nlet f : nat -> nat |> { [] => 0 } = ?"), ParseError);
}

TEST_CASE("pretty print examples") {
  auto sigma = nat_sigma();
  auto opts = PrintOptions::from(sigma);
  CHECK(pretty_print(Expr::proj(1, Expr::var("x"))) == "#1 x");
  CHECK(pretty_print(Expr::unit()) == "()");
  CHECK(pretty_print(Expr::tuple({nat(0), nat(1)}), opts) == "(0, 1)");
  CHECK(pretty_print(Expr::tuple({nat(0), nat(1)})) == "(O, S O)");
  auto len = parse_expr(oracle::kLenProgram, sigma);
  CHECK(pretty_print(len, opts) == oracle::kLenProgram);
  CHECK(pretty_print(Expr::proj(2, Expr::proj(1, Expr::var("p")))) == "#2 #1 p");
  CHECK(pretty_print(parse_expr("[1; 2]", sigma), opts) == "[1; 2]");
}

TEST_CASE("ast_size") {
  CHECK(ast_size(Expr::var("x")) == 1);
  CHECK(ast_size(Expr::app(Expr::var("f"), Expr::var("x"))) == 3);
  auto len = parse_expr(oracle::kLenProgram, nat_sigma());
  CHECK(ast_size(len) == oracle::count_nodes(len));
  CHECK(ast_size(len) == 10);
  CHECK(ast_size(Expr::proj(1, Expr::var("x"))) == 2);
}

TEST_CASE("normal form classification") {
  auto sigma = nat_sigma();
  CHECK(classify(parse_expr("f (S x) y", sigma)) == NormalSort::Elim);
  CHECK(classify(parse_expr("#1 (f x)", sigma)) == NormalSort::Elim);
  CHECK(classify(parse_expr(oracle::kLenProgram, sigma)) == NormalSort::Intro);
  CHECK(classify(parse_expr("(fix f (x : nat) : nat = x) 0", sigma)) == NormalSort::NotNormal);
  CHECK(classify(parse_expr("#1 (0, 1)", sigma)) == NormalSort::NotNormal);
  CHECK(classify(parse_expr("match S x with | O a -> a | S b -> b", sigma)) == NormalSort::NotNormal);
}

TEST_CASE("round trip on random expressions") {
  auto sigma = nat_sigma();
  auto opts = PrintOptions::from(sigma);
  std::mt19937 rng(7);
  for (int i = 0; i < 3000; ++i) {
    Expr e = oracle::random_expr(rng, sigma, 5);
    std::string s = pretty_print(e, opts);
    Expr back = parse_expr(s, sigma);
    INFO(s);
    REQUIRE(back == e);
    CHECK(pretty_print(back, opts) == s);
    // also without sugar
    CHECK(parse_expr(pretty_print(e), sigma) == e);
  }
}

TEST_CASE("size is monotone under subterms") {
  auto sigma = nat_sigma();
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    Expr e = oracle::random_expr(rng, sigma, 4);
    CHECK(ast_size(e) == oracle::count_nodes(e));
    switch (e.kind()) {
      case ExprKind::App:
        CHECK(ast_size(e) > ast_size(e.fn()));
        CHECK(ast_size(e) > ast_size(e.arg()));
        break;
      case ExprKind::Match:
        CHECK(ast_size(e) > ast_size(e.scrutinee()));
        for (auto& b : e.branches()) CHECK(ast_size(e) > ast_size(b.body));
        break;
      default:
        for (auto& c : e.kind() == ExprKind::Match || e.kind() == ExprKind::PartialFn ? std::vector<Expr>{} : e.components())
          CHECK(ast_size(e) > ast_size(c));
    }
  }
}

TEST_CASE("large literals desugar") {
  auto sigma = nat_sigma();
  Expr big = parse_expr("10000", sigma);
  CHECK(ast_size(big) == 10002);
  std::string lst = "[";
  for (int i = 0; i < 1000; ++i) lst += (i ? "; " : "") + std::to_string(i % 5);
  lst += "]";
  Expr l = parse_expr(lst, sigma);
  CHECK(l.kind() == ExprKind::Ctor);
  CHECK(pretty_print(l, PrintOptions::from(sigma)) == lst);
}

TEST_CASE("expected pragma") {
  auto p = parse_problem(std::string("(* expected: hard *)\n") + oracle::kLenProblem);
  CHECK(p.tier == "hard");
  CHECK(parse_problem(oracle::kLenProblem).tier.empty());
}
