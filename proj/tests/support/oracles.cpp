// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>

namespace oracle {

int count_nodes(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var:
    case ExprKind::Unit:
      return 1;
    case ExprKind::Tuple: {
      int n = 1;
      for (auto& c : e.components()) n += count_nodes(c);
      return n;
    }
    case ExprKind::Proj:
      return 1 + count_nodes(e.target());
    case ExprKind::Ctor:
      return 1 + count_nodes(e.arg());
    case ExprKind::Fix:
      return 1 + count_nodes(e.body());
    case ExprKind::App:
      return 1 + count_nodes(e.fn()) + count_nodes(e.arg());
    case ExprKind::Match: {
      int n = 1 + count_nodes(e.scrutinee());
      for (auto& b : e.branches()) n += count_nodes(b.body);
      return n;
    }
    case ExprKind::PartialFn: {
      int n = 1;
      for (auto& c : e.cases()) n += count_nodes(c.input) + count_nodes(c.output);
      return n;
    }
  }
  return 0;
}

const char* const kNatDecls =
    "type nat = O of unit | S of nat\n"
    "type natlist = Nil of unit | Cons of nat * natlist\n";

const char* const kLenProblem =
    "type nat = O of unit | S of nat\n"
    "type natlist = Nil of unit | Cons of nat * natlist\n"
    "let len : natlist -> nat |> { [] => 0 ; [3] => 1 ; [4; 3] => 2 } = ?\n";

const char* const kLenProgram =
    "fix len (ls : natlist) : nat = match ls with | Nil u -> 0 | Cons p -> S (len #2 p)";

Expr random_expr(std::mt19937& rng, const ConstructorContext& sigma, int depth) {
  static const char* names[] = {"x", "y", "f", "tl"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  std::vector<std::string> ctors;
  for (auto& d : sigma.decls())
    for (auto& c : d.ctors) ctors.push_back(c.name);
  int choice = depth <= 0 ? pick(3) : pick(10);
  switch (choice) {
    case 0: return Expr::var(names[pick(4)]);
    case 1: return Expr::unit();
    case 2: return Expr::ctor(ctors[pick(static_cast<int>(ctors.size()))], Expr::unit());
    case 3: {
      std::vector<Expr> cs;
      int m = 2 + pick(2);
      for (int i = 0; i < m; ++i) cs.push_back(random_expr(rng, sigma, depth - 1));
      return Expr::tuple(cs);
    }
    case 4: return Expr::proj(1 + pick(3), random_expr(rng, sigma, depth - 1));
    case 5: return Expr::ctor(ctors[pick(static_cast<int>(ctors.size()))], random_expr(rng, sigma, depth - 1));
    case 6: return Expr::fix("f", "x", Type::base("nat"), Type::arrow(Type::base("nat"), Type::unit()),
                             random_expr(rng, sigma, depth - 1));
    case 7: return Expr::app(random_expr(rng, sigma, depth - 1), random_expr(rng, sigma, depth - 1));
    case 8: {
      auto& d = sigma.decls()[pick(static_cast<int>(sigma.decls().size()))];
      std::vector<Branch> bs;
      for (auto& c : d.ctors) bs.push_back({c.name, names[pick(4)], random_expr(rng, sigma, depth - 1)});
      return Expr::match(random_expr(rng, sigma, depth - 1), bs);
    }
    default: {
      std::vector<Case> cs;
      int m = pick(3);
      for (int i = 0; i < m; ++i)
        cs.push_back({Expr::ctor("O", Expr::unit()), random_expr(rng, sigma, depth - 1)});
      if (m == 2) cs[1].input = Expr::ctor("S", Expr::ctor("O", Expr::unit()));
      return Expr::partial(cs);
    }
  }
}

}  // namespace oracle

namespace oracle {

namespace {

bool ref_value(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Unit:
    case ExprKind::Fix:
    case ExprKind::PartialFn:
      return true;
    case ExprKind::Ctor:
      return ref_value(e.arg());
    case ExprKind::Tuple:
      return std::all_of(e.components().begin(), e.components().end(), ref_value);
    default:
      return false;
  }
}

// capture-naive substitution on closed replacements
Expr ref_subst(const Expr& e, const std::string& x, const Expr& v) {
  switch (e.kind()) {
    case ExprKind::Var:
      return e.name() == x ? v : e;
    case ExprKind::Unit:
    case ExprKind::PartialFn:
      return e;
    case ExprKind::Tuple: {
      std::vector<Expr> cs;
      for (auto& c : e.components()) cs.push_back(ref_subst(c, x, v));
      return Expr::tuple(cs);
    }
    case ExprKind::Proj:
      return Expr::proj(e.index(), ref_subst(e.target(), x, v));
    case ExprKind::Ctor:
      return Expr::ctor(e.name(), ref_subst(e.arg(), x, v));
    case ExprKind::App:
      return Expr::app(ref_subst(e.fn(), x, v), ref_subst(e.arg(), x, v));
    case ExprKind::Fix:
      if (e.name() == x || e.param() == x) return e;
      return Expr::fix(e.name(), e.param(), e.domain(), e.codomain(), ref_subst(e.body(), x, v));
    case ExprKind::Match: {
      std::vector<Branch> bs;
      for (auto& b : e.branches()) bs.push_back({b.ctor, b.var, b.var == x ? b.body : ref_subst(b.body, x, v)});
      return Expr::match(ref_subst(e.scrutinee(), x, v), bs);
    }
  }
  return e;
}

void derive(const Expr& e, int depth, std::vector<RefStep>& out) {
  switch (e.kind()) {
    case ExprKind::Ctor:  // S-Ctor
      for (auto& s : ref_steps(e.arg())) out.push_back({"S-Ctor", Expr::ctor(e.name(), s.next), s.depth + 1});
      break;
    case ExprKind::Tuple: {  // S-Tuple: v1..v(k-1) values, e_k steps
      auto& cs = e.components();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        for (auto& s : ref_steps(cs[k])) {
          auto next = cs;
          next[k] = s.next;
          out.push_back({"S-Tuple", Expr::tuple(next), s.depth + 1});
        }
        if (!ref_value(cs[k])) break;
      }
      break;
    }
    case ExprKind::Proj:
      if (e.target().kind() == ExprKind::Tuple && e.index() >= 1 &&
          e.index() <= static_cast<int>(e.target().components().size()))
        out.push_back({"S-Proj2", e.target().components()[e.index() - 1], depth});
      for (auto& s : ref_steps(e.target())) out.push_back({"S-Proj1", Expr::proj(e.index(), s.next), s.depth + 1});
      break;
    case ExprKind::App:
      if (e.fn().kind() == ExprKind::Fix) {
        auto& f = e.fn();
        // simultaneous substitution; names are distinct in generated terms
        out.push_back({"S-App2", ref_subst(ref_subst(f.body(), f.param(), e.arg()), f.name(), f), depth});
      }
      for (auto& s : ref_steps(e.fn())) out.push_back({"S-App1", Expr::app(s.next, e.arg()), s.depth + 1});
      break;
    case ExprKind::Match:
      if (e.scrutinee().kind() == ExprKind::Ctor && ref_value(e.scrutinee().arg())) {
        for (auto& b : e.branches())
          if (b.ctor == e.scrutinee().name())
            out.push_back({"S-Match2", ref_subst(b.body, b.var, e.scrutinee().arg()), depth});
      }
      for (auto& s : ref_steps(e.scrutinee())) out.push_back({"S-Match1", Expr::match(s.next, e.branches()), s.depth + 1});
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<RefStep> ref_steps(const Expr& e) {
  std::vector<RefStep> out;
  derive(e, 0, out);
  return out;
}

std::optional<RefStep> ref_step(const Expr& e) {
  auto all = ref_steps(e);
  if (all.empty()) return std::nullopt;
  // outermost first; derivations at equal depth are listed left to right
  auto best = all.front();
  for (auto& s : all)
    if (s.depth < best.depth) best = s;
  return best;
}

namespace {

struct Gen {
  std::mt19937& rng;
  const ConstructorContext& sigma;
  std::vector<std::pair<std::string, Type>> scope;
  int fresh = 0;

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

  Expr value(const Type& t, int depth) {
    switch (t.kind()) {
      case Type::Kind::Unit:
        return Expr::unit();
      case Type::Kind::Product: {
        std::vector<Expr> cs;
        for (auto& c : t.components()) cs.push_back(value(c, depth));
        return Expr::tuple(cs);
      }
      case Type::Kind::Base: {
        auto* d = sigma.data(t.name());
        const CtorDecl* c = &d->ctors[0];
        if (depth > 0) c = &d->ctors[pick(static_cast<int>(d->ctors.size()))];
        // prefer a constructor without recursion when out of depth
        if (depth <= 0)
          for (auto& k : d->ctors)
            if (k.arg.is_unit()) c = &k;
        return Expr::ctor(c->name, value(c->arg, depth - 1));
      }
      case Type::Kind::Arrow: {
        std::string f = "g" + std::to_string(fresh++), x = "z" + std::to_string(fresh++);
        return Expr::fix(f, x, t.domain(), t.codomain(), value(t.codomain(), depth - 1));
      }
    }
    return Expr::unit();
  }

  Expr term(const Type& t, int size) {
    if (size <= 2) {
      std::vector<Expr> vars;
      for (auto& [n, vt] : scope)
        if (vt == t) vars.push_back(Expr::var(n));
      if (!vars.empty() && pick(2)) return vars[pick(static_cast<int>(vars.size()))];
      return value(t, 1);
    }
    switch (pick(5)) {
      case 0: {  // beta redex
        Type dom = pick(2) ? Type::base("nat") : Type::product({Type::base("nat"), Type::unit()});
        std::string f = "g" + std::to_string(fresh++), x = "z" + std::to_string(fresh++);
        scope.emplace_back(x, dom);
        Expr body = term(t, size / 2);
        scope.pop_back();
        return Expr::app(Expr::fix(f, x, dom, t, body), term(dom, size / 2));
      }
      case 1: {  // projection of a tuple
        Type other = Type::base("nat");
        bool first = pick(2);
        Expr a = term(first ? t : other, size / 2), b = term(first ? other : t, size / 2);
        return Expr::proj(first ? 1 : 2, Expr::tuple({a, b}));
      }
      case 2: {  // match on a nat
        std::string y = "y" + std::to_string(fresh++), w = "y" + std::to_string(fresh++);
        Expr s = term(Type::base("nat"), size / 3);
        Expr zb = term(t, size / 3);
        scope.emplace_back(w, Type::base("nat"));
        Expr sb = term(t, size / 3);
        scope.pop_back();
        return Expr::match(s, {{"O", y, zb}, {"S", w, sb}});
      }
      case 3:
        if (t.is_base()) {
          auto* d = sigma.data(t.name());
          auto& c = d->ctors[pick(static_cast<int>(d->ctors.size()))];
          return Expr::ctor(c.name, term(c.arg, size - 1));
        }
        [[fallthrough]];
      default:
        if (t.is_product()) {
          std::vector<Expr> cs;
          for (auto& c : t.components()) cs.push_back(term(c, size / static_cast<int>(t.components().size())));
          return Expr::tuple(cs);
        }
        return value(t, 2);
    }
  }
};

}  // namespace

Expr random_typed(std::mt19937& rng, const ConstructorContext& sigma, const Type& t, int size) {
  Gen g{rng, sigma, {}, 0};
  return g.term(t, size);
}

}  // namespace oracle
