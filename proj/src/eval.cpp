// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace prodsynth {

namespace {

StepResult stepped(Expr e, const char* rule) { return {StepStatus::Stepped, std::move(e), rule}; }
StepResult value() { return {StepStatus::Value, Expr(), ""}; }
StepResult stuck() { return {StepStatus::Stuck, Expr(), ""}; }

}  // namespace

const Expr* lookup_case(const Expr& partial, const Expr& key) {
  for (auto& c : partial.cases())
    if (c.input == key) return &c.output;
  return nullptr;
}

StepResult step(const ConstructorContext& sigma, const Expr& e, PartialApp mode) {
  switch (e.kind()) {
    case ExprKind::Unit:
    case ExprKind::Fix:
    case ExprKind::PartialFn:
      return value();
    case ExprKind::Var:
      return stuck();
    case ExprKind::Ctor: {
      if (is_value(e.arg())) return value();
      auto r = step(sigma, e.arg(), mode);
      if (r.status != StepStatus::Stepped) return stuck();
      return stepped(Expr::ctor(e.name(), r.next), "S-Ctor");
    }
    case ExprKind::Tuple: {
      auto& cs = e.components();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (is_value(cs[k])) continue;
        auto r = step(sigma, cs[k], mode);
        if (r.status != StepStatus::Stepped) return stuck();
        std::vector<Expr> next = cs;
        next[k] = r.next;
        return stepped(Expr::tuple(std::move(next)), "S-Tuple");
      }
      return value();
    }
    case ExprKind::Proj: {
      auto& t = e.target();
      if (t.kind() == ExprKind::Tuple) {
        int m = static_cast<int>(t.components().size());
        if (e.index() < 1 || e.index() > m) return stuck();
        return stepped(t.components()[e.index() - 1], "S-Proj2");
      }
      auto r = step(sigma, t, mode);
      if (r.status != StepStatus::Stepped) return stuck();
      return stepped(Expr::proj(e.index(), r.next), "S-Proj1");
    }
    case ExprKind::App: {
      auto& f = e.fn();
      if (f.kind() == ExprKind::Fix) {
        Expr body = subst(f.body(), f.param(), e.arg());
        if (f.name() != f.param()) body = subst(body, f.name(), f);
        return stepped(body, "S-App2");
      }
      if (f.kind() == ExprKind::PartialFn && mode == PartialApp::Lookup) {
        if (!is_value(e.arg())) {
          auto r = step(sigma, e.arg(), mode);
          if (r.status != StepStatus::Stepped) return stuck();
          return stepped(Expr::app(f, r.next), "S-PartialArg");
        }
        const Expr* out = lookup_case(f, e.arg());
        if (!out) return stuck();
        return stepped(*out, "S-PartialLookup");
      }
      auto r = step(sigma, f, mode);
      if (r.status != StepStatus::Stepped) return stuck();
      return stepped(Expr::app(r.next, e.arg()), "S-App1");
    }
    case ExprKind::Match: {
      auto& s = e.scrutinee();
      if (s.kind() == ExprKind::Ctor && is_value(s.arg())) {
        for (auto& b : e.branches())
          if (b.ctor == s.name()) return stepped(subst(b.body, b.var, s.arg()), "S-Match2");
        return stuck();
      }
      auto r = step(sigma, s, mode);
      if (r.status != StepStatus::Stepped) return stuck();
      return stepped(Expr::match(r.next, e.branches()), "S-Match1");
    }
  }
  return stuck();
}

std::uint64_t default_fuel() {
  if (const char* s = std::getenv("PRODSYNTH_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

EvalResult eval(const ConstructorContext& sigma, const Expr& e, std::uint64_t fuel, PartialApp mode) {
  Expr cur = e;
  std::uint64_t n = 0;
  for (;;) {
    if (is_value(cur)) return {EvalStatus::Value, cur, n};
    if (n >= fuel) return {EvalStatus::FuelExhausted, cur, n};
    auto r = step(sigma, cur, mode);
    if (r.status == StepStatus::Value) return {EvalStatus::Value, cur, n};
    if (r.status == StepStatus::Stuck) return {EvalStatus::Stuck, cur, n};
    cur = std::move(r.next);
    ++n;
  }
}

namespace {

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case ExprKind::Var:
      if (std::find(bound.begin(), bound.end(), e.name()) == bound.end()) out.insert(e.name());
      return;
    case ExprKind::Unit:
    case ExprKind::PartialFn:
      return;
    case ExprKind::Fix:
      bound.push_back(e.name());
      bound.push_back(e.param());
      collect_free(e.body(), bound, out);
      bound.resize(bound.size() - 2);
      return;
    case ExprKind::Match:
      collect_free(e.scrutinee(), bound, out);
      for (auto& b : e.branches()) {
        bound.push_back(b.var);
        collect_free(b.body, bound, out);
        bound.pop_back();
      }
      return;
    default:
      for (auto& c : e.components()) collect_free(c, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_vars(const Expr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return {out.begin(), out.end()};
}

EvalResult eval_in_world(const ConstructorContext& sigma, const ExampleContext& env, const Expr& e,
                         std::uint64_t fuel) {
  std::vector<const std::pair<Expr, Expr>*> order;
  for (auto& b : env) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->first.size() > b->first.size(); });
  Expr cur = e;
  for (auto* b : order) {
    if (b->first.kind() == ExprKind::Var)
      cur = subst(cur, b->first.name(), b->second);
    else
      cur = replace_subterm(cur, b->first, b->second);
  }
  if (!free_vars(cur).empty()) return {EvalStatus::Unbound, cur, 0};
  return eval(sigma, cur, fuel, PartialApp::Lookup);
}

bool satisfies(const ConstructorContext& sigma, const Expr& v0, const Expr& ex, std::uint64_t fuel) {
  Expr v = v0;
  if (!is_value(v)) {
    auto r = eval(sigma, v, fuel, PartialApp::Lookup);
    if (!r.ok()) return false;
    v = r.value;
  }
  switch (ex.kind()) {
    case ExprKind::Unit:
      return v.kind() == ExprKind::Unit;
    case ExprKind::Tuple: {
      if (v.kind() != ExprKind::Tuple || v.components().size() != ex.components().size()) return false;
      for (std::size_t i = 0; i < ex.components().size(); ++i)
        if (!satisfies(sigma, v.components()[i], ex.components()[i], fuel)) return false;
      return true;
    }
    case ExprKind::Ctor:
      return v.kind() == ExprKind::Ctor && v.name() == ex.name() && satisfies(sigma, v.arg(), ex.arg(), fuel);
    case ExprKind::PartialFn: {
      if (v.kind() == ExprKind::PartialFn) {
        for (auto& c : ex.cases()) {
          const Expr* out = lookup_case(v, c.input);
          if (!out || !satisfies(sigma, *out, c.output, fuel)) return false;
        }
        return true;
      }
      if (v.kind() != ExprKind::Fix) return false;
      for (auto& c : ex.cases()) {
        auto r = eval(sigma, Expr::app(v, c.input), fuel, PartialApp::Lookup);
        if (!r.ok() || !satisfies(sigma, r.value, c.output, fuel)) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace prodsynth
