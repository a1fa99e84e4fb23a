// SPDX-License-Identifier: Apache-2.0
#include "focus_gen.hpp"

#include <algorithm>
#include <set>

namespace focusgen {

namespace {

int pick(std::mt19937& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

std::set<std::string> keys(const BindingContext& c) {
  std::set<std::string> out;
  for (auto& b : c) out.insert(pretty_print(b.elim) + " : " + b.type.str());
  return out;
}

std::set<std::string> env_keys(const ExampleContext& env) {
  std::set<std::string> out;
  for (auto& [k, v] : env) out.insert(pretty_print(k) + " = " + pretty_print(v));
  return out;
}

bool is_prefix(const BindingContext& a, const BindingContext& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].elim != b[i].elim || a[i].type != b[i].type) return false;
  return true;
}

}  // namespace

Type random_type(std::mt19937& rng, int depth) {
  int c = depth <= 0 ? pick(rng, 3) : pick(rng, 6);
  switch (c) {
    case 0: return Type::unit();
    case 1: return Type::base("nat");
    case 2: return Type::base("natlist");
    case 3: return Type::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1));
    default: {
      std::vector<Type> cs;
      int m = 2 + pick(rng, 2);
      for (int i = 0; i < m; ++i) cs.push_back(random_type(rng, depth - 1));
      return Type::product(cs);
    }
  }
}

Expr random_value(std::mt19937& rng, const ConstructorContext& sigma, const Type& t, int depth) {
  switch (t.kind()) {
    case Type::Kind::Unit:
      return Expr::unit();
    case Type::Kind::Base: {
      auto* d = sigma.data(t.name());
      auto& c = depth <= 0 ? d->ctors[0] : d->ctors[pick(rng, static_cast<int>(d->ctors.size()))];
      return Expr::ctor(c.name, random_value(rng, sigma, c.arg, depth - 1));
    }
    case Type::Kind::Product: {
      std::vector<Expr> cs;
      for (auto& c : t.components()) cs.push_back(random_value(rng, sigma, c, depth));
      return Expr::tuple(cs);
    }
    case Type::Kind::Arrow: {
      std::vector<Case> cs;
      if (pick(rng, 2))
        cs.push_back({random_value(rng, sigma, t.domain(), 1), random_value(rng, sigma, t.codomain(), 1)});
      return Expr::partial(cs);
    }
  }
  return Expr::unit();
}

FocusState random_state(std::mt19937& rng, const ConstructorContext& sigma) {
  FocusState s;
  int nvars = 1 + pick(rng, 4);
  std::vector<Binding> all;
  for (int i = 0; i < nvars; ++i) {
    Binding b{Expr::var("v" + std::to_string(i)), random_type(rng, 3)};
    if (!b.type.is_product() && pick(rng, 2))
      s.gamma.push_back(b);
    else
      s.omega.push_back(b);
    all.push_back(b);
  }
  // applications of context functions to context variables
  for (auto& f : s.gamma) {
    if (!f.type.is_arrow()) continue;
    for (auto& a : all)
      if (a.type == f.type.domain() && pick(rng, 2)) s.omega.push_back({Expr::app(f.elim, a.elim), f.type.codomain()});
  }
  std::shuffle(s.omega.begin(), s.omega.end(), rng);
  int nworlds = pick(rng, 4);
  for (int w = 0; w < nworlds; ++w) {
    World world;
    for (auto* ctx : {&s.gamma, &s.omega})
      for (auto& b : *ctx)
        if (pick(rng, 5) != 0) world.env.emplace_back(b.elim, random_value(rng, sigma, b.type, 2));
    world.goal = Expr::unit();
    s.worlds.push_back(world);
  }
  return s;
}

PropertyResult check_properties(const ConstructorContext& sigma, const FocusState& s0) {
  PropertyResult r;
  VarContext vars = extract_vars({&s0.gamma, &s0.delta, &s0.omega});
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.ok = false;
    if (r.message.empty()) r.message = msg;
  };
  int budget = potential(s0.omega);
  int steps = 0;
  FocusState cur = s0;
  for (;;) {
    auto next = focus_step(cur);
    if (!next) {
      if (!cur.omega.empty()) fail(r.progress, "no step although omega is nonempty");
      break;
    }
    ++steps;
    if (potential(next->omega) >= potential(cur.omega)) fail(r.termination, "potential did not decrease");
    if (!ctx_well_formed(sigma, next->gamma, vars) || !ctx_well_formed(sigma, next->delta, vars) ||
        !ctx_well_formed(sigma, next->omega, vars))
      fail(r.preservation, "context not well formed after a step");
    for (auto& b : next->gamma)
      if (b.type.is_product()) fail(r.preservation, "product entry reached gamma");
    if (!is_prefix(cur.gamma, next->gamma) || !is_prefix(cur.delta, next->delta))
      fail(r.preservation, "gamma or delta shrank");
    // every world key is bound in some context
    std::set<std::string> bound;
    for (auto* c : {&next->gamma, &next->delta, &next->omega})
      for (auto& b : *c) bound.insert(pretty_print(b.elim));
    for (auto& w : next->worlds)
      for (auto& [k, v] : w.env)
        if (!bound.count(pretty_print(k))) fail(r.preservation, "world binds an unknown form");
    if (steps > budget) {
      fail(r.termination, "more steps than the potential");
      break;
    }
    cur = std::move(*next);
  }
  FocusState other = focus_closure(s0, nullptr, FocusOrder::Lifo);
  if (keys(cur.gamma) != keys(other.gamma) || keys(cur.delta) != keys(other.delta))
    fail(r.determinism, "orders disagree on gamma/delta");
  for (std::size_t i = 0; i < cur.worlds.size(); ++i)
    if (env_keys(cur.worlds[i].env) != env_keys(other.worlds[i].env))
      fail(r.determinism, "orders disagree on a world");
  return r;
}

}  // namespace focusgen
