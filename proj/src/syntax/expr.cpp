// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/expr.hpp"

#include <cassert>
#include <functional>

namespace prodsynth {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

Expr make(std::shared_ptr<ExprNode> n);

}  // namespace

// Access to the private handle from the factory helpers.
struct ExprBuilder {
  static Expr wrap(std::shared_ptr<const ExprNode> n) {
    Expr e;
    e.node_ = std::move(n);
    return e;
  }
};

namespace {

Expr make(std::shared_ptr<ExprNode> n) {
  std::size_t h = mix(0x1000 + static_cast<std::size_t>(n->kind), str_hash(n->name));
  int s = 1;
  switch (n->kind) {
    case ExprKind::Fix:
      h = mix(h, str_hash(n->name2));
      h = mix(h, n->t1.hash());
      h = mix(h, n->t2.hash());
      break;
    case ExprKind::Proj:
      h = mix(h, static_cast<std::size_t>(n->index));
      break;
    default:
      break;
  }
  for (auto& k : n->kids) {
    h = mix(h, k.hash());
    s += k.size();
  }
  for (auto& b : n->branches) {
    h = mix(mix(mix(h, str_hash(b.ctor)), str_hash(b.var)), b.body.hash());
    s += b.body.size();
  }
  for (auto& c : n->cases) {
    h = mix(mix(h, c.input.hash()), c.output.hash());
    s += c.input.size() + c.output.size();
  }
  n->hash = h;
  n->size = s;
  return ExprBuilder::wrap(std::move(n));
}

std::shared_ptr<ExprNode> node(ExprKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

}  // namespace

Expr Expr::var(std::string name) {
  auto n = node(ExprKind::Var);
  n->name = std::move(name);
  return make(std::move(n));
}

Expr Expr::unit() {
  static const Expr u = make(node(ExprKind::Unit));
  return u;
}

Expr Expr::tuple(std::vector<Expr> comps) {
  assert(comps.size() >= 2);
  auto n = node(ExprKind::Tuple);
  n->kids = std::move(comps);
  return make(std::move(n));
}

Expr Expr::proj(int index, Expr target) {
  assert(index >= 1);
  auto n = node(ExprKind::Proj);
  n->index = index;
  n->kids = {std::move(target)};
  return make(std::move(n));
}

Expr Expr::ctor(std::string name, Expr arg) {
  auto n = node(ExprKind::Ctor);
  n->name = std::move(name);
  n->kids = {std::move(arg)};
  return make(std::move(n));
}

Expr Expr::fix(std::string fname, std::string xname, Type dom, Type cod, Expr body) {
  auto n = node(ExprKind::Fix);
  n->name = std::move(fname);
  n->name2 = std::move(xname);
  n->t1 = std::move(dom);
  n->t2 = std::move(cod);
  n->kids = {std::move(body)};
  return make(std::move(n));
}

Expr Expr::app(Expr fn, Expr arg) {
  auto n = node(ExprKind::App);
  n->kids = {std::move(fn), std::move(arg)};
  return make(std::move(n));
}

Expr Expr::match(Expr scrutinee, std::vector<Branch> branches) {
  auto n = node(ExprKind::Match);
  n->kids = {std::move(scrutinee)};
  n->branches = std::move(branches);
  return make(std::move(n));
}

Expr Expr::partial(std::vector<Case> cases) {
  auto n = node(ExprKind::PartialFn);
  n->cases = std::move(cases);
  return make(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
const std::string& Expr::param() const { return node_->name2; }
int Expr::index() const { return node_->index; }
const Type& Expr::domain() const { return node_->t1; }
const Type& Expr::codomain() const { return node_->t2; }
const Expr& Expr::body() const { return node_->kids.at(0); }
const Expr& Expr::arg() const {
  return node_->kind == ExprKind::App ? node_->kids.at(1) : node_->kids.at(0);
}
const Expr& Expr::fn() const { return node_->kids.at(0); }
const Expr& Expr::target() const { return node_->kids.at(0); }
const Expr& Expr::scrutinee() const { return node_->kids.at(0); }
const std::vector<Expr>& Expr::components() const { return node_->kids; }
const std::vector<Branch>& Expr::branches() const { return node_->branches; }
const std::vector<Case>& Expr::cases() const { return node_->cases; }
std::size_t Expr::hash() const { return node_ ? node_->hash : 0; }
int Expr::size() const { return node_ ? node_->size : 0; }

bool operator==(const Expr& a, const Expr& b) {
  const ExprNode* x = a.node_.get();
  const ExprNode* y = b.node_.get();
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
  if (x->name != y->name || x->name2 != y->name2 || x->index != y->index) return false;
  if (x->kind == ExprKind::Fix && (x->t1 != y->t1 || x->t2 != y->t2)) return false;
  if (x->kids != y->kids) return false;
  if (x->branches.size() != y->branches.size() || x->cases.size() != y->cases.size())
    return false;
  for (std::size_t i = 0; i < x->branches.size(); ++i) {
    auto& p = x->branches[i];
    auto& q = y->branches[i];
    if (p.ctor != q.ctor || p.var != q.var || p.body != q.body) return false;
  }
  for (std::size_t i = 0; i < x->cases.size(); ++i) {
    if (x->cases[i].input != y->cases[i].input || x->cases[i].output != y->cases[i].output)
      return false;
  }
  return true;
}

int ast_size(const Expr& e) { return e.size(); }

bool is_var(const Expr& e) { return e.kind() == ExprKind::Var; }

bool is_value(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Unit:
    case ExprKind::Fix:
    case ExprKind::PartialFn:
      return true;
    case ExprKind::Tuple:
      for (auto& c : e.components())
        if (!is_value(c)) return false;
      return true;
    case ExprKind::Ctor:
      return is_value(e.arg());
    default:
      return false;
  }
}

bool is_example(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Unit:
      return true;
    case ExprKind::Tuple:
      for (auto& c : e.components())
        if (!is_example(c)) return false;
      return true;
    case ExprKind::Ctor:
      return is_example(e.arg());
    case ExprKind::PartialFn:
      for (auto& c : e.cases())
        if (!is_value(c.input) || !is_example(c.output)) return false;
      return true;
    default:
      return false;
  }
}

bool is_normal_elim(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var:
      return true;
    case ExprKind::App:
      return is_normal_elim(e.fn()) && is_normal_intro(e.arg());
    case ExprKind::Proj:
      return is_normal_elim(e.target());
    default:
      return false;
  }
}

bool is_normal_intro(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var:
    case ExprKind::App:
    case ExprKind::Proj:
      return is_normal_elim(e);
    case ExprKind::Unit:
      return true;
    case ExprKind::Tuple:
      for (auto& c : e.components())
        if (!is_normal_intro(c)) return false;
      return true;
    case ExprKind::Ctor:
      return is_normal_intro(e.arg());
    case ExprKind::Fix:
      return is_normal_intro(e.body());
    case ExprKind::Match:
      if (!is_normal_elim(e.scrutinee())) return false;
      for (auto& b : e.branches())
        if (!is_normal_intro(b.body)) return false;
      return true;
    case ExprKind::PartialFn:
      return false;
  }
  return false;
}

NormalSort classify(const Expr& e) {
  if (is_normal_elim(e)) return NormalSort::Elim;
  if (is_normal_intro(e)) return NormalSort::Intro;
  return NormalSort::NotNormal;
}

Expr subst(const Expr& e, const std::string& name, const Expr& r) {
  switch (e.kind()) {
    case ExprKind::Var:
      return e.name() == name ? r : e;
    case ExprKind::Unit:
      return e;
    case ExprKind::Tuple: {
      std::vector<Expr> cs;
      cs.reserve(e.components().size());
      bool changed = false;
      for (auto& c : e.components()) {
        cs.push_back(subst(c, name, r));
        changed |= cs.back().raw() != c.raw();
      }
      return changed ? Expr::tuple(std::move(cs)) : e;
    }
    case ExprKind::Proj: {
      Expr t = subst(e.target(), name, r);
      return t.raw() == e.target().raw() ? e : Expr::proj(e.index(), t);
    }
    case ExprKind::Ctor: {
      Expr a = subst(e.arg(), name, r);
      return a.raw() == e.arg().raw() ? e : Expr::ctor(e.name(), a);
    }
    case ExprKind::Fix: {
      if (e.name() == name || e.param() == name) return e;
      Expr b = subst(e.body(), name, r);
      return b.raw() == e.body().raw()
                 ? e
                 : Expr::fix(e.name(), e.param(), e.domain(), e.codomain(), b);
    }
    case ExprKind::App: {
      Expr f = subst(e.fn(), name, r);
      Expr a = subst(e.arg(), name, r);
      if (f.raw() == e.fn().raw() && a.raw() == e.arg().raw()) return e;
      return Expr::app(f, a);
    }
    case ExprKind::Match: {
      Expr s = subst(e.scrutinee(), name, r);
      bool changed = s.raw() != e.scrutinee().raw();
      std::vector<Branch> bs;
      for (auto& b : e.branches()) {
        Expr body = b.var == name ? b.body : subst(b.body, name, r);
        changed |= body.raw() != b.body.raw();
        bs.push_back({b.ctor, b.var, body});
      }
      return changed ? Expr::match(s, std::move(bs)) : e;
    }
    case ExprKind::PartialFn:
      return e;  // closed by construction
  }
  return e;
}

Expr replace_subterm(const Expr& e, const Expr& key, const Expr& r) {
  if (e.size() < key.size()) return e;
  if (e == key) return r;
  switch (e.kind()) {
    case ExprKind::Var:
    case ExprKind::Unit:
    case ExprKind::PartialFn:
      return e;
    case ExprKind::Tuple: {
      std::vector<Expr> cs;
      for (auto& c : e.components()) cs.push_back(replace_subterm(c, key, r));
      return Expr::tuple(std::move(cs));
    }
    case ExprKind::Proj:
      return Expr::proj(e.index(), replace_subterm(e.target(), key, r));
    case ExprKind::Ctor:
      return Expr::ctor(e.name(), replace_subterm(e.arg(), key, r));
    case ExprKind::Fix:
      return Expr::fix(e.name(), e.param(), e.domain(), e.codomain(),
                       replace_subterm(e.body(), key, r));
    case ExprKind::App:
      return Expr::app(replace_subterm(e.fn(), key, r), replace_subterm(e.arg(), key, r));
    case ExprKind::Match: {
      std::vector<Branch> bs;
      for (auto& b : e.branches()) bs.push_back({b.ctor, b.var, replace_subterm(b.body, key, r)});
      return Expr::match(replace_subterm(e.scrutinee(), key, r), std::move(bs));
    }
  }
  return e;
}

bool occurs_free(const Expr& e, const std::string& name) {
  switch (e.kind()) {
    case ExprKind::Var:
      return e.name() == name;
    case ExprKind::Unit:
    case ExprKind::PartialFn:
      return false;
    case ExprKind::Fix:
      if (e.name() == name || e.param() == name) return false;
      return occurs_free(e.body(), name);
    case ExprKind::Match:
      if (occurs_free(e.scrutinee(), name)) return true;
      for (auto& b : e.branches())
        if (b.var != name && occurs_free(b.body, name)) return true;
      return false;
    default:
      for (auto& c : e.components())
        if (occurs_free(c, name)) return true;
      return false;
  }
}

const Expr* elim_root(const Expr& e) {
  const Expr* cur = &e;
  for (;;) {
    switch (cur->kind()) {
      case ExprKind::Var:
        return cur;
      case ExprKind::Proj:
        cur = &cur->target();
        break;
      case ExprKind::App:
        cur = &cur->fn();
        break;
      default:
        return nullptr;
    }
  }
}

}  // namespace prodsynth
