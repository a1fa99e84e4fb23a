// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/typecheck.hpp"

#include <set>

namespace prodsynth {

namespace {

class Checker {
 public:
  Checker(const ConstructorContext& sigma, VarContext vars) : sigma_(sigma), vars_(std::move(vars)) {
    for (auto& [name, t] : vars_)
      if (!sigma_.closed(t)) throw InternalError("context entry " + name + " has undeclared type " + t.str());
  }

  bool check(const Expr& e, const Type& t) {
    switch (e.kind()) {
      case ExprKind::Fix: {
        if (!t.is_arrow() || e.domain() != t.domain() || e.codomain() != t.codomain()) return false;
        if (!sigma_.closed(t)) return false;
        vars_.emplace_back(e.name(), t);
        vars_.emplace_back(e.param(), e.domain());
        bool ok = check(e.body(), e.codomain());
        vars_.resize(vars_.size() - 2);
        return ok;
      }
      case ExprKind::Tuple: {
        if (!t.is_product() || t.components().size() != e.components().size()) return false;
        for (std::size_t i = 0; i < e.components().size(); ++i)
          if (!check(e.components()[i], t.components()[i])) return false;
        return true;
      }
      case ExprKind::Unit:
        return t.is_unit();
      case ExprKind::Ctor: {
        auto* info = sigma_.ctor(e.name());
        if (!info || !t.is_base() || info->result != t.name()) return false;
        return check(e.arg(), info->arg);
      }
      case ExprKind::Match: {
        auto st = synth(e.scrutinee());
        if (!st || !st->is_base()) return false;
        auto* data = sigma_.data(st->name());
        if (!data || data->ctors.size() != e.branches().size()) return false;
        std::set<std::string> seen;
        for (auto& b : e.branches()) {
          auto* info = sigma_.ctor(b.ctor);
          if (!info || info->result != st->name() || !seen.insert(b.ctor).second) return false;
          vars_.emplace_back(b.var, info->arg);
          bool ok = check(b.body, t);
          vars_.pop_back();
          if (!ok) return false;
        }
        return true;
      }
      case ExprKind::PartialFn: {
        if (!t.is_arrow()) return false;
        for (auto& c : e.cases())
          if (!check(c.input, t.domain()) || !check(c.output, t.codomain())) return false;
        return true;
      }
      default: {
        auto st = synth(e);
        return st && *st == t;
      }
    }
  }

  std::optional<Type> synth(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Var:
        for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
          if (it->first == e.name()) return it->second;
        return std::nullopt;
      case ExprKind::App: {
        auto ft = synth(e.fn());
        if (!ft || !ft->is_arrow() || !check(e.arg(), ft->domain())) return std::nullopt;
        return ft->codomain();
      }
      case ExprKind::Proj: {
        auto tt = synth(e.target());
        if (!tt || !tt->is_product()) return std::nullopt;
        int m = static_cast<int>(tt->components().size());
        if (e.index() < 1 || e.index() > m) return std::nullopt;
        return tt->components()[e.index() - 1];
      }
      case ExprKind::Fix: {
        Type t = Type::arrow(e.domain(), e.codomain());
        if (!check(e, t)) return std::nullopt;
        return t;
      }
      case ExprKind::Unit:
        return Type::unit();
      case ExprKind::Tuple: {
        std::vector<Type> cs;
        for (auto& c : e.components()) {
          auto ct = synth(c);
          if (!ct) return std::nullopt;
          cs.push_back(*ct);
        }
        return Type::product(std::move(cs));
      }
      case ExprKind::Ctor: {
        auto* info = sigma_.ctor(e.name());
        if (!info || !check(e.arg(), info->arg)) return std::nullopt;
        return Type::base(info->result);
      }
      case ExprKind::Match: {
        // synthesize from the first branch, then check the whole match
        auto st = synth(e.scrutinee());
        if (!st || !st->is_base() || e.branches().empty()) return std::nullopt;
        auto* info = sigma_.ctor(e.branches()[0].ctor);
        if (!info) return std::nullopt;
        vars_.emplace_back(e.branches()[0].var, info->arg);
        auto bt = synth(e.branches()[0].body);
        vars_.pop_back();
        if (!bt || !check(e, *bt)) return std::nullopt;
        return bt;
      }
      case ExprKind::PartialFn:
        return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  const ConstructorContext& sigma_;
  VarContext vars_;
};

}  // namespace

bool check(const ConstructorContext& sigma, const VarContext& vars, const Expr& e, const Type& t) {
  return Checker(sigma, vars).check(e, t);
}

std::optional<Type> synth_type(const ConstructorContext& sigma, const VarContext& vars, const Expr& e) {
  return Checker(sigma, vars).synth(e);
}

bool ctx_well_formed(const ConstructorContext& sigma, const BindingContext& ctx, const VarContext& vars) {
  Checker c(sigma, vars);
  for (auto& b : ctx)
    if (!c.check(b.elim, b.type)) return false;
  return true;
}

VarContext extract_vars(const std::vector<const BindingContext*>& ctxs) {
  VarContext out;
  for (auto* ctx : ctxs)
    for (auto& b : *ctx)
      if (b.elim.kind() == ExprKind::Var) out.emplace_back(b.elim.name(), b.type);
  return out;
}

VarContext extract_vars(const BindingContext& ctx) { return extract_vars(std::vector<const BindingContext*>{&ctx}); }

}  // namespace prodsynth
