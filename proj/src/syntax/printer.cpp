// SPDX-License-Identifier: Apache-2.0
#include <optional>

#include "prodsynth/syntax.hpp"

namespace prodsynth {

PrintOptions PrintOptions::from(const ConstructorContext& sigma) {
  PrintOptions o;
  o.numerals = sigma.nat_type().has_value();
  if (sigma.list_types().size() == 1) {
    o.nil = sigma.list_types()[0].nil;
    o.cons = sigma.list_types()[0].cons;
  }
  return o;
}

namespace {

enum Level { Top = 0, Chain = 1, Item = 2 };

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : o_(o) {}

  void expr(const Expr& e, Level lv, bool followed) {
    switch (e.kind()) {
      case ExprKind::Var:
        out += e.name();
        return;
      case ExprKind::Unit:
        out += "()";
        return;
      case ExprKind::Tuple: {
        out += "(";
        bool first = true;
        for (auto& c : e.components()) {
          if (!first) out += ", ";
          first = false;
          expr(c, Top, false);
        }
        out += ")";
        return;
      }
      case ExprKind::Proj:
        out += "#" + std::to_string(e.index()) + " ";
        expr(e.target(), Item, followed);
        return;
      case ExprKind::Ctor:
        ctor(e, followed);
        return;
      case ExprKind::App:
        if (lv == Item) {
          out += "(";
          expr(e, Top, false);
          out += ")";
          return;
        }
        expr(e.fn(), Chain, true);
        out += " ";
        expr(e.arg(), Item, followed);
        return;
      case ExprKind::Fix:
        if (lv != Top) return paren(e);
        out += "fix " + e.name() + " (" + e.param() + " : " + e.domain().str() +
               ") : " + e.codomain().str() + " = ";
        expr(e.body(), Top, false);
        return;
      case ExprKind::Match: {
        if (lv != Top) return paren(e);
        out += "match ";
        expr(e.scrutinee(), Top, false);
        out += " with";
        auto& bs = e.branches();
        for (std::size_t i = 0; i < bs.size(); ++i) {
          out += " | " + bs[i].ctor + " " + bs[i].var + " -> ";
          bool last = i + 1 == bs.size();
          auto k = bs[i].body.kind();
          if (!last && (k == ExprKind::Match || k == ExprKind::Fix))
            paren(bs[i].body);
          else
            expr(bs[i].body, Top, false);
        }
        return;
      }
      case ExprKind::PartialFn:
        partial(e);
        return;
    }
  }

  std::string out;

 private:
  void paren(const Expr& e) {
    out += "(";
    expr(e, Top, false);
    out += ")";
  }

  std::optional<long> numeral(const Expr& e) {
    long n = 0;
    const Expr* cur = &e;
    while (cur->kind() == ExprKind::Ctor && cur->name() == "S") {
      ++n;
      cur = &cur->arg();
    }
    if (cur->kind() == ExprKind::Ctor && cur->name() == "O" && cur->arg().kind() == ExprKind::Unit)
      return n;
    return std::nullopt;
  }

  bool closed_list(const Expr& e) {
    const Expr* cur = &e;
    while (cur->kind() == ExprKind::Ctor && cur->name() == o_.cons &&
           cur->arg().kind() == ExprKind::Tuple && cur->arg().components().size() == 2)
      cur = &cur->arg().components()[1];
    return cur->kind() == ExprKind::Ctor && cur->name() == o_.nil &&
           cur->arg().kind() == ExprKind::Unit;
  }

  void ctor(const Expr& e, bool followed) {
    if (o_.numerals) {
      if (auto n = numeral(e)) {
        out += std::to_string(*n);
        return;
      }
    }
    if (!o_.cons.empty() && (e.name() == o_.cons || e.name() == o_.nil) && closed_list(e)) {
      out += "[";
      const Expr* cur = &e;
      bool first = true;
      while (cur->name() == o_.cons) {
        if (!first) out += "; ";
        first = false;
        expr(cur->arg().components()[0], Top, false);
        cur = &cur->arg().components()[1];
      }
      out += "]";
      return;
    }
    if (e.arg().kind() == ExprKind::Unit) {
      if (followed)
        out += "(" + e.name() + ")";
      else
        out += e.name();
      return;
    }
    out += e.name() + " ";
    expr(e.arg(), Item, followed);
  }

  void partial(const Expr& e) {
    out += "{";
    bool first = true;
    for (auto& c : e.cases()) {
      out += first ? " " : " ; ";
      first = false;
      case_body(c);
    }
    out += first ? "}" : " }";
  }

  void case_body(const Case& c) {
    expr(c.input, Top, false);
    out += " => ";
    if (c.output.kind() == ExprKind::PartialFn && c.output.cases().size() == 1)
      case_body(c.output.cases()[0]);
    else
      expr(c.output, Top, false);
  }

  const PrintOptions& o_;
};

}  // namespace

std::string pretty_print(const Expr& e, const PrintOptions& opts) {
  Printer p(opts);
  p.expr(e, Top, false);
  return p.out;
}

}  // namespace prodsynth
