// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/focusing.hpp"

namespace prodsynth {

int type_potential(const Type& t) { return t.tree_size(); }

int potential(const BindingContext& omega) {
  int p = 0;
  for (auto& b : omega) p += type_potential(b.type);
  return p;
}

std::optional<FocusState> focus_step(const FocusState& s, FocusEvent* event, FocusOrder order) {
  if (s.omega.empty()) return std::nullopt;
  FocusState out = s;
  std::size_t at = order == FocusOrder::Fifo ? 0 : out.omega.size() - 1;
  Binding b = out.omega[at];
  out.omega.erase(out.omega.begin() + static_cast<std::ptrdiff_t>(at));
  const char* rule = nullptr;
  switch (b.type.kind()) {
    case Type::Kind::Unit:
      rule = "Focus-Unit";
      out.gamma.push_back(b);
      break;
    case Type::Kind::Base:
      rule = "Focus-Base";
      out.gamma.push_back(b);
      break;
    case Type::Kind::Arrow:
      rule = "Focus-Fun";
      out.gamma.push_back(b);
      break;
    case Type::Kind::Product: {
      rule = "Focus-Tuple";
      auto& comps = b.type.components();
      out.delta.push_back(b);
      for (std::size_t j = 0; j < comps.size(); ++j)
        out.omega.push_back({Expr::proj(static_cast<int>(j + 1), b.elim), comps[j]});
      for (auto& w : out.worlds) {
        for (std::size_t k = 0; k < w.env.size(); ++k) {
          if (w.env[k].first != b.elim) continue;
          Expr v = w.env[k].second;
          if (v.kind() != ExprKind::Tuple || v.components().size() != comps.size())
            throw MalformedWorld("example for " + pretty_print(b.elim) + " is not a " +
                                 std::to_string(comps.size()) + "-tuple");
          w.env.erase(w.env.begin() + static_cast<std::ptrdiff_t>(k));
          for (std::size_t j = 0; j < comps.size(); ++j)
            w.env.emplace_back(Expr::proj(static_cast<int>(j + 1), b.elim), v.components()[j]);
          break;
        }
      }
      break;
    }
  }
  if (event) *event = {rule, b};
  return out;
}

FocusState focus_closure(const FocusState& s, std::vector<FocusEvent>* events, FocusOrder order) {
  FocusState cur = s;
  FocusEvent ev;
  while (auto next = focus_step(cur, &ev, order)) {
    if (events) events->push_back(ev);
    cur = std::move(*next);
  }
  return cur;
}

std::string describe(const FocusEvent& ev) {
  return ev.rule + " " + pretty_print(ev.moved.elim) + " : " + ev.moved.type.str();
}

}  // namespace prodsynth
