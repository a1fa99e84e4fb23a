// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/type.hpp"

#include <cassert>
#include <functional>

namespace prodsynth {

struct Type::Node {
  Kind kind;
  std::string name;
  std::vector<Type> kids;
  std::size_t hash;
  int size;
};

static std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

static const std::shared_ptr<const Type::Node>& unit_node() {
  static const std::shared_ptr<const Type::Node> n = [] {
    auto p = std::make_shared<Type::Node>();
    p->kind = Type::Kind::Unit;
    p->hash = 0x51ed27;
    p->size = 1;
    return std::shared_ptr<const Type::Node>(p);
  }();
  return n;
}

Type::Type() : node_(unit_node()) {}

Type Type::unit() { return Type(); }

Type Type::base(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->hash = mix(0xba5e, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->size = 1;
  return Type(std::move(n));
}

Type Type::arrow(Type dom, Type cod) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Arrow;
  n->hash = mix(mix(0xa77, dom.hash()), cod.hash());
  n->size = 1 + dom.tree_size() + cod.tree_size();
  n->kids = {std::move(dom), std::move(cod)};
  return Type(std::move(n));
}

Type Type::product(std::vector<Type> comps) {
  assert(comps.size() >= 2);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  std::size_t h = 0x9d0;
  int s = 1;
  for (auto& c : comps) {
    h = mix(h, c.hash());
    s += c.tree_size();
  }
  n->hash = h;
  n->size = s;
  n->kids = std::move(comps);
  return Type(std::move(n));
}

Type::Kind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->name; }
const Type& Type::domain() const { return node_->kids.at(0); }
const Type& Type::codomain() const { return node_->kids.at(1); }
const std::vector<Type>& Type::components() const { return node_->kids; }
std::size_t Type::hash() const { return node_->hash; }
int Type::tree_size() const { return node_->size; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
      a.node_->size != b.node_->size)
    return false;
  return a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

bool operator<(const Type& a, const Type& b) { return a.str() < b.str(); }

static void render(const Type& t, std::string& out, int prec) {
  // prec 0: arrow allowed, 1: product component, 2: atom
  switch (t.kind()) {
    case Type::Kind::Unit: out += "unit"; return;
    case Type::Kind::Base: out += t.name(); return;
    case Type::Kind::Arrow:
      if (prec > 0) out += "(";
      render(t.domain(), out, 1);
      out += " -> ";
      render(t.codomain(), out, 0);
      if (prec > 0) out += ")";
      return;
    case Type::Kind::Product: {
      if (prec > 1) out += "(";
      bool first = true;
      for (auto& c : t.components()) {
        if (!first) out += " * ";
        first = false;
        render(c, out, 2);
      }
      if (prec > 1) out += ")";
      return;
    }
  }
}

std::string Type::str() const {
  std::string out;
  render(*this, out, 0);
  return out;
}

}  // namespace prodsynth
