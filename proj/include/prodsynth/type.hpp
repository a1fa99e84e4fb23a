// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace prodsynth {

// Types: unit, named base types, arrows and products of arity >= 2.
class Type {
 public:
  enum class Kind { Unit, Base, Arrow, Product };

  Type();  // unit
  static Type unit();
  static Type base(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type product(std::vector<Type> comps);

  Kind kind() const;
  bool is_unit() const { return kind() == Kind::Unit; }
  bool is_base() const { return kind() == Kind::Base; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_product() const { return kind() == Kind::Product; }

  const std::string& name() const;
  const Type& domain() const;
  const Type& codomain() const;
  const std::vector<Type>& components() const;

  std::size_t hash() const;
  // node count of the type tree
  int tree_size() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  friend bool operator<(const Type& a, const Type& b);

  std::string str() const;

  struct Node;

 private:
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

}  // namespace prodsynth
