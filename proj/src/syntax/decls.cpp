// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/decls.hpp"

namespace prodsynth {

ParseError::ParseError(const std::string& msg, int l, int c)
    : InputError(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

ConstructorContext::ConstructorContext(std::vector<DataDecl> decls) : decls_(std::move(decls)) {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    if (!index_.emplace(decls_[i].name, i).second)
      throw DuplicateConstructor("type " + decls_[i].name + " declared twice");
  }
  for (auto& d : decls_) {
    int tag = 0;
    for (auto& c : d.ctors) {
      if (!ctors_.emplace(c.name, CtorInfo{c.arg, d.name, tag++}).second)
        throw DuplicateConstructor("constructor " + c.name + " declared twice");
    }
  }
  for (auto& d : decls_)
    for (auto& c : d.ctors)
      if (!closed(c.arg))
        throw UnknownType("unknown type in argument of constructor " + c.name);

  for (auto& d : decls_) {
    if (d.ctors.size() != 2) continue;
    auto& a = d.ctors[0];
    auto& b = d.ctors[1];
    if (d.name == "nat" && a.name == "O" && a.arg.is_unit() && b.name == "S" &&
        b.arg == Type::base("nat"))
      nat_ = d.name;
    if (a.arg.is_unit() && b.arg.is_product() && b.arg.components().size() == 2 &&
        b.arg.components()[1] == Type::base(d.name))
      lists_.push_back({d.name, a.name, b.name, b.arg.components()[0]});
  }
}

const CtorInfo* ConstructorContext::ctor(const std::string& name) const {
  auto it = ctors_.find(name);
  return it == ctors_.end() ? nullptr : &it->second;
}

const DataDecl* ConstructorContext::data(const std::string& base) const {
  auto it = index_.find(base);
  return it == index_.end() ? nullptr : &decls_[it->second];
}

bool ConstructorContext::closed(const Type& t) const {
  switch (t.kind()) {
    case Type::Kind::Unit: return true;
    case Type::Kind::Base: return has_base(t.name());
    case Type::Kind::Arrow: return closed(t.domain()) && closed(t.codomain());
    case Type::Kind::Product:
      for (auto& c : t.components())
        if (!closed(c)) return false;
      return true;
  }
  return false;
}

const ConstructorContext::ListShape* ConstructorContext::list_by_type(const std::string& type) const {
  for (auto& l : lists_)
    if (l.type == type) return &l;
  return nullptr;
}

const ConstructorContext::ListShape* ConstructorContext::list_by_cons(const std::string& cons) const {
  for (auto& l : lists_)
    if (l.cons == cons || l.nil == cons) return &l;
  return nullptr;
}

}  // namespace prodsynth
