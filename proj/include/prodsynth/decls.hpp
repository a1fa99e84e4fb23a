// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prodsynth/type.hpp"

namespace prodsynth {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : InputError {
  int line, col;
  ParseError(const std::string& msg, int line, int col);
};

struct DuplicateConstructor : InputError {
  using InputError::InputError;
};

struct UnknownType : InputError {
  using InputError::InputError;
};

struct ContradictoryExamples : InputError {
  using InputError::InputError;
};

// Raised when an internal precondition is violated (e.g. malformed context).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct CtorDecl {
  std::string name;
  Type arg;
};

struct DataDecl {
  std::string name;
  std::vector<CtorDecl> ctors;
};

struct CtorInfo {
  Type arg;
  std::string result;
  int tag = 0;  // position within its datatype
};

// Indexed view over an ordered list of datatype declarations.
class ConstructorContext {
 public:
  ConstructorContext() = default;
  // Throws DuplicateConstructor / UnknownType.
  explicit ConstructorContext(std::vector<DataDecl> decls);

  const std::vector<DataDecl>& decls() const { return decls_; }
  const CtorInfo* ctor(const std::string& name) const;
  const DataDecl* data(const std::string& base) const;
  bool has_base(const std::string& base) const { return data(base) != nullptr; }
  // true when every Base inside t is declared
  bool closed(const Type& t) const;

  // Name of the datatype shaped like nat (O of unit | S of nat), if any.
  const std::optional<std::string>& nat_type() const { return nat_; }
  // For each datatype shaped like a list (Nil of unit | Cons of elem * self).
  struct ListShape {
    std::string type, nil, cons;
    Type elem;
  };
  const std::vector<ListShape>& list_types() const { return lists_; }
  const ListShape* list_by_type(const std::string& type) const;
  const ListShape* list_by_cons(const std::string& cons) const;

 private:
  std::vector<DataDecl> decls_;
  std::map<std::string, CtorInfo> ctors_;
  std::map<std::string, std::size_t> index_;
  std::optional<std::string> nat_;
  std::vector<ListShape> lists_;
};

}  // namespace prodsynth
