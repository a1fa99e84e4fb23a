// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "prodsynth/type.hpp"

namespace prodsynth {

enum class ExprKind { Var, Unit, Tuple, Proj, Ctor, Fix, App, Match, PartialFn };

struct ExprNode;
struct Branch;
struct Case;

// Immutable expression handle. Hash and ast size are cached at construction.
class Expr {
 public:
  Expr() = default;

  static Expr var(std::string name);
  static Expr unit();
  static Expr tuple(std::vector<Expr> comps);
  static Expr proj(int index, Expr target);
  static Expr ctor(std::string name, Expr arg);
  static Expr fix(std::string fname, std::string xname, Type dom, Type cod, Expr body);
  static Expr app(Expr fn, Expr arg);
  static Expr match(Expr scrutinee, std::vector<Branch> branches);
  static Expr partial(std::vector<Case> cases);

  explicit operator bool() const { return node_ != nullptr; }
  ExprKind kind() const;

  // Var name, Ctor name, Fix function name
  const std::string& name() const;
  // Fix parameter name
  const std::string& param() const;
  int index() const;
  const Type& domain() const;
  const Type& codomain() const;
  const Expr& body() const;      // Fix body
  const Expr& arg() const;       // Ctor argument, App argument
  const Expr& fn() const;        // App function
  const Expr& target() const;    // Proj target
  const Expr& scrutinee() const;
  const std::vector<Expr>& components() const;
  const std::vector<Branch>& branches() const;
  const std::vector<Case>& cases() const;

  std::size_t hash() const;
  int size() const;
  const ExprNode* raw() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  friend struct ExprBuilder;
  std::shared_ptr<const ExprNode> node_;
};

struct Branch {
  std::string ctor;
  std::string var;
  Expr body;
};

struct Case {
  Expr input;
  Expr output;
};

struct ExprNode {
  ExprKind kind;
  std::string name;
  std::string name2;
  int index = 0;
  Type t1, t2;
  std::vector<Expr> kids;
  std::vector<Branch> branches;
  std::vector<Case> cases;
  std::size_t hash = 0;
  int size = 0;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Number of AST nodes. Fix annotations count zero.
int ast_size(const Expr& e);

bool is_value(const Expr& e);
// unit, tuples, constructors and partial functions only
bool is_example(const Expr& e);
bool is_var(const Expr& e);

// Elim ::= Var | App(Elim, Intro) | Proj(k, Elim)
bool is_normal_elim(const Expr& e);
// Intro ::= Elim | () | Tuple | Ctor | Fix | Match(Elim, Intro...)
bool is_normal_intro(const Expr& e);

enum class NormalSort { Elim, Intro, NotNormal };
NormalSort classify(const Expr& e);

// Replace free occurrences of variables. Bound names shadow.
Expr subst(const Expr& e, const std::string& name, const Expr& replacement);
// Replace every occurrence of the subterm key (structurally equal) by replacement.
Expr replace_subterm(const Expr& e, const Expr& key, const Expr& replacement);
bool occurs_free(const Expr& e, const std::string& name);
// Root variable of a chain of projections and applications in head position.
const Expr* elim_root(const Expr& e);

}  // namespace prodsynth
