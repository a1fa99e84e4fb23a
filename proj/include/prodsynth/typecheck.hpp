// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodsynth/syntax.hpp"

namespace prodsynth {

// Variable typing context; later entries shadow earlier ones.
using VarContext = std::vector<std::pair<std::string, Type>>;

// An elimination form bound to a type (entries of the usable, auxiliary and
// focusing contexts).
struct Binding {
  Expr elim;
  Type type;
};
using BindingContext = std::vector<Binding>;

bool check(const ConstructorContext& sigma, const VarContext& vars, const Expr& e, const Type& t);
std::optional<Type> synth_type(const ConstructorContext& sigma, const VarContext& vars, const Expr& e);

bool ctx_well_formed(const ConstructorContext& sigma, const BindingContext& ctx, const VarContext& vars);

// Entries whose elimination form is a bare variable, in order.
VarContext extract_vars(const std::vector<const BindingContext*>& ctxs);
VarContext extract_vars(const BindingContext& ctx);

}  // namespace prodsynth
