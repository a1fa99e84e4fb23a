// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prodsynth/eval.hpp"
#include "prodsynth/typecheck.hpp"

namespace prodsynth {

struct World {
  ExampleContext env;  // elimination form -> example
  Expr goal;
};

struct FocusState {
  BindingContext gamma;  // usable entries
  BindingContext delta;  // focused (retired) product entries
  BindingContext omega;  // entries waiting to be focused
  std::vector<World> worlds;
};

struct MalformedWorld : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FocusEvent {
  std::string rule;  // Focus-Unit, Focus-Base, Focus-Fun, Focus-Tuple
  Binding moved;
};

enum class FocusOrder { Fifo, Lifo };

// One step on the first (Fifo) or last (Lifo) entry of omega; nullopt when
// omega is empty.
std::optional<FocusState> focus_step(const FocusState& s, FocusEvent* event = nullptr,
                                     FocusOrder order = FocusOrder::Fifo);

FocusState focus_closure(const FocusState& s, std::vector<FocusEvent>* events = nullptr,
                         FocusOrder order = FocusOrder::Fifo);

// Node count of the type tree.
int type_potential(const Type& t);
int potential(const BindingContext& omega);

std::string describe(const FocusEvent& ev);

}  // namespace prodsynth
