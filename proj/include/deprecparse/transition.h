/* Copyright 2026 The deprecparse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Transition system for deprecation parsing.
//
// A configuration holds a buffer of unconsumed code entities and a stack of
// partial constituents. Actions:
//  - shift: moves the next entity onto the stack.
//  - unary_x(L): raises the top item to an L constituent.
//  - reduce_rx(L) / reduce_lx(L): combines the top items under L. For ns and
//    func the head is below its dependents (rx) or on top of them (lx). For
//    root/depr/repl the maximal run of fitting items is taken, in stack
//    order (rx) or reversed (lx).
//  - reduce_rx_each(L) / reduce_lx_each(L): combines one head with each of
//    a run of >= 2 same-label dependents, yielding one constituent per
//    dependent, each with its own copy of the head.
//  - reuse_args_rx, reuse_ns_rx, reuse_funcs_rx: complete the k items above
//    a finished depr constituent by copying, position by position, the
//    arguments, namespaces or functions of the k deprecated entries.

#ifndef DEPRECPARSE_TRANSITION_H_
#define DEPRECPARSE_TRANSITION_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deprecparse/tree.h"

namespace deprecparse {

// A span of documentation text marked up as code.
struct CodeEntity {
  std::string text;
  int index = 0;  // position in the input entity list
  int token_begin = -1;
  int token_end = -1;  // exclusive

  friend bool operator==(const CodeEntity &, const CodeEntity &) = default;
};

// Builds entities 0..n-1 from plain strings, without token spans.
std::vector<CodeEntity> MakeEntities(const std::vector<std::string> &texts);

enum class TransitionKind {
  kShift,
  kUnary,
  kReduceRight,
  kReduceLeft,
  kReduceRightEach,
  kReduceLeftEach,
  kReuseArgs,
  kReuseNs,
  kReuseFuncs,
};

class Transition {
 public:
  static Transition Shift() { return Transition(TransitionKind::kShift); }
  static Transition Unary(Label l) { return {TransitionKind::kUnary, l}; }
  static Transition ReduceRight(Label l) {
    return {TransitionKind::kReduceRight, l};
  }
  static Transition ReduceLeft(Label l) {
    return {TransitionKind::kReduceLeft, l};
  }
  static Transition ReduceRightEach(Label l) {
    return {TransitionKind::kReduceRightEach, l};
  }
  static Transition ReduceLeftEach(Label l) {
    return {TransitionKind::kReduceLeftEach, l};
  }
  static Transition ReuseArgs() { return Transition(TransitionKind::kReuseArgs); }
  static Transition ReuseNs() { return Transition(TransitionKind::kReuseNs); }
  static Transition ReuseFuncs() {
    return Transition(TransitionKind::kReuseFuncs);
  }

  // Throws Error if the label presence does not match the kind.
  static Transition Make(TransitionKind kind, std::optional<Label> label);

  // "kind(label)" or "kind()", e.g. "reduce_lx_each(func)", "shift()".
  std::string Encode() const;
  // Throws Error on anything Encode cannot produce.
  static Transition Decode(std::string_view text);

  TransitionKind kind() const { return kind_; }
  std::optional<Label> label() const { return label_; }

  friend bool operator==(const Transition &, const Transition &) = default;

 private:
  explicit Transition(TransitionKind kind) : kind_(kind) {}
  Transition(TransitionKind kind, Label label) : kind_(kind), label_(label) {}

  TransitionKind kind_;
  std::optional<Label> label_;
};

using TransitionSequence = std::vector<Transition>;

std::string EncodeSequence(const TransitionSequence &seq);  // space separated
TransitionSequence DecodeSequence(std::string_view text);

// Every kind/label combination that can be legal in some state, in a fixed
// order.
const std::vector<Transition> &TransitionInventory();

// A stack element: a bare entity or a (possibly incomplete) constituent.
using StackItem = std::variant<CodeEntity, SemTree>;

// Immutable parser configuration.
class ParserState {
 public:
  ParserState() : ParserState(std::vector<CodeEntity>{}) {}
  explicit ParserState(std::vector<CodeEntity> entities);

  const std::vector<CodeEntity> &entities() const { return *entities_; }
  std::span<const CodeEntity> buffer() const {
    return std::span<const CodeEntity>(*entities_).subspan(next_);
  }
  const std::vector<StackItem> &stack() const { return stack_; }
  const std::vector<Transition> &history() const { return history_; }

  // Display forms: "[a, b]" and "[(arg levels), codes]".
  std::string BufferString() const;
  std::string StackString() const;
  // Identity of (buffer, stack) for deduplication.
  std::string Key() const;

 private:
  friend ParserState Apply(const ParserState &, const Transition &);

  std::shared_ptr<const std::vector<CodeEntity>> entities_;
  size_t next_ = 0;
  std::vector<StackItem> stack_;
  std::vector<Transition> history_;
};

ParserState InitialState(std::vector<CodeEntity> entities);

// Reason `t` is illegal in `state`, or nullopt when it is legal.
std::optional<std::string> WhyIllegal(const ParserState &state,
                                      const Transition &t);

// Legal transitions in TransitionInventory order.
std::vector<Transition> LegalTransitions(const ParserState &state);

// Throws PreconditionError naming the failed predicate if `t` is illegal.
ParserState Apply(const ParserState &state, const Transition &t);

bool IsTerminal(const ParserState &state);

// Replays `seq` from the initial state and returns the root tree. Throws
// PreconditionError for an illegal step (with its index) or when the final
// state is not terminal.
SemTree Run(const std::vector<CodeEntity> &entities,
            const TransitionSequence &seq);

// Display form of a stack item.
std::string ItemString(const StackItem &item);

// Constituents on the stack joined under a root node; bare entities are
// dropped. A lone root constituent is returned as is.
SemTree StackForest(const ParserState &state);

}  // namespace deprecparse

#endif  // DEPRECPARSE_TRANSITION_H_
