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

// Reference data shared by the test suites: the MultiIndex example tree and
// its 13-step derivation with every intermediate configuration.

#ifndef DEPRECPARSE_TESTS_GOLDEN_H_
#define DEPRECPARSE_TESTS_GOLDEN_H_

#include <string>
#include <vector>

#include "deprecparse/transition.h"
#include "deprecparse/tree.h"

namespace deprecparse::golden {

inline const char kMultiIndexListing[] = R"tree((root
  (depr
    (ns MultiIndex
      (func copy() (arg levels)))
    (ns MultiIndex
      (func copy() (arg codes))))
  (repl
    (ns MultiIndex
      (func set_levels() (arg levels)))
    (ns MultiIndex
      (func set_codes() (arg codes))))))tree";

inline SemTree MultiIndexTree() {
  auto entry = [](const char *func, const char *arg) {
    return SemTree::Node(
        Label::kNs, "MultiIndex",
        {SemTree::Node(Label::kFunc, func, {SemTree::Leaf(Label::kArg, arg)})});
  };
  return SemTree::Node(
      Label::kRoot,
      {SemTree::Node(Label::kDepr,
                     {entry("copy", "levels"), entry("copy", "codes")}),
       SemTree::Node(Label::kRepl, {entry("set_levels", "levels"),
                                    entry("set_codes", "codes")})});
}

inline std::vector<CodeEntity> MultiIndexEntities() {
  return MakeEntities(
      {"levels", "codes", "MultiIndex.copy", "set_levels", "set_codes"});
}

struct DerivationRow {
  const char *transition;
  const char *buffer_front;  // "" when the buffer is empty
  const char *stack;
};

#define DEPR_                                                  \
  "(depr (ns MultiIndex (func copy (arg levels))) (ns MultiIndex " \
  "(func copy (arg codes))))"

inline const std::vector<DerivationRow> &MultiIndexDerivation() {
  static const std::vector<DerivationRow> rows = {
      {"shift()", "codes", "[levels]"},
      {"unary_x(arg)", "codes", "[(arg levels)]"},
      {"shift()", "MultiIndex.copy", "[(arg levels), codes]"},
      {"unary_x(arg)", "MultiIndex.copy", "[(arg levels), (arg codes)]"},
      {"shift()", "set_levels", "[(arg levels), (arg codes), MultiIndex.copy]"},
      {"reduce_lx_each(func)", "set_levels",
       "[(ns MultiIndex (func copy (arg levels))), "
       "(ns MultiIndex (func copy (arg codes)))]"},
      {"reduce_rx(depr)", "set_levels", "[" DEPR_ "]"},
      {"shift()", "set_codes", "[" DEPR_ ", set_levels]"},
      {"shift()", "", "[" DEPR_ ", set_levels, set_codes]"},
      {"reuse_args_rx()", "",
       "[" DEPR_ ", (func set_levels (arg levels)), "
       "(func set_codes (arg codes))]"},
      {"reuse_ns_rx()", "",
       "[" DEPR_ ", (ns MultiIndex (func set_levels (arg levels))), "
       "(ns MultiIndex (func set_codes (arg codes)))]"},
      {"reduce_rx(repl)", "",
       "[" DEPR_ ", (repl (ns MultiIndex (func set_levels (arg levels))) "
       "(ns MultiIndex (func set_codes (arg codes))))]"},
      {"reduce_rx(root)", "",
       "[(root " DEPR_ " (repl (ns MultiIndex (func set_levels (arg levels))) "
       "(ns MultiIndex (func set_codes (arg codes)))))]"},
  };
  return rows;
}

#undef DEPR_

inline TransitionSequence MultiIndexSequence() {
  TransitionSequence seq;
  for (const DerivationRow &row : MultiIndexDerivation()) {
    seq.push_back(Transition::Decode(row.transition));
  }
  return seq;
}

}  // namespace deprecparse::golden

#endif  // DEPRECPARSE_TESTS_GOLDEN_H_
