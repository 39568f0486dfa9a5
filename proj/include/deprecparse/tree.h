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

// Semantic trees for API deprecations.
//
// A deprecation is represented by a tree conforming to the grammar
//
//   root -> depr [repl]       func -> <code> arg*
//   depr -> ns+               arg  -> <code>
//   repl -> ns+               attr -> <code>
//   ns   -> <code> [func | attr]
//
// Trees are written in a parenthesized notation, e.g.
//   (root (depr (ns urllib)) (repl (ns urllib.request)))

#ifndef DEPRECPARSE_TREE_H_
#define DEPRECPARSE_TREE_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deprecparse {

enum class Label { kRoot, kDepr, kRepl, kNs, kFunc, kArg, kAttr };

inline constexpr std::array<Label, 7> kAllLabels = {
    Label::kRoot, Label::kDepr, Label::kRepl, Label::kNs,
    Label::kFunc, Label::kArg,  Label::kAttr};

std::string_view LabelName(Label label);
std::optional<Label> LabelFromName(std::string_view name);

// True for ns, func, arg and attr, which carry a code string.
bool LabelHasCode(Label label);

// Code of an ns node standing in for a missing namespace. Rendered as-is in
// bracketed notation, omitted when a tree is turned back into code.
inline constexpr std::string_view kNoNamespace = "⟨none⟩";

struct SemTree {
  Label label = Label::kRoot;
  std::optional<std::string> code;
  std::vector<SemTree> children;

  // Provenance: index of the input code entity this node was built from (-1
  // for structural nodes), and whether the node is a copy made by a
  // reduce-each or reuse transition. Neither takes part in equality.
  int entity = -1;
  bool copied = false;

  static SemTree Leaf(Label label, std::string code, int entity = -1);
  static SemTree Node(Label label, std::vector<SemTree> children);
  static SemTree Node(Label label, std::string code,
                      std::vector<SemTree> children, int entity = -1);

  friend bool operator==(const SemTree &a, const SemTree &b) {
    return a.label == b.label && a.code == b.code && a.children == b.children;
  }
};

// Number of nodes.
size_t NodeCount(const SemTree &tree);

struct Violation {
  std::string path;  // e.g. "root/1:repl/0:ns"
  std::string message;

  friend bool operator==(const Violation &, const Violation &) = default;
};

// Every grammar violation in `tree`; empty iff the tree is well formed.
std::vector<Violation> Validate(const SemTree &tree);

// Single-line bracketed notation: "(label code child ...)". Codes that would
// not survive re-tokenization (whitespace, stray parentheses, quotes) are
// written as double-quoted strings with backslash escapes.
std::string ToBracketed(const SemTree &tree);

// Multi-line rendering with two-space indentation; parses back to the same
// tree.
std::string ToBracketedPretty(const SemTree &tree);

// Inverse of ToBracketed. Accepts any whitespace between tokens. Trailing
// "()" on func codes is dropped. Grammar is not checked here, use Validate.
// Throws SyntaxError or LabelError.
SemTree ParseBracketed(std::string_view text);

}  // namespace deprecparse

#endif  // DEPRECPARSE_TREE_H_
