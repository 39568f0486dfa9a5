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

// Code expressions as annotated in deprecation records, e.g.
// "MultiIndex.copy(levels)", and their mapping onto semantic trees.

#ifndef DEPRECPARSE_CODE_EXPRESSION_H_
#define DEPRECPARSE_CODE_EXPRESSION_H_

#include <string>
#include <string_view>
#include <vector>

#include "deprecparse/tree.h"

namespace deprecparse {

struct CodeExpression {
  std::string raw;
  std::vector<std::string> namespace_segments;  // dotted prefix, split
  std::string name;                              // final segment
  std::vector<std::string> args;                 // verbatim, e.g. "lower=x"
  bool call = false;                             // had a parenthesized part

  // Throws ConversionError naming `raw` when it cannot be decomposed.
  static CodeExpression Parse(std::string_view raw);

  std::string Namespace() const;  // segments joined with '.'
  std::string Render() const;
};

// Removes all whitespace and one trailing "()"; the canonical form used by
// set-based metrics.
std::string NormalizeCode(std::string_view code);

// Builds the root/depr/repl tree for annotated code expressions. The final
// dotted segment becomes a func when called or given arguments; otherwise it
// is an attr when the segment before it looks like a class name (leading
// upper-case letter), and the whole path is a bare ns in the remaining
// cases. Callables without a namespace get an ns with kNoNamespace.
SemTree AnnotationToTree(const std::vector<CodeExpression> &depr,
                         const std::vector<CodeExpression> &repl);

// Convenience overload parsing each raw string first.
SemTree AnnotationToTree(const std::vector<std::string> &depr,
                         const std::vector<std::string> &repl);

struct CodeSets {
  std::vector<std::string> depr;
  std::vector<std::string> repl;
};

// Renders the code expressions encoded by a (possibly ill-formed) tree, one
// per ns under depr/repl. kNoNamespace prefixes are omitted.
CodeSets TreeToCodeExpressions(const SemTree &tree);

// Constituents built from a single code entity. Every created node records
// `entity` as its provenance.
SemTree EntityToNamespace(std::string_view text, int entity);
SemTree EntityToArg(std::string_view text, int entity);
// `label` is kFunc or kAttr. A dotted prefix becomes an ns wrapper, so the
// result is rooted at ns for "A.f()" and at func for "f()".
SemTree EntityToCallable(std::string_view text, Label label, int entity);

}  // namespace deprecparse

#endif  // DEPRECPARSE_CODE_EXPRESSION_H_
