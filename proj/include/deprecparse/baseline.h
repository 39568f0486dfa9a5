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

// Split-on-"deprecated" heuristic: code entities before the first
// occurrence of the word are deprecated, the rest are replacements.

#ifndef DEPRECPARSE_BASELINE_H_
#define DEPRECPARSE_BASELINE_H_

#include <optional>

#include "deprecparse/code_expression.h"
#include "deprecparse/corpus.h"

namespace deprecparse {

// Index of the first non-code token spelled deprecate/deprecated/deprecates
// (any case).
std::optional<int> SplitToken(const AnnotatedExample &example);

CodeSets SplitBaseline(const AnnotatedExample &example);

}  // namespace deprecparse

#endif  // DEPRECPARSE_BASELINE_H_
