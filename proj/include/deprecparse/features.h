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

// Feature templates over parser configurations.
//
// Three elements are described: the front of the buffer (Q0) and the two
// topmost stack items (S0, S1), each anchored at a governing token of the
// text. Keys have the form "group:template=value", where the group part of
// token templates also carries the height of a constituent ("S0:L3").

#ifndef DEPRECPARSE_FEATURES_H_
#define DEPRECPARSE_FEATURES_H_

#include <optional>
#include <string>
#include <vector>

#include "deprecparse/token.h"
#include "deprecparse/transition.h"

namespace deprecparse {

// Sorted, duplicate-free feature keys.
using FeatureVector = std::vector<std::string>;

inline constexpr int kMaxChildFeatures = 3;
inline constexpr int kMaxPathHops = 8;

// Token that anchors a code entity: the syntactic head of its token span
// when annotated, otherwise the first token of the span. Falls back to the
// first token tagged with the entity's id.
std::optional<int> GoverningToken(const CodeEntity &entity,
                                  const std::vector<LinguisticToken> &tokens);

// Without annotations only the lemma (lower-cased surface), constituent
// label templates, and path_lemma over the linear token order fire.
FeatureVector ExtractFeatures(const ParserState &state,
                              const std::vector<LinguisticToken> &tokens);

}  // namespace deprecparse

#endif  // DEPRECPARSE_FEATURES_H_
