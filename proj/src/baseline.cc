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

#include "deprecparse/baseline.h"

#include <cctype>

namespace deprecparse {

std::optional<int> SplitToken(const AnnotatedExample &example) {
  for (size_t i = 0; i < example.tokens.size(); ++i) {
    const LinguisticToken &t = example.tokens[i];
    if (t.is_code) continue;
    std::string w;
    for (char c : t.surface) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (w == "deprecate" || w == "deprecated" || w == "deprecates") {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

CodeSets SplitBaseline(const AnnotatedExample &example) {
  const std::optional<int> split = SplitToken(example);
  CodeSets out;
  for (const CodeSpan &s : example.code_spans) {
    if (!split || s.begin_token < *split) {
      out.depr.push_back(s.entity);
    } else {
      out.repl.push_back(s.entity);
    }
  }
  return out;
}

}  // namespace deprecparse
