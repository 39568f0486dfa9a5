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

#ifndef DEPRECPARSE_TOKEN_H_
#define DEPRECPARSE_TOKEN_H_

#include <optional>
#include <string>
#include <vector>

namespace deprecparse {

// One token of a deprecation text. The annotation fields (lemma, pos, dep,
// head) are empty / -1 until a linguistic pipeline fills them in.
struct LinguisticToken {
  std::string surface;
  std::string lemma;
  std::string pos;  // coarse UD tag
  std::string dep;
  int head = -1;    // index of the syntactic head; == own index at a root
  bool is_code = false;
  std::optional<int> code_entity_id;

  friend bool operator==(const LinguisticToken &,
                         const LinguisticToken &) = default;
};

// True when the tokens carry dependency annotations usable by the feature
// templates: every token has a dep label and an in-range head.
bool HasAnnotations(const std::vector<LinguisticToken> &tokens);

}  // namespace deprecparse

#endif  // DEPRECPARSE_TOKEN_H_
