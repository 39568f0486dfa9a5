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

#include "deprecparse/token.h"

namespace deprecparse {

bool HasAnnotations(const std::vector<LinguisticToken> &tokens) {
  if (tokens.empty()) return false;
  for (const LinguisticToken &t : tokens) {
    if (t.dep.empty() || t.head < 0 ||
        t.head >= static_cast<int>(tokens.size())) {
      return false;
    }
  }
  return true;
}

}  // namespace deprecparse
