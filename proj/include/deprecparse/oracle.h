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

// Search for gold transition sequences.
//
// There is no deterministic oracle for this transition system. Instead a
// level-synchronous beam over transition sequences is run from the initial
// configuration, ranking configurations by the tree overlap between the
// constituents on their stack and the gold tree.

#ifndef DEPRECPARSE_ORACLE_H_
#define DEPRECPARSE_ORACLE_H_

#include <vector>

#include "deprecparse/transition.h"
#include "deprecparse/tree.h"

namespace deprecparse {

struct OracleConfig {
  int max_breadth = 100;   // configurations kept per level
  int max_depth = 15;      // maximum sequence length
  double accept_threshold = 0.90;

  // Throws Error when a field is out of range.
  void Check() const;
};

struct OracleResult {
  TransitionSequence sequence;
  SemTree tree;          // tree derived by `sequence`
  double overlap = 0.0;  // tree F1 against the gold tree
  bool terminal = false;
  bool accepted = false;  // terminal and overlap >= accept_threshold
};

// Returns the best terminal derivation found within max_depth steps or, if
// none is reached, the best partial one with its stack joined under a root.
// Ties are broken by shorter sequence, then by the encoded sequence string.
// Throws DegenerateInputError for an empty entity list.
OracleResult FindGoldSequence(const std::vector<CodeEntity> &entities,
                              const SemTree &gold, const OracleConfig &config);

}  // namespace deprecparse

#endif  // DEPRECPARSE_ORACLE_H_
