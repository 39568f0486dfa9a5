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

// Beam-search decoding with a transition scorer.

#ifndef DEPRECPARSE_DECODER_H_
#define DEPRECPARSE_DECODER_H_

#include <vector>

#include "deprecparse/scorer.h"
#include "deprecparse/token.h"
#include "deprecparse/transition.h"
#include "deprecparse/tree.h"

namespace deprecparse {

struct DecodeConfig {
  int beam_width = 10;
  int max_steps = 0;  // 0: 4 * number of entities + 8

  // Throws Error when a field is out of range.
  void Check() const;
};

struct DecodeResult {
  SemTree tree;
  // Cumulative log-probability of the returned parse; minus infinity when
  // partial.
  double log_prob = 0.0;
  // Cumulative log-probability of the returned hypothesis, terminal or not.
  double running_log_prob = 0.0;
  // No terminal configuration was reached; `tree` joins the best partial
  // stack under a root.
  bool partial = false;
  TransitionSequence sequence;
};

int DefaultMaxSteps(size_t entity_count);

// Throws DegenerateInputError for an empty entity list.
DecodeResult BeamParse(const TransitionScorer &scorer,
                       const std::vector<CodeEntity> &entities,
                       const std::vector<LinguisticToken> &tokens,
                       const DecodeConfig &config);

}  // namespace deprecparse

#endif  // DEPRECPARSE_DECODER_H_
