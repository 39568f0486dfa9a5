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

// Dataset-level glue: oracle runs, training instance collection, parsing,
// and cross-validation.

#ifndef DEPRECPARSE_PIPELINE_H_
#define DEPRECPARSE_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "deprecparse/corpus.h"
#include "deprecparse/decoder.h"
#include "deprecparse/evaluation.h"
#include "deprecparse/oracle.h"
#include "deprecparse/scorer.h"

namespace deprecparse {

struct OracleOutcome {
  std::string id;
  OracleResult result;
  bool skipped = false;  // no gold tree or no code entities
  std::string reason;
};

std::vector<OracleOutcome> RunOracle(
    const std::vector<AnnotatedExample> &examples, const OracleConfig &config,
    int jobs);

// {id, sequence, overlap, terminal, accepted, tree, skipped, reason}
std::string OracleOutcomeToJson(const OracleOutcome &outcome);
OracleOutcome OracleOutcomeFromJson(std::string_view line, size_t line_no);
std::vector<OracleOutcome> ReadOracleOutcomes(const std::string &path);

// Instances along the replay of `sequence` from the example's entities.
std::vector<TrainingInstance> ReplayInstances(const AnnotatedExample &example,
                                              const TransitionSequence &sequence);

// Instances from the accepted oracle sequences of examples[indices].
// `outcomes` is matched by id.
std::vector<TrainingInstance> CollectInstances(
    const std::vector<AnnotatedExample> &examples,
    const std::vector<OracleOutcome> &outcomes,
    const std::vector<size_t> &indices);

std::vector<size_t> AllIndices(size_t n);

// Trains on the given instances; an empty set yields an untrained model
// (uniform over legal transitions) with a warning in `report`.
LinearScorer TrainScorer(const std::vector<TrainingInstance> &instances,
                         const TrainingSettings &settings,
                         TrainingReport *report);

// Beam-decodes examples[indices]. Examples without code entities get a
// prediction without a tree.
std::vector<Prediction> ParseExamples(
    const TransitionScorer &scorer,
    const std::vector<AnnotatedExample> &examples,
    const std::vector<size_t> &indices, const DecodeConfig &config, int jobs);

// Seeded assignment of n items to k folds of near-equal size.
std::vector<int> AssignFolds(size_t n, int k, uint64_t seed);

struct CrossValidationResult {
  std::vector<Prediction> predictions;  // dataset order
  std::vector<int> folds;
  std::vector<TrainingReport> training;  // per fold
};

CrossValidationResult CrossValidate(
    const std::vector<AnnotatedExample> &examples,
    const std::vector<OracleOutcome> &outcomes, int folds, uint64_t seed,
    const TrainingSettings &settings, const DecodeConfig &config, int jobs);

}  // namespace deprecparse

#endif  // DEPRECPARSE_PIPELINE_H_
