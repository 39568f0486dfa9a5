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

// Transition scoring: the pluggable scorer contract and a multinomial
// logistic regression over hashed feature templates.

#ifndef DEPRECPARSE_SCORER_H_
#define DEPRECPARSE_SCORER_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "deprecparse/features.h"
#include "deprecparse/token.h"
#include "deprecparse/transition.h"

namespace deprecparse {

struct ScoredTransition {
  Transition transition;
  double log_prob = 0.0;
};

// Maps a configuration to a distribution over its legal transitions.
class TransitionScorer {
 public:
  virtual ~TransitionScorer() = default;

  // Log-probabilities over a subset of LegalTransitions(state), in
  // inventory order, whose exponentials sum to 1. Throws PreconditionError
  // when nothing is legal.
  virtual std::vector<ScoredTransition> Score(
      const ParserState &state,
      const std::vector<LinguisticToken> &tokens) const = 0;
};

// One supervised decision: features of a configuration, the transitions
// legal there, and the oracle's choice.
struct TrainingInstance {
  FeatureVector features;
  std::vector<Transition> legal;
  Transition gold = Transition::Shift();
};

TrainingInstance MakeInstance(const ParserState &state, const Transition &gold,
                              const std::vector<LinguisticToken> &tokens);

struct TrainingSettings {
  int hash_bits = 20;
  double learning_rate = 0.1;
  int epochs = 20;
  int batch_size = 32;
  double l2 = 1e-4;
  uint64_t seed = 0;

  // Throws Error when a field is out of range.
  void Check() const;
};

struct TrainingReport {
  double accuracy = 0.0;  // on the training instances after the last epoch
  double loss = 0.0;
  std::vector<std::string> warnings;
};

// Hashed feature: bucket index and sign.
struct HashedFeature {
  uint32_t bucket = 0;
  double value = 0.0;
};

class LinearScorer : public TransitionScorer {
 public:
  // An untrained model over `vocabulary`, all weights zero.
  LinearScorer(std::vector<Transition> vocabulary, TrainingSettings settings);

  // Fits a model on `instances` with mini-batch SGD. Throws
  // DegenerateInputError when `instances` is empty.
  static LinearScorer Train(const std::vector<TrainingInstance> &instances,
                            const TrainingSettings &settings,
                            TrainingReport *report = nullptr);

  std::vector<ScoredTransition> Score(
      const ParserState &state,
      const std::vector<LinguisticToken> &tokens) const override;

  // Same, from precomputed features and legal set.
  std::vector<ScoredTransition> ScoreFeatures(
      const FeatureVector &features,
      const std::vector<Transition> &legal) const;

  // Mean cross-entropy over `batch` plus (l2 / 2) * |W|^2 (bias excluded).
  double Loss(const std::vector<const TrainingInstance *> &batch) const;

  struct Gradient {
    std::vector<double> bias;
    std::unordered_map<uint32_t, std::vector<double>> rows;
  };
  // Analytic gradient of Loss.
  Gradient ComputeGradient(
      const std::vector<const TrainingInstance *> &batch) const;
  void ApplyGradient(const Gradient &gradient, double learning_rate);

  // Parameter access, mainly for gradient checking.
  double weight(uint32_t bucket, size_t cls) const;
  void set_weight(uint32_t bucket, size_t cls, double value);
  double bias(size_t cls) const { return bias_[cls]; }
  void set_bias(size_t cls, double value) { bias_[cls] = value; }

  std::vector<HashedFeature> Hash(const FeatureVector &features) const;

  const std::vector<Transition> &vocabulary() const { return vocabulary_; }
  const TrainingSettings &settings() const { return settings_; }
  uint32_t dimension() const { return uint32_t{1} << settings_.hash_bits; }

  // Text container with hexadecimal floats, so reloaded models score
  // bit-identically. Read throws SchemaError.
  void Write(std::ostream &out) const;
  static LinearScorer Read(std::istream &in);
  void Save(const std::string &path) const;
  static LinearScorer Load(const std::string &path);

 private:
  // Index into vocabulary_ per legal transition, -1 when unknown.
  std::vector<int> Classes(const std::vector<Transition> &legal) const;
  // Log-softmax over the known classes in `classes`.
  std::vector<double> LogProbs(const std::vector<HashedFeature> &x,
                               const std::vector<int> &classes) const;

  std::vector<Transition> vocabulary_;
  std::unordered_map<std::string, int> class_index_;
  TrainingSettings settings_;
  std::vector<double> bias_;
  std::unordered_map<uint32_t, std::vector<double>> rows_;
};

// Stable 64-bit FNV-1a, independent of the standard library's std::hash.
uint64_t Fnv1a64(std::string_view text);

}  // namespace deprecparse

#endif  // DEPRECPARSE_SCORER_H_
