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

#include "deprecparse/scorer.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

constexpr char kModelMagic[] = "deprecparse-linear-scorer";
constexpr int kModelVersion = 1;

std::string Hex(double v) { return fmt::format("{:a}", v); }

}  // namespace

uint64_t Fnv1a64(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void TrainingSettings::Check() const {
  if (hash_bits < 1 || hash_bits > 30) {
    throw Error("hash_bits must be in [1, 30]");
  }
  if (!(learning_rate > 0)) throw Error("learning_rate must be positive");
  if (epochs < 0) throw Error("epochs must be non-negative");
  if (batch_size < 1) throw Error("batch_size must be at least 1");
  if (!(l2 >= 0)) throw Error("l2 must be non-negative");
}

TrainingInstance MakeInstance(const ParserState &state, const Transition &gold,
                              const std::vector<LinguisticToken> &tokens) {
  return {ExtractFeatures(state, tokens), LegalTransitions(state), gold};
}

LinearScorer::LinearScorer(std::vector<Transition> vocabulary,
                           TrainingSettings settings)
    : vocabulary_(std::move(vocabulary)),
      settings_(settings),
      bias_(vocabulary_.size(), 0.0) {
  settings_.Check();
  for (size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!class_index_.emplace(vocabulary_[i].Encode(), static_cast<int>(i))
             .second) {
      throw Error("duplicate transition in vocabulary: " +
                  vocabulary_[i].Encode());
    }
  }
}

std::vector<HashedFeature> LinearScorer::Hash(
    const FeatureVector &features) const {
  std::map<uint32_t, double> acc;
  const uint64_t mask = dimension() - 1;
  for (const std::string &key : features) {
    const uint64_t h = Fnv1a64(key);
    acc[static_cast<uint32_t>(h & mask)] += (h >> 63) ? -1.0 : 1.0;
  }
  std::vector<HashedFeature> out;
  for (const auto &[bucket, value] : acc) {
    if (value != 0.0) out.push_back({bucket, value});
  }
  return out;
}

std::vector<int> LinearScorer::Classes(
    const std::vector<Transition> &legal) const {
  std::vector<int> out;
  out.reserve(legal.size());
  for (const Transition &t : legal) {
    auto it = class_index_.find(t.Encode());
    out.push_back(it == class_index_.end() ? -1 : it->second);
  }
  return out;
}

std::vector<double> LinearScorer::LogProbs(
    const std::vector<HashedFeature> &x,
    const std::vector<int> &classes) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> z(classes.size(), kNegInf);
  double max_z = kNegInf;
  for (size_t i = 0; i < classes.size(); ++i) {
    const int c = classes[i];
    if (c < 0) continue;
    double v = bias_[c];
    for (const HashedFeature &f : x) {
      auto it = rows_.find(f.bucket);
      if (it != rows_.end()) v += f.value * it->second[c];
    }
    z[i] = v;
    max_z = std::max(max_z, v);
  }
  double sum = 0.0;
  for (double v : z) {
    if (v != kNegInf) sum += std::exp(v - max_z);
  }
  const double log_norm = max_z + std::log(sum);
  for (double &v : z) {
    if (v != kNegInf) v -= log_norm;
  }
  return z;
}

std::vector<ScoredTransition> LinearScorer::ScoreFeatures(
    const FeatureVector &features, const std::vector<Transition> &legal) const {
  if (legal.empty()) {
    throw PreconditionError("no legal transitions to score");
  }
  const std::vector<int> classes = Classes(legal);
  std::vector<ScoredTransition> out;
  if (std::all_of(classes.begin(), classes.end(),
                  [](int c) { return c < 0; })) {
    // Nothing the model knows is legal here.
    const double lp = -std::log(static_cast<double>(legal.size()));
    for (const Transition &t : legal) out.push_back({t, lp});
    return out;
  }
  const std::vector<double> lp = LogProbs(Hash(features), classes);
  for (size_t i = 0; i < legal.size(); ++i) {
    if (classes[i] >= 0) out.push_back({legal[i], lp[i]});
  }
  return out;
}

std::vector<ScoredTransition> LinearScorer::Score(
    const ParserState &state,
    const std::vector<LinguisticToken> &tokens) const {
  const std::vector<Transition> legal = LegalTransitions(state);
  if (legal.empty()) {
    throw PreconditionError("no legal transitions in state " +
                            state.StackString());
  }
  return ScoreFeatures(ExtractFeatures(state, tokens), legal);
}

double LinearScorer::Loss(
    const std::vector<const TrainingInstance *> &batch) const {
  double loss = 0.0;
  for (const TrainingInstance *inst : batch) {
    const std::vector<int> classes = Classes(inst->legal);
    const auto gold = class_index_.find(inst->gold.Encode());
    if (gold == class_index_.end()) continue;
    const std::vector<double> lp = LogProbs(Hash(inst->features), classes);
    for (size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == gold->second) loss -= lp[i];
    }
  }
  if (!batch.empty()) loss /= static_cast<double>(batch.size());
  double norm = 0.0;
  for (const auto &[bucket, row] : rows_) {
    for (double w : row) norm += w * w;
  }
  return loss + 0.5 * settings_.l2 * norm;
}

LinearScorer::Gradient LinearScorer::ComputeGradient(
    const std::vector<const TrainingInstance *> &batch) const {
  Gradient g;
  const size_t v = vocabulary_.size();
  g.bias.assign(v, 0.0);
  const double scale = batch.empty() ? 0.0 : 1.0 / batch.size();
  for (const TrainingInstance *inst : batch) {
    const auto gold = class_index_.find(inst->gold.Encode());
    if (gold == class_index_.end()) continue;
    const std::vector<int> classes = Classes(inst->legal);
    const std::vector<HashedFeature> x = Hash(inst->features);
    const std::vector<double> lp = LogProbs(x, classes);
    for (size_t i = 0; i < classes.size(); ++i) {
      const int c = classes[i];
      if (c < 0) continue;
      const double d =
          scale * (std::exp(lp[i]) - (c == gold->second ? 1.0 : 0.0));
      g.bias[c] += d;
      for (const HashedFeature &f : x) {
        auto &row = g.rows[f.bucket];
        if (row.empty()) row.assign(v, 0.0);
        row[c] += f.value * d;
      }
    }
  }
  if (settings_.l2 > 0) {
    for (const auto &[bucket, row] : rows_) {
      auto &grow = g.rows[bucket];
      if (grow.empty()) grow.assign(v, 0.0);
      for (size_t c = 0; c < v; ++c) grow[c] += settings_.l2 * row[c];
    }
  }
  return g;
}

void LinearScorer::ApplyGradient(const Gradient &gradient,
                                 double learning_rate) {
  for (size_t c = 0; c < bias_.size(); ++c) {
    bias_[c] -= learning_rate * gradient.bias[c];
  }
  for (const auto &[bucket, grow] : gradient.rows) {
    auto &row = rows_[bucket];
    if (row.empty()) row.assign(vocabulary_.size(), 0.0);
    for (size_t c = 0; c < row.size(); ++c) {
      row[c] -= learning_rate * grow[c];
    }
  }
}

double LinearScorer::weight(uint32_t bucket, size_t cls) const {
  auto it = rows_.find(bucket);
  return it == rows_.end() ? 0.0 : it->second[cls];
}

void LinearScorer::set_weight(uint32_t bucket, size_t cls, double value) {
  auto &row = rows_[bucket];
  if (row.empty()) row.assign(vocabulary_.size(), 0.0);
  row[cls] = value;
}

LinearScorer LinearScorer::Train(const std::vector<TrainingInstance> &instances,
                                 const TrainingSettings &settings,
                                 TrainingReport *report) {
  if (instances.empty()) {
    throw DegenerateInputError("cannot train on an empty set of instances");
  }
  std::set<std::string> encodings;
  for (const TrainingInstance &inst : instances) {
    encodings.insert(inst.gold.Encode());
  }
  std::vector<Transition> vocab;
  for (const std::string &e : encodings) vocab.push_back(Transition::Decode(e));
  LinearScorer model(std::move(vocab), settings);

  TrainingReport local;
  if (model.vocabulary_.size() == 1) {
    local.warnings.push_back("all training instances share the gold transition " +
                             model.vocabulary_[0].Encode());
  }

  std::vector<const TrainingInstance *> order;
  for (const TrainingInstance &inst : instances) order.push_back(&inst);
  std::mt19937_64 rng(settings.seed);
  for (int epoch = 0; epoch < settings.epochs; ++epoch) {
    // Fisher-Yates with plain modulo so the order is identical across
    // standard library implementations.
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    for (size_t start = 0; start < order.size();
         start += settings.batch_size) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(settings.batch_size));
      std::vector<const TrainingInstance *> batch(order.begin() + start,
                                                  order.begin() + end);
      model.ApplyGradient(model.ComputeGradient(batch),
                          settings.learning_rate);
    }
  }

  size_t correct = 0;
  for (const TrainingInstance &inst : instances) {
    const auto scored = model.ScoreFeatures(inst.features, inst.legal);
    const ScoredTransition *best = &scored[0];
    for (const ScoredTransition &s : scored) {
      if (s.log_prob > best->log_prob) best = &s;
    }
    correct += best->transition == inst.gold;
  }
  std::vector<const TrainingInstance *> all;
  for (const TrainingInstance &inst : instances) all.push_back(&inst);
  local.accuracy = static_cast<double>(correct) / instances.size();
  local.loss = model.Loss(all);
  if (report != nullptr) *report = std::move(local);
  return model;
}

void LinearScorer::Write(std::ostream &out) const {
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "hash_bits " << settings_.hash_bits << '\n';
  out << "learning_rate " << Hex(settings_.learning_rate) << '\n';
  out << "epochs " << settings_.epochs << '\n';
  out << "batch_size " << settings_.batch_size << '\n';
  out << "l2 " << Hex(settings_.l2) << '\n';
  out << "seed " << settings_.seed << '\n';
  out << "vocabulary " << vocabulary_.size() << '\n';
  for (const Transition &t : vocabulary_) out << t.Encode() << '\n';
  out << "bias";
  for (double b : bias_) out << ' ' << Hex(b);
  out << '\n';
  std::vector<uint32_t> buckets;
  for (const auto &[bucket, row] : rows_) buckets.push_back(bucket);
  std::sort(buckets.begin(), buckets.end());
  out << "rows " << buckets.size() << '\n';
  for (uint32_t b : buckets) {
    out << b;
    for (double w : rows_.at(b)) out << ' ' << Hex(w);
    out << '\n';
  }
}

namespace {

class ModelReader {
 public:
  explicit ModelReader(std::istream &in) : in_(in) {}

  std::istringstream Line() {
    std::string line;
    if (!std::getline(in_, line)) Fail("unexpected end of model file");
    ++line_no_;
    return std::istringstream(line);
  }

  template <typename T>
  T Field(const std::string &name) {
    std::istringstream s = Line();
    std::string key;
    std::string value;
    if (!(s >> key >> value) || key != name) Fail("expected '" + name + "'");
    return Convert<T>(value);
  }

  template <typename T>
  T Convert(const std::string &text) {
    if constexpr (std::is_same_v<T, double>) {
      char *end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0') Fail("bad number '" + text + "'");
      return v;
    } else {
      try {
        size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) Fail("bad integer '" + text + "'");
        return static_cast<T>(v);
      } catch (const std::logic_error &) {
        Fail("bad integer '" + text + "'");
      }
    }
  }

  [[noreturn]] void Fail(const std::string &message) {
    throw SchemaError("model file: " + message, line_no_);
  }

 private:
  std::istream &in_;
  int line_no_ = 0;
};

}  // namespace

LinearScorer LinearScorer::Read(std::istream &in) {
  ModelReader r(in);
  {
    std::istringstream s = r.Line();
    std::string magic;
    int version = 0;
    if (!(s >> magic >> version) || magic != kModelMagic) {
      r.Fail("not a scorer model");
    }
    if (version != kModelVersion) {
      r.Fail("unsupported version " + std::to_string(version));
    }
  }
  TrainingSettings settings;
  settings.hash_bits = r.Field<int>("hash_bits");
  settings.learning_rate = r.Field<double>("learning_rate");
  settings.epochs = r.Field<int>("epochs");
  settings.batch_size = r.Field<int>("batch_size");
  settings.l2 = r.Field<double>("l2");
  settings.seed = r.Field<uint64_t>("seed");
  const size_t v = r.Field<size_t>("vocabulary");
  std::vector<Transition> vocab;
  for (size_t i = 0; i < v; ++i) {
    std::istringstream s = r.Line();
    std::string enc;
    s >> enc;
    try {
      vocab.push_back(Transition::Decode(enc));
    } catch (const Error &e) {
      r.Fail(e.what());
    }
  }
  LinearScorer model = [&] {
    try {
      return LinearScorer(std::move(vocab), settings);
    } catch (const Error &e) {
      r.Fail(e.what());
    }
  }();
  auto read_values = [&](std::istringstream &s, std::vector<double> *out) {
    std::string tok;
    for (size_t c = 0; c < v; ++c) {
      if (!(s >> tok)) r.Fail("too few values");
      (*out)[c] = r.Convert<double>(tok);
    }
    if (s >> tok) r.Fail("too many values");
  };
  {
    std::istringstream s = r.Line();
    std::string key;
    if (!(s >> key) || key != "bias") r.Fail("expected 'bias'");
    read_values(s, &model.bias_);
  }
  const size_t rows = r.Field<size_t>("rows");
  for (size_t i = 0; i < rows; ++i) {
    std::istringstream s = r.Line();
    std::string tok;
    if (!(s >> tok)) r.Fail("expected a row");
    const uint32_t bucket = r.Convert<uint32_t>(tok);
    if (bucket >= model.dimension()) r.Fail("bucket out of range");
    std::vector<double> row(v, 0.0);
    read_values(s, &row);
    model.rows_[bucket] = std::move(row);
  }
  return model;
}

void LinearScorer::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path);
  Write(out);
  if (!out) throw Error("failed writing model file " + path);
}

LinearScorer LinearScorer::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file " + path);
  return Read(in);
}

}  // namespace deprecparse
