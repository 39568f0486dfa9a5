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

#include "deprecparse/pipeline.h"

#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "deprecparse/errors.h"
#include "deprecparse/parallel.h"
#include "json.hpp"

namespace deprecparse {

std::vector<OracleOutcome> RunOracle(
    const std::vector<AnnotatedExample> &examples, const OracleConfig &config,
    int jobs) {
  config.Check();
  std::vector<OracleOutcome> out(examples.size());
  ParallelFor(examples.size(), jobs, [&](size_t i) {
    const AnnotatedExample &ex = examples[i];
    OracleOutcome &o = out[i];
    o.id = ex.id;
    if (!HasGold(ex)) {
      o.skipped = true;
      o.reason = "no gold annotation";
      return;
    }
    if (ex.code_spans.empty()) {
      o.skipped = true;
      o.reason = "no code entities";
      return;
    }
    try {
      o.result = FindGoldSequence(ExampleEntities(ex), GoldTree(ex), config);
    } catch (const ConversionError &e) {
      o.skipped = true;
      o.reason = e.what();
    }
  });
  return out;
}

std::string OracleOutcomeToJson(const OracleOutcome &o) {
  nlohmann::json j;
  j["id"] = o.id;
  j["skipped"] = o.skipped;
  if (o.skipped) {
    j["reason"] = o.reason;
    j["accepted"] = false;
    return j.dump();
  }
  j["sequence"] = EncodeSequence(o.result.sequence);
  j["overlap"] = o.result.overlap;
  j["terminal"] = o.result.terminal;
  j["accepted"] = o.result.accepted;
  j["tree"] = ToBracketed(o.result.tree);
  return j.dump();
}

OracleOutcome OracleOutcomeFromJson(std::string_view line, size_t line_no) {
  OracleOutcome o;
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    o.id = j.at("id").get<std::string>();
    o.skipped = j.value("skipped", false);
    if (o.skipped) {
      o.reason = j.value("reason", "");
      return o;
    }
    o.result.sequence = DecodeSequence(j.at("sequence").get<std::string>());
    o.result.overlap = j.at("overlap").get<double>();
    o.result.terminal = j.at("terminal").get<bool>();
    o.result.accepted = j.at("accepted").get<bool>();
    o.result.tree = ParseBracketed(j.at("tree").get<std::string>());
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("oracle record: ") + e.what(), line_no);
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(std::string("oracle record: ") + e.what(), line_no);
  }
  return o;
}

std::vector<OracleOutcome> ReadOracleOutcomes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read oracle file " + path);
  std::vector<OracleOutcome> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(OracleOutcomeFromJson(line, line_no));
  }
  return out;
}

std::vector<TrainingInstance> ReplayInstances(
    const AnnotatedExample &example, const TransitionSequence &sequence) {
  std::vector<TrainingInstance> out;
  ParserState state = InitialState(ExampleEntities(example));
  for (const Transition &t : sequence) {
    out.push_back(MakeInstance(state, t, example.tokens));
    state = Apply(state, t);
  }
  return out;
}

std::vector<size_t> AllIndices(size_t n) {
  std::vector<size_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

std::vector<TrainingInstance> CollectInstances(
    const std::vector<AnnotatedExample> &examples,
    const std::vector<OracleOutcome> &outcomes,
    const std::vector<size_t> &indices) {
  std::unordered_map<std::string, const OracleOutcome *> by_id;
  for (const OracleOutcome &o : outcomes) by_id[o.id] = &o;
  std::vector<TrainingInstance> out;
  for (size_t i : indices) {
    auto it = by_id.find(examples[i].id);
    if (it == by_id.end() || it->second->skipped ||
        !it->second->result.accepted) {
      continue;
    }
    for (TrainingInstance &inst :
         ReplayInstances(examples[i], it->second->result.sequence)) {
      out.push_back(std::move(inst));
    }
  }
  return out;
}

LinearScorer TrainScorer(const std::vector<TrainingInstance> &instances,
                         const TrainingSettings &settings,
                         TrainingReport *report) {
  if (instances.empty()) {
    if (report != nullptr) {
      *report = {};
      report->warnings.push_back(
          "no training instances; the model scores legal transitions "
          "uniformly");
    }
    return LinearScorer({}, settings);
  }
  return LinearScorer::Train(instances, settings, report);
}

std::vector<Prediction> ParseExamples(
    const TransitionScorer &scorer,
    const std::vector<AnnotatedExample> &examples,
    const std::vector<size_t> &indices, const DecodeConfig &config,
    int jobs) {
  std::vector<Prediction> out(indices.size());
  ParallelFor(indices.size(), jobs, [&](size_t k) {
    const AnnotatedExample &ex = examples[indices[k]];
    if (ex.code_spans.empty()) {
      out[k].id = ex.id;
      out[k].partial = true;
      out[k].log_prob = -std::numeric_limits<double>::infinity();
      return;
    }
    DecodeResult r =
        BeamParse(scorer, ExampleEntities(ex), ex.tokens, config);
    out[k] = PredictionFromTree(ex.id, std::move(r.tree), r.log_prob,
                                r.partial);
  });
  return out;
}

std::vector<int> AssignFolds(size_t n, int k, uint64_t seed) {
  if (k < 1) throw Error("number of folds must be at least 1");
  std::vector<size_t> order = AllIndices(n);
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  std::vector<int> folds(n);
  for (size_t r = 0; r < n; ++r) folds[order[r]] = static_cast<int>(r % k);
  return folds;
}

CrossValidationResult CrossValidate(
    const std::vector<AnnotatedExample> &examples,
    const std::vector<OracleOutcome> &outcomes, int folds, uint64_t seed,
    const TrainingSettings &settings, const DecodeConfig &config, int jobs) {
  CrossValidationResult cv;
  cv.folds = AssignFolds(examples.size(), folds, seed);
  cv.predictions.resize(examples.size());
  for (int f = 0; f < folds; ++f) {
    std::vector<size_t> train, test;
    for (size_t i = 0; i < examples.size(); ++i) {
      (cv.folds[i] == f ? test : train).push_back(i);
    }
    TrainingReport report;
    const LinearScorer model = TrainScorer(
        CollectInstances(examples, outcomes, train), settings, &report);
    cv.training.push_back(std::move(report));
    std::vector<Prediction> preds =
        ParseExamples(model, examples, test, config, jobs);
    for (size_t k = 0; k < test.size(); ++k) {
      cv.predictions[test[k]] = std::move(preds[k]);
    }
  }
  return cv;
}

}  // namespace deprecparse
