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

// Corpus-level scoring of parser or baseline predictions.

#ifndef DEPRECPARSE_EVALUATION_H_
#define DEPRECPARSE_EVALUATION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deprecparse/code_expression.h"
#include "deprecparse/corpus.h"
#include "deprecparse/tree.h"

namespace deprecparse {

struct Prediction {
  std::string id;
  // Absent for flat predictors such as the baseline, and when decoding
  // produced nothing.
  std::optional<SemTree> tree;
  CodeSets codes;
  double log_prob = 0.0;
  bool partial = false;
};

// Fills `codes` from `tree`.
Prediction PredictionFromTree(std::string id, SemTree tree, double log_prob,
                              bool partial);

struct ExampleScore {
  std::string id;
  std::string library;
  std::string unit;  // unit labels joined with '+', or "none"
  int fold = -1;
  double tree_f1 = 0.0;
  bool tree_exact = false;
  bool code_exact = false;
  double iou = 0.0;
  size_t gold_nodes = 0;  // size of the gold tree
  bool partial = false;
};

struct ScoreSummary {
  int count = 0;
  int tree_exact = 0;
  int code_exact = 0;
  double mean_f1 = 0.0;
  double mean_iou = 0.0;
};

struct CorpusReport {
  ScoreSummary overall;
  std::map<std::string, ScoreSummary> by_library;
  std::map<std::string, ScoreSummary> by_unit;
  std::map<int, ScoreSummary> by_fold;  // empty without fold assignment
  std::vector<ExampleScore> examples;
  bool trees = false;  // any prediction carried a tree
};

// One prediction per example, matched by id. `folds`, when given, holds the
// fold of each example in `dataset` order. Throws Error on id mismatch.
CorpusReport EvaluateCorpus(const std::vector<Prediction> &predictions,
                            const std::vector<AnnotatedExample> &dataset,
                            const std::vector<int> *folds = nullptr);

// Gold code sets: the annotated expressions, or those read off the gold
// tree when only a tree is given.
CodeSets GoldCodes(const AnnotatedExample &example);

// Prediction files: one JSON object per line with id, tree (bracketed or
// null), depr, repl, log_prob (null when minus infinity), partial and, for
// cross-validated runs, fold (-1 when absent).
std::string PredictionToJson(const Prediction &prediction, int fold = -1);
Prediction PredictionFromJson(std::string_view line, size_t line_no,
                              int *fold = nullptr);
void WritePredictions(const std::vector<Prediction> &predictions,
                      const std::vector<int> *folds, const std::string &path);
// `folds` receives one entry per prediction. Throws SchemaError, or Error
// when the file cannot be read.
std::vector<Prediction> ReadPredictions(const std::string &path,
                                        std::vector<int> *folds = nullptr);

std::string FormatReport(const CorpusReport &report);
// Summary and breakdowns as a JSON object; per-example rows included when
// `with_examples`.
std::string ReportToJson(const CorpusReport &report, bool with_examples);

}  // namespace deprecparse

#endif  // DEPRECPARSE_EVALUATION_H_
