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

#include "deprecparse/evaluation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>

#include "deprecparse/baseline.h"
#include "deprecparse/errors.h"
#include "deprecparse/metrics.h"
#include "json.hpp"

namespace deprecparse {
namespace {

std::vector<AnnotatedExample> Golden() {
  return ReadDataset(DEPRECPARSE_DATA_DIR "/golden.jsonl");
}

std::vector<Prediction> Perfect(const std::vector<AnnotatedExample> &ds) {
  std::vector<Prediction> out;
  for (const AnnotatedExample &ex : ds) {
    out.push_back(PredictionFromTree(ex.id, GoldTree(ex), 0.0, false));
  }
  return out;
}

TEST(EvaluationTest, PerfectPredictions) {
  const auto ds = Golden();
  const CorpusReport r = EvaluateCorpus(Perfect(ds), ds);
  EXPECT_EQ(r.overall.count, 12);
  EXPECT_EQ(r.overall.tree_exact, 12);
  EXPECT_EQ(r.overall.code_exact, 12);
  EXPECT_DOUBLE_EQ(r.overall.mean_f1, 1.0);
  EXPECT_DOUBLE_EQ(r.overall.mean_iou, 1.0);
  EXPECT_TRUE(r.trees);
  EXPECT_TRUE(r.by_fold.empty());
}

TEST(EvaluationTest, CorruptedPredictionMatchesRecomputation) {
  const auto ds = Golden();
  std::vector<Prediction> preds = Perfect(ds);
  // Drop one argument from the MultiIndex parse.
  SemTree t = *preds[0].tree;
  t.children[0].children[0].children[0].children.clear();
  preds[0] = PredictionFromTree(ds[0].id, t, -1.0, false);
  const CorpusReport r = EvaluateCorpus(preds, ds);

  double f1 = 0.0, iou = 0.0;
  int tree_exact = 0, code_exact = 0;
  std::map<std::string, int> per_library;
  for (size_t i = 0; i < ds.size(); ++i) {
    const TreeScore ts = TreeF1(*preds[i].tree, GoldTree(ds[i]));
    f1 += ts.f1;
    tree_exact += ts.exact;
    iou += Iou(preds[i].codes.depr, preds[i].codes.repl, ds[i].gold_depr,
               ds[i].gold_repl);
    code_exact += ExactMatch(preds[i].codes.depr, preds[i].codes.repl,
                             ds[i].gold_depr, ds[i].gold_repl);
    ++per_library[ds[i].library];
  }
  EXPECT_EQ(r.overall.tree_exact, tree_exact);
  EXPECT_EQ(r.overall.tree_exact, 11);
  EXPECT_EQ(r.overall.code_exact, code_exact);
  EXPECT_NEAR(r.overall.mean_f1, f1 / ds.size(), 1e-12);
  EXPECT_NEAR(r.overall.mean_iou, iou / ds.size(), 1e-12);
  EXPECT_LT(r.examples[0].tree_f1, 1.0);
  EXPECT_GT(r.examples[0].tree_f1, 0.0);
  for (const auto &[lib, n] : per_library) {
    EXPECT_EQ(r.by_library.at(lib).count, n);
  }
  EXPECT_EQ(r.by_library.at("pandas").tree_exact, per_library["pandas"] - 1);
  EXPECT_EQ(r.by_unit.at("Parameter").count, 5);
}

TEST(EvaluationTest, FlatBaselinePredictions) {
  const auto ds = Golden();
  std::vector<Prediction> preds;
  for (const AnnotatedExample &ex : ds) {
    Prediction p;
    p.id = ex.id;
    p.codes = SplitBaseline(ex);
    preds.push_back(p);
  }
  const CorpusReport r = EvaluateCorpus(preds, ds);
  EXPECT_FALSE(r.trees);
  EXPECT_EQ(r.overall.tree_exact, 0);
  EXPECT_EQ(r.overall.code_exact, 5);
}

TEST(EvaluationTest, FoldBreakdown) {
  const auto ds = Golden();
  std::vector<int> folds(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) folds[i] = static_cast<int>(i % 3);
  const CorpusReport r = EvaluateCorpus(Perfect(ds), ds, &folds);
  ASSERT_EQ(r.by_fold.size(), 3u);
  for (const auto &[f, s] : r.by_fold) EXPECT_EQ(s.count, 4);
  std::vector<int> short_folds = {0};
  EXPECT_THROW(EvaluateCorpus(Perfect(ds), ds, &short_folds), Error);
}

TEST(EvaluationTest, IdMismatchesAreErrors) {
  const auto ds = Golden();
  auto preds = Perfect(ds);
  preds.pop_back();
  EXPECT_THROW(EvaluateCorpus(preds, ds), Error);
  preds = Perfect(ds);
  preds.push_back(preds[0]);
  EXPECT_THROW(EvaluateCorpus(preds, ds), Error);
  preds = Perfect(ds);
  preds[3].id = "nope";
  EXPECT_THROW(EvaluateCorpus(preds, ds), Error);
}

TEST(EvaluationTest, Rendering) {
  const auto ds = Golden();
  const CorpusReport r = EvaluateCorpus(Perfect(ds), ds);
  const std::string table = FormatReport(r);
  EXPECT_NE(table.find("library:pandas"), std::string::npos);
  EXPECT_NE(table.find("unit:Parameter"), std::string::npos);
  EXPECT_NE(table.find("all                         12       12       12    100.0    100.0"),
            std::string::npos)
      << table;
  std::vector<Prediction> flat;
  for (const AnnotatedExample &ex : ds) {
    Prediction p;
    p.id = ex.id;
    p.codes = SplitBaseline(ex);
    flat.push_back(p);
  }
  const std::string flat_table = FormatReport(EvaluateCorpus(flat, ds));
  EXPECT_NE(flat_table.find("all                         12        -        5        -"),
            std::string::npos)
      << flat_table;
  const nlohmann::json j = nlohmann::json::parse(ReportToJson(r, true));
  EXPECT_EQ(j["overall"]["count"], 12);
  EXPECT_EQ(j["examples"].size(), 12u);
  EXPECT_FALSE(nlohmann::json::parse(ReportToJson(r, false)).contains("examples"));
}

TEST(EvaluationTest, PredictionJsonRoundTrip) {
  const auto ds = Golden();
  for (const Prediction &p : Perfect(ds)) {
    int fold = -2;
    const Prediction back = PredictionFromJson(PredictionToJson(p, 3), 1, &fold);
    EXPECT_EQ(fold, 3);
    EXPECT_EQ(back.id, p.id);
    ASSERT_TRUE(back.tree.has_value());
    EXPECT_EQ(*back.tree, *p.tree);
    EXPECT_EQ(back.codes.depr, p.codes.depr);
    EXPECT_EQ(back.codes.repl, p.codes.repl);
    EXPECT_EQ(back.log_prob, 0.0);
  }
  Prediction partial = Perfect(ds)[1];
  partial.partial = true;
  partial.log_prob = -std::numeric_limits<double>::infinity();
  const std::string line = PredictionToJson(partial);
  EXPECT_NE(line.find("\"log_prob\":null"), std::string::npos);
  EXPECT_EQ(line.find("\"fold\""), std::string::npos);
  int fold = 7;
  const Prediction back = PredictionFromJson(line, 1, &fold);
  EXPECT_EQ(fold, -1);
  EXPECT_TRUE(back.partial);
  EXPECT_TRUE(std::isinf(back.log_prob) && back.log_prob < 0);

  // Flat predictions carry codes only.
  const Prediction flat = PredictionFromJson(
      R"j({"id":"x","tree":null,"depr":["a"],"repl":["b","c"]})j", 1);
  EXPECT_FALSE(flat.tree.has_value());
  EXPECT_EQ(flat.codes.repl.size(), 2u);
  // Codes are read off the tree when not listed.
  const Prediction derived = PredictionFromJson(
      R"j({"id":"y","tree":"(root (depr (ns a)) (repl (ns b)))"})j", 1);
  EXPECT_EQ(derived.codes.repl.size(), 1u);

  for (const char *bad : {"{", "[]", R"j({"tree":null})j",
                          R"j({"id":"z","tree":"(root"})j",
                          R"j({"id":"z","tree":null,"log_prob":"x"})j"}) {
    try {
      PredictionFromJson(bad, 4);
      ADD_FAILURE() << bad;
    } catch (const SchemaError &e) {
      EXPECT_EQ(e.line(), 4u) << bad;
    }
  }
}

TEST(EvaluationTest, PredictionFileRoundTrip) {
  const auto ds = Golden();
  const std::vector<Prediction> preds = Perfect(ds);
  std::vector<int> folds;
  for (size_t i = 0; i < preds.size(); ++i) folds.push_back(int(i % 3));
  const std::string path = ::testing::TempDir() + "eval_pred.jsonl";
  WritePredictions(preds, &folds, path);
  std::vector<int> read_folds;
  const std::vector<Prediction> back = ReadPredictions(path, &read_folds);
  ASSERT_EQ(back.size(), preds.size());
  EXPECT_EQ(read_folds, folds);
  const CorpusReport r = EvaluateCorpus(back, ds, &read_folds);
  EXPECT_EQ(r.overall.tree_exact, 12);
  EXPECT_EQ(r.by_fold.size(), 3u);
  EXPECT_THROW(ReadPredictions(path + ".missing"), Error);
}

}  // namespace
}  // namespace deprecparse
