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

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <unordered_map>

#include "deprecparse/errors.h"
#include "deprecparse/metrics.h"
#include "json.hpp"

namespace deprecparse {
namespace {

void Accumulate(const ExampleScore &s, ScoreSummary *sum) {
  ++sum->count;
  sum->tree_exact += s.tree_exact;
  sum->code_exact += s.code_exact;
  sum->mean_f1 += s.tree_f1;
  sum->mean_iou += s.iou;
}

void Finish(ScoreSummary *sum) {
  if (sum->count > 0) {
    sum->mean_f1 /= sum->count;
    sum->mean_iou /= sum->count;
  }
}

nlohmann::json SummaryJson(const ScoreSummary &s) {
  return {{"count", s.count},
          {"tree_exact", s.tree_exact},
          {"code_exact", s.code_exact},
          {"mean_f1", s.mean_f1},
          {"mean_iou", s.mean_iou}};
}

// Tree columns show "-" for flat predictions.
std::string Row(const std::string &name, const ScoreSummary &s, bool trees) {
  const std::string em = trees ? std::to_string(s.tree_exact) : "-";
  const std::string f1 = trees ? fmt::format("{:.1f}", 100 * s.mean_f1) : "-";
  return fmt::format("{:<24} {:>5} {:>8} {:>8} {:>8} {:>8.1f}\n", name,
                     s.count, em, s.code_exact, f1, 100 * s.mean_iou);
}

}  // namespace

Prediction PredictionFromTree(std::string id, SemTree tree, double log_prob,
                              bool partial) {
  Prediction p;
  p.id = std::move(id);
  p.codes = TreeToCodeExpressions(tree);
  p.tree = std::move(tree);
  p.log_prob = log_prob;
  p.partial = partial;
  return p;
}

CodeSets GoldCodes(const AnnotatedExample &ex) {
  if (!ex.gold_depr.empty()) return {ex.gold_depr, ex.gold_repl};
  if (ex.gold_tree) return TreeToCodeExpressions(*ex.gold_tree);
  return {};
}

CorpusReport EvaluateCorpus(const std::vector<Prediction> &predictions,
                            const std::vector<AnnotatedExample> &dataset,
                            const std::vector<int> *folds) {
  if (folds != nullptr && folds->size() != dataset.size()) {
    throw Error("fold assignment does not cover the dataset");
  }
  std::unordered_map<std::string, const Prediction *> by_id;
  for (const Prediction &p : predictions) {
    if (!by_id.emplace(p.id, &p).second) {
      throw Error("duplicate prediction for id '" + p.id + "'");
    }
  }
  std::set<std::string> ids;
  for (const AnnotatedExample &ex : dataset) ids.insert(ex.id);
  for (const Prediction &p : predictions) {
    if (!ids.count(p.id)) {
      throw Error("prediction id '" + p.id + "' is not in the dataset");
    }
  }

  CorpusReport report;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const AnnotatedExample &ex = dataset[i];
    auto it = by_id.find(ex.id);
    if (it == by_id.end()) {
      throw Error("no prediction for example id '" + ex.id + "'");
    }
    const Prediction &p = *it->second;
    ExampleScore s;
    s.id = ex.id;
    s.library = ex.library.empty() ? "unknown" : ex.library;
    for (const std::string &u : ex.units) {
      s.unit += (s.unit.empty() ? "" : "+") + u;
    }
    if (s.unit.empty()) s.unit = "none";
    if (folds != nullptr) s.fold = (*folds)[i];
    s.partial = p.partial;

    const CodeSets gold_codes = GoldCodes(ex);
    if (HasGold(ex)) {
      const SemTree gold = GoldTree(ex);
      s.gold_nodes = NodeCount(gold);
      if (p.tree) {
        const TreeScore ts = TreeF1(*p.tree, gold);
        s.tree_f1 = ts.f1;
        s.tree_exact = ts.exact;
        report.trees = true;
      }
    }
    if (!gold_codes.depr.empty()) {
      s.iou = Iou(p.codes.depr, p.codes.repl, gold_codes.depr, gold_codes.repl);
      s.code_exact = ExactMatch(p.codes.depr, p.codes.repl, gold_codes.depr,
                                gold_codes.repl);
    }
    Accumulate(s, &report.overall);
    Accumulate(s, &report.by_library[s.library]);
    Accumulate(s, &report.by_unit[s.unit]);
    if (s.fold >= 0) Accumulate(s, &report.by_fold[s.fold]);
    report.examples.push_back(std::move(s));
  }
  Finish(&report.overall);
  for (auto &[k, v] : report.by_library) Finish(&v);
  for (auto &[k, v] : report.by_unit) Finish(&v);
  for (auto &[k, v] : report.by_fold) Finish(&v);
  return report;
}

std::string PredictionToJson(const Prediction &p, int fold) {
  nlohmann::json j;
  j["id"] = p.id;
  j["tree"] = p.tree ? nlohmann::json(ToBracketed(*p.tree)) : nlohmann::json();
  j["depr"] = p.codes.depr;
  j["repl"] = p.codes.repl;
  j["log_prob"] =
      std::isfinite(p.log_prob) ? nlohmann::json(p.log_prob) : nlohmann::json();
  j["partial"] = p.partial;
  if (fold >= 0) j["fold"] = fold;
  return j.dump();
}

Prediction PredictionFromJson(std::string_view line, size_t line_no,
                              int *fold) {
  Prediction p;
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    if (!j.is_object()) throw SchemaError("prediction is not an object", line_no);
    p.id = j.at("id").get<std::string>();
    if (j.contains("tree") && !j["tree"].is_null()) {
      p.tree = ParseBracketed(j["tree"].get<std::string>());
    }
    p.codes.depr = j.value("depr", std::vector<std::string>{});
    p.codes.repl = j.value("repl", std::vector<std::string>{});
    if (p.tree && !j.contains("depr") && !j.contains("repl")) {
      p.codes = TreeToCodeExpressions(*p.tree);
    }
    const auto lp = j.find("log_prob");
    p.log_prob = lp == j.end() || lp->is_null()
                     ? -std::numeric_limits<double>::infinity()
                     : lp->get<double>();
    p.partial = j.value("partial", false);
    if (fold != nullptr) *fold = j.value("fold", -1);
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("prediction: ") + e.what(), line_no);
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(std::string("prediction: ") + e.what(), line_no);
  }
  return p;
}

void WritePredictions(const std::vector<Prediction> &predictions,
                      const std::vector<int> *folds, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (size_t i = 0; i < predictions.size(); ++i) {
    const int fold = folds != nullptr ? (*folds)[i] : -1;
    out << PredictionToJson(predictions[i], fold) << '\n';
  }
  if (!out) throw Error("cannot write " + path);
}

std::vector<Prediction> ReadPredictions(const std::string &path,
                                        std::vector<int> *folds) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read predictions file " + path);
  std::vector<Prediction> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    int fold = -1;
    out.push_back(PredictionFromJson(line, line_no, &fold));
    if (folds != nullptr) folds->push_back(fold);
  }
  return out;
}

std::string FormatReport(const CorpusReport &report) {
  std::string out = fmt::format("{:<24} {:>5} {:>8} {:>8} {:>8} {:>8}\n",
                                "group", "n", "EM-tree", "EM-code", "F1",
                                "IOU");
  out += Row("all", report.overall, report.trees);
  for (const auto &[k, v] : report.by_library) out += Row("library:" + k, v, report.trees);
  for (const auto &[k, v] : report.by_unit) out += Row("unit:" + k, v, report.trees);
  for (const auto &[k, v] : report.by_fold) {
    out += Row("fold:" + std::to_string(k), v, report.trees);
  }
  return out;
}

std::string ReportToJson(const CorpusReport &report, bool with_examples) {
  nlohmann::json j;
  j["overall"] = SummaryJson(report.overall);
  j["trees"] = report.trees;
  for (const auto &[k, v] : report.by_library) {
    j["by_library"][k] = SummaryJson(v);
  }
  for (const auto &[k, v] : report.by_unit) j["by_unit"][k] = SummaryJson(v);
  for (const auto &[k, v] : report.by_fold) {
    j["by_fold"][std::to_string(k)] = SummaryJson(v);
  }
  if (with_examples) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ExampleScore &s : report.examples) {
      rows.push_back({{"id", s.id},
                      {"library", s.library},
                      {"unit", s.unit},
                      {"fold", s.fold},
                      {"tree_f1", s.tree_f1},
                      {"tree_exact", s.tree_exact},
                      {"code_exact", s.code_exact},
                      {"iou", s.iou},
                      {"gold_nodes", s.gold_nodes},
                      {"partial", s.partial}});
    }
    j["examples"] = std::move(rows);
  }
  return j.dump();
}

}  // namespace deprecparse
