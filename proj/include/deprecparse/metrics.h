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

// Tree overlap and code-set metrics.
//
// Tree overlap decomposes both trees into all of their subtrees (every node
// roots one) and matches them as multisets. Each subtree is weighted by its
// height, where a code string counts as a leaf of height 1, so (arg x) has
// height 2 and a childless, codeless node has height 1.

#ifndef DEPRECPARSE_METRICS_H_
#define DEPRECPARSE_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deprecparse/tree.h"

namespace deprecparse {

// Labeled tree with free-form labels, so metrics also apply to trees
// outside the deprecation grammar.
struct MetricTree {
  std::string label;
  std::vector<std::string> leaves;  // terminal strings under this node
  std::vector<MetricTree> children;

  friend bool operator==(const MetricTree &, const MetricTree &) = default;
};

MetricTree ToMetricTree(const SemTree &tree);

// Reads "(a (b (c d)) (e))"-style notation. Throws SyntaxError.
MetricTree ParseMetricTree(std::string_view text);
std::string ToString(const MetricTree &tree);

int Height(const MetricTree &tree);

// All subtrees in pre-order, starting with `tree` itself.
std::vector<MetricTree> Subtrees(const MetricTree &tree);

struct TreeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool exact = false;
};

// Multiset of subtrees of one tree, keyed by canonical serialization.
class SubtreeProfile {
 public:
  explicit SubtreeProfile(const MetricTree &tree);
  explicit SubtreeProfile(const SemTree &tree)
      : SubtreeProfile(ToMetricTree(tree)) {}

  struct Entry {
    int count = 0;
    int weight = 0;  // height of the subtree
  };

  const std::unordered_map<std::string, Entry> &entries() const {
    return entries_;
  }
  const std::string &root_key() const { return root_key_; }
  int64_t total_weight() const { return total_weight_; }

 private:
  std::string Add(const MetricTree &node, int *height);

  std::unordered_map<std::string, Entry> entries_;
  std::string root_key_;
  int64_t total_weight_ = 0;
};

TreeScore TreeF1(const SubtreeProfile &pred, const SubtreeProfile &gold);
TreeScore TreeF1(const MetricTree &pred, const MetricTree &gold);
TreeScore TreeF1(const SemTree &pred, const SemTree &gold);

struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational &, const Rational &) = default;
};

// Intersection over union averaged over the deprecated and replacement
// sides. Strings are compared after NormalizeCode. When the gold
// replacement side is empty it only counts (as 0) if a replacement was
// predicted.
Rational IouExact(const std::vector<std::string> &pred_depr,
                  const std::vector<std::string> &pred_repl,
                  const std::vector<std::string> &gold_depr,
                  const std::vector<std::string> &gold_repl);
double Iou(const std::vector<std::string> &pred_depr,
           const std::vector<std::string> &pred_repl,
           const std::vector<std::string> &gold_depr,
           const std::vector<std::string> &gold_repl);

// Set equality on both sides after NormalizeCode.
bool ExactMatch(const std::vector<std::string> &pred_depr,
                const std::vector<std::string> &pred_repl,
                const std::vector<std::string> &gold_depr,
                const std::vector<std::string> &gold_repl);

}  // namespace deprecparse

#endif  // DEPRECPARSE_METRICS_H_
