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

#include "deprecparse/metrics.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "deprecparse/code_expression.h"
#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

class MetricReader {
 public:
  explicit MetricReader(std::string_view text) : text_(text) {}

  MetricTree Read() {
    MetricTree t = Node();
    Skip();
    if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
    return t;
  }

 private:
  void Skip() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  std::string Atom() {
    const size_t start = pos_;
    while (pos_ < text_.size() && !IsSpace(text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  MetricTree Node() {
    Skip();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      throw SyntaxError("expected '('", pos_);
    }
    ++pos_;
    Skip();
    MetricTree t;
    t.label = Atom();
    if (t.label.empty()) throw SyntaxError("expected label", pos_);
    for (;;) {
      Skip();
      if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
      if (text_[pos_] == ')') {
        ++pos_;
        return t;
      }
      if (text_[pos_] == '(') {
        t.children.push_back(Node());
      } else {
        t.leaves.push_back(Atom());
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void CollectSubtrees(const MetricTree &t, std::vector<MetricTree> *out) {
  out->push_back(t);
  for (const MetricTree &child : t.children) CollectSubtrees(child, out);
}

std::set<std::string> Normalized(const std::vector<std::string> &codes) {
  std::set<std::string> out;
  for (const std::string &c : codes) out.insert(NormalizeCode(c));
  return out;
}

Rational SideIou(const std::set<std::string> &pred,
                 const std::set<std::string> &gold) {
  size_t inter = 0;
  for (const std::string &s : pred) inter += gold.count(s);
  const size_t uni = pred.size() + gold.size() - inter;
  if (uni == 0) return {1, 1};
  return {static_cast<int64_t>(inter), static_cast<int64_t>(uni)};
}

Rational Reduce(int64_t num, int64_t den) {
  const int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational Add(const Rational &a, const Rational &b) {
  return Reduce(a.num * b.den + b.num * a.den, a.den * b.den);
}

TreeScore Score(int64_t matched, int64_t pred_total, int64_t gold_total) {
  TreeScore s;
  s.precision = pred_total > 0 ? static_cast<double>(matched) / pred_total : 0;
  s.recall = gold_total > 0 ? static_cast<double>(matched) / gold_total : 0;
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0 ? 2 * s.precision * s.recall / denom : 0;
  return s;
}

}  // namespace

MetricTree ToMetricTree(const SemTree &tree) {
  MetricTree t;
  t.label = std::string(LabelName(tree.label));
  if (tree.code) t.leaves.push_back(*tree.code);
  for (const SemTree &child : tree.children) {
    t.children.push_back(ToMetricTree(child));
  }
  return t;
}

MetricTree ParseMetricTree(std::string_view text) {
  return MetricReader(text).Read();
}

std::string ToString(const MetricTree &tree) {
  std::string out = "(" + tree.label;
  for (const std::string &leaf : tree.leaves) out += " " + leaf;
  for (const MetricTree &child : tree.children) out += " " + ToString(child);
  return out + ")";
}

int Height(const MetricTree &tree) {
  int max_child = tree.leaves.empty() ? 0 : 1;
  for (const MetricTree &child : tree.children) {
    max_child = std::max(max_child, Height(child));
  }
  return 1 + max_child;
}

std::vector<MetricTree> Subtrees(const MetricTree &tree) {
  std::vector<MetricTree> out;
  CollectSubtrees(tree, &out);
  return out;
}

SubtreeProfile::SubtreeProfile(const MetricTree &tree) {
  int height = 0;
  root_key_ = Add(tree, &height);
}

std::string SubtreeProfile::Add(const MetricTree &node, int *height) {
  // Length-prefixed fields keep keys unambiguous for arbitrary strings.
  std::string key = "(" + std::to_string(node.label.size()) + ":" + node.label;
  int max_child = node.leaves.empty() ? 0 : 1;
  for (const std::string &leaf : node.leaves) {
    key += " " + std::to_string(leaf.size()) + ":" + leaf;
  }
  for (const MetricTree &child : node.children) {
    int child_height = 0;
    key += " " + Add(child, &child_height);
    max_child = std::max(max_child, child_height);
  }
  key += ")";
  *height = 1 + max_child;
  Entry &e = entries_[key];
  ++e.count;
  e.weight = *height;
  total_weight_ += *height;
  return key;
}

TreeScore TreeF1(const SubtreeProfile &pred, const SubtreeProfile &gold) {
  if (pred.root_key() == gold.root_key()) return {1.0, 1.0, 1.0, true};
  int64_t matched = 0;
  for (const auto &[key, entry] : pred.entries()) {
    auto it = gold.entries().find(key);
    if (it == gold.entries().end()) continue;
    matched += static_cast<int64_t>(std::min(entry.count, it->second.count)) *
               entry.weight;
  }
  return Score(matched, pred.total_weight(), gold.total_weight());
}

TreeScore TreeF1(const MetricTree &pred, const MetricTree &gold) {
  return TreeF1(SubtreeProfile(pred), SubtreeProfile(gold));
}

TreeScore TreeF1(const SemTree &pred, const SemTree &gold) {
  return TreeF1(SubtreeProfile(pred), SubtreeProfile(gold));
}

Rational IouExact(const std::vector<std::string> &pred_depr,
                  const std::vector<std::string> &pred_repl,
                  const std::vector<std::string> &gold_depr,
                  const std::vector<std::string> &gold_repl) {
  const Rational depr = SideIou(Normalized(pred_depr), Normalized(gold_depr));
  if (gold_repl.empty()) {
    if (pred_repl.empty()) return Reduce(depr.num, depr.den);
    return Reduce(depr.num, depr.den * 2);
  }
  const Rational repl = SideIou(Normalized(pred_repl), Normalized(gold_repl));
  const Rational sum = Add(depr, repl);
  return Reduce(sum.num, sum.den * 2);
}

double Iou(const std::vector<std::string> &pred_depr,
           const std::vector<std::string> &pred_repl,
           const std::vector<std::string> &gold_depr,
           const std::vector<std::string> &gold_repl) {
  return IouExact(pred_depr, pred_repl, gold_depr, gold_repl).value();
}

bool ExactMatch(const std::vector<std::string> &pred_depr,
                const std::vector<std::string> &pred_repl,
                const std::vector<std::string> &gold_depr,
                const std::vector<std::string> &gold_repl) {
  return Normalized(pred_depr) == Normalized(gold_depr) &&
         Normalized(pred_repl) == Normalized(gold_repl);
}

}  // namespace deprecparse
