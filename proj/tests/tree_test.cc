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

#include "deprecparse/tree.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "deprecparse/errors.h"
#include "golden.h"

namespace deprecparse {
namespace {

TEST(LabelTest, NamesRoundTrip) {
  for (Label label : kAllLabels) {
    EXPECT_EQ(LabelFromName(LabelName(label)), label);
  }
  EXPECT_FALSE(LabelFromName("class").has_value());
  EXPECT_TRUE(LabelHasCode(Label::kFunc));
  EXPECT_FALSE(LabelHasCode(Label::kDepr));
}

TEST(ValidateTest, GoldenTreeIsWellFormed) {
  EXPECT_TRUE(Validate(golden::MultiIndexTree()).empty());
  EXPECT_EQ(NodeCount(golden::MultiIndexTree()), 15u);
}

TEST(ValidateTest, ReportsNodePaths) {
  SemTree tree = golden::MultiIndexTree();
  tree.children[1].children[0].children.clear();
  tree.children[1].children[0].children.push_back(
      SemTree::Leaf(Label::kArg, "x"));
  auto v = Validate(tree);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "root/1:repl/0:ns");
  EXPECT_EQ(v[0].message, "child 0 of ns must be func or attr");
}

TEST(ValidateTest, RejectsBadShapes) {
  EXPECT_FALSE(Validate(SemTree::Node(Label::kRoot, {})).empty());
  EXPECT_FALSE(Validate(SemTree::Leaf(Label::kArg, "x")).empty());
  // repl before depr
  SemTree swapped = golden::MultiIndexTree();
  std::swap(swapped.children[0], swapped.children[1]);
  EXPECT_FALSE(Validate(swapped).empty());
  // func without code
  SemTree nocode = golden::MultiIndexTree();
  nocode.children[0].children[0].children[0].code.reset();
  EXPECT_FALSE(Validate(nocode).empty());
  // ns with two members
  SemTree two = golden::MultiIndexTree();
  two.children[0].children[0].children.push_back(
      SemTree::Leaf(Label::kAttr, "a"));
  EXPECT_FALSE(Validate(two).empty());
  // depr without ns
  SemTree root_only =
      SemTree::Node(Label::kRoot, {SemTree::Node(Label::kDepr, {})});
  EXPECT_FALSE(Validate(root_only).empty());
}

TEST(ValidateTest, AcceptsMinimalForms) {
  SemTree t = SemTree::Node(
      Label::kRoot,
      {SemTree::Node(Label::kDepr, {SemTree::Leaf(Label::kNs, "urllib")})});
  EXPECT_TRUE(Validate(t).empty());
  SemTree attr = SemTree::Node(
      Label::kRoot,
      {SemTree::Node(Label::kDepr,
                     {SemTree::Node(Label::kNs, "RangeIndex",
                                    {SemTree::Leaf(Label::kAttr, "_start")})})});
  EXPECT_TRUE(Validate(attr).empty());
}

TEST(BracketedTest, SerializesGoldenTree) {
  EXPECT_EQ(ToBracketed(golden::MultiIndexTree()),
            "(root (depr (ns MultiIndex (func copy (arg levels))) "
            "(ns MultiIndex (func copy (arg codes)))) "
            "(repl (ns MultiIndex (func set_levels (arg levels))) "
            "(ns MultiIndex (func set_codes (arg codes)))))");
}

TEST(BracketedTest, ParsesListingWithCallParens) {
  SemTree parsed = ParseBracketed(golden::kMultiIndexListing);
  EXPECT_EQ(parsed, golden::MultiIndexTree());
}

TEST(BracketedTest, PrettyFormRoundTrips) {
  SemTree t = golden::MultiIndexTree();
  EXPECT_EQ(ParseBracketed(ToBracketedPretty(t)), t);
}

TEST(BracketedTest, QuotesAwkwardCodes) {
  SemTree t = SemTree::Node(
      Label::kRoot,
      {SemTree::Node(
          Label::kDepr,
          {SemTree::Node(Label::kNs, std::string(kNoNamespace),
                         {SemTree::Node(Label::kFunc, "f",
                                        {SemTree::Leaf(Label::kArg,
                                                       "a b (c)\"\\")})})})});
  std::string text = ToBracketed(t);
  EXPECT_EQ(ParseBracketed(text), t);
}

TEST(BracketedTest, ClipAndLeaf) {
  SemTree clip = SemTree::Node(
      Label::kNs, "Series",
      {SemTree::Node(Label::kFunc, "clip",
                     {SemTree::Leaf(Label::kArg, "lower=threshold")})});
  EXPECT_EQ(ToBracketed(clip), "(ns Series (func clip (arg lower=threshold)))");
  EXPECT_EQ(ToBracketed(SemTree::Leaf(Label::kArg, "levels")), "(arg levels)");
  EXPECT_EQ(ParseBracketed("  ( arg\n levels )"),
            SemTree::Leaf(Label::kArg, "levels"));
}

TEST(BracketedTest, Errors) {
  try {
    ParseBracketed("(root (depr)");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_EQ(e.position(), 12u);
  }
  EXPECT_THROW(ParseBracketed("(root"), SyntaxError);
  EXPECT_THROW(ParseBracketed("(root))"), SyntaxError);
  EXPECT_THROW(ParseBracketed("(ns a b)"), SyntaxError);
  EXPECT_THROW(ParseBracketed("(klass x)"), LabelError);
  EXPECT_THROW(ParseBracketed(""), SyntaxError);
  EXPECT_THROW(ParseBracketed("(arg \"x)"), SyntaxError);
}

// Random trees over the full label set, not necessarily well-formed.
SemTree RandomTree(std::mt19937_64 &rng, int depth) {
  static const std::vector<std::string> codes = {
      "a", "x.y", "f()", "lower=1", "a b", "(", "\"q\"", "⟨none⟩", "é"};
  SemTree t;
  t.label = kAllLabels[rng() % kAllLabels.size()];
  if (LabelHasCode(t.label) || rng() % 4 == 0) {
    std::string code = codes[rng() % codes.size()];
    t.code = code;
  }
  int n = depth <= 0 ? 0 : static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) t.children.push_back(RandomTree(rng, depth - 1));
  return t;
}

TEST(BracketedTest, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    SemTree t = RandomTree(rng, 4);
    std::string text = ToBracketed(t);
    ASSERT_EQ(ParseBracketed(text), t) << text;
  }
}

// Independent statement of the grammar, checked node by node.
bool RefNodeOk(const SemTree &t) {
  if (LabelHasCode(t.label) != (t.code.has_value() && !t.code->empty())) {
    return false;
  }
  auto all = [&](std::initializer_list<Label> ok) {
    for (const SemTree &c : t.children) {
      if (std::find(ok.begin(), ok.end(), c.label) == ok.end()) return false;
    }
    return true;
  };
  const size_t n = t.children.size();
  switch (t.label) {
    case Label::kRoot:
      return (n == 1 && t.children[0].label == Label::kDepr) ||
             (n == 2 && t.children[0].label == Label::kDepr &&
              t.children[1].label == Label::kRepl);
    case Label::kDepr:
    case Label::kRepl:
      return n >= 1 && all({Label::kNs});
    case Label::kNs:
      return n <= 1 && all({Label::kFunc, Label::kAttr});
    case Label::kFunc:
      return all({Label::kArg});
    default:
      return n == 0;
  }
}

bool RefValid(const SemTree &t, bool top) {
  if (top && t.label != Label::kRoot) return false;
  if (!RefNodeOk(t)) return false;
  for (const SemTree &c : t.children) {
    if (!RefValid(c, false)) return false;
  }
  return true;
}

// Trees biased toward the grammar so that both outcomes are common.
SemTree NearGrammarTree(std::mt19937_64 &rng, Label label, int depth) {
  SemTree t;
  t.label = rng() % 12 == 0 ? kAllLabels[rng() % kAllLabels.size()] : label;
  if (LabelHasCode(t.label) != (rng() % 15 == 0)) t.code = "c";
  if (depth <= 0) return t;
  Label child = Label::kArg;
  int n = 0;
  switch (t.label) {
    case Label::kRoot: n = 1 + rng() % 2; child = Label::kDepr; break;
    case Label::kDepr:
    case Label::kRepl: n = 1 + rng() % 3; child = Label::kNs; break;
    case Label::kNs: n = rng() % 2; child = rng() % 2 ? Label::kFunc : Label::kAttr; break;
    case Label::kFunc: n = rng() % 3; child = Label::kArg; break;
    default: n = rng() % 10 == 0; break;
  }
  if (rng() % 10 == 0) n += 1;
  for (int i = 0; i < n; ++i) {
    Label l = child;
    if (t.label == Label::kRoot) l = i == 0 ? Label::kDepr : Label::kRepl;
    t.children.push_back(NearGrammarTree(rng, l, depth - 1));
  }
  return t;
}

TEST(ValidateTest, AgreesWithReferenceChecker) {
  std::mt19937_64 rng(19);
  int valid = 0;
  for (int i = 0; i < 5000; ++i) {
    SemTree t = NearGrammarTree(rng, Label::kRoot, 4);
    const bool ref = RefValid(t, true);
    ASSERT_EQ(Validate(t).empty(), ref) << ToBracketed(t);
    valid += ref;
    if (ref) ASSERT_EQ(ParseBracketed(ToBracketed(t)), t);
  }
  EXPECT_GT(valid, 100);
  EXPECT_LT(valid, 4900);
}

}  // namespace
}  // namespace deprecparse
