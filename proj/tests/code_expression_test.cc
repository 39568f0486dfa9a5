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

#include "deprecparse/code_expression.h"

#include <gtest/gtest.h>

#include "deprecparse/errors.h"
#include "golden.h"

namespace deprecparse {
namespace {

TEST(CodeExpressionTest, Parse) {
  CodeExpression e = CodeExpression::Parse("pandas.api.types.is_categorical_dtype");
  EXPECT_EQ(e.Namespace(), "pandas.api.types");
  EXPECT_EQ(e.name, "is_categorical_dtype");
  EXPECT_FALSE(e.call);

  e = CodeExpression::Parse("Series.clip(lower=threshold, upper=f(x, y))");
  EXPECT_EQ(e.Namespace(), "Series");
  EXPECT_EQ(e.name, "clip");
  ASSERT_EQ(e.args.size(), 2u);
  EXPECT_EQ(e.args[0], "lower=threshold");
  EXPECT_EQ(e.args[1], "upper=f(x, y)");
  EXPECT_TRUE(e.call);

  e = CodeExpression::Parse("bellman_ford()");
  EXPECT_TRUE(e.namespace_segments.empty());
  EXPECT_TRUE(e.call);
  EXPECT_TRUE(e.args.empty());
}

TEST(CodeExpressionTest, ParseErrors) {
  EXPECT_THROW(CodeExpression::Parse(""), ConversionError);
  EXPECT_THROW(CodeExpression::Parse("f(x"), ConversionError);
  EXPECT_THROW(CodeExpression::Parse("a..b"), ConversionError);
  EXPECT_THROW(CodeExpression::Parse("f(x,)"), ConversionError);
  EXPECT_THROW(CodeExpression::Parse("f(x) y"), ConversionError);
  try {
    CodeExpression::Parse("f(x");
  } catch (const ConversionError &err) {
    EXPECT_EQ(err.raw(), "f(x");
  }
}

TEST(CodeExpressionTest, Normalize) {
  EXPECT_EQ(NormalizeCode(" MultiIndex.copy() "), "MultiIndex.copy");
  EXPECT_EQ(NormalizeCode("f(a, b)"), "f(a,b)");
}

TEST(AnnotationToTreeTest, MultiIndex) {
  SemTree t = AnnotationToTree(
      std::vector<std::string>{"MultiIndex.copy(levels)",
                               "MultiIndex.copy(codes)"},
      std::vector<std::string>{"MultiIndex.set_levels(levels)",
                               "MultiIndex.set_codes(codes)"});
  EXPECT_EQ(t, golden::MultiIndexTree());
  EXPECT_TRUE(Validate(t).empty());
}

TEST(AnnotationToTreeTest, NamespaceAndBareFunction) {
  EXPECT_EQ(ToBracketed(AnnotationToTree(std::vector<std::string>{"urllib"},
                                         std::vector<std::string>{
                                             "urllib.request"})),
            "(root (depr (ns urllib)) (repl (ns urllib.request)))");
  SemTree bf = AnnotationToTree(std::vector<std::string>{"bellman_ford()"},
                                std::vector<std::string>{});
  EXPECT_EQ(ToBracketed(bf), "(root (depr (ns ⟨none⟩ (func bellman_ford))))");
  EXPECT_TRUE(Validate(bf).empty());
  SemTree attr = AnnotationToTree(
      std::vector<std::string>{"RangeIndex._start"},
      std::vector<std::string>{"RangeIndex.start"});
  EXPECT_EQ(ToBracketed(attr),
            "(root (depr (ns RangeIndex (attr _start))) "
            "(repl (ns RangeIndex (attr start))))");
  SemTree clip = AnnotationToTree(
      std::vector<std::string>{"Series.clip(lower=threshold)"},
      std::vector<std::string>{});
  EXPECT_EQ(ToBracketed(clip.children[0].children[0]),
            "(ns Series (func clip (arg lower=threshold)))");
  EXPECT_THROW(AnnotationToTree(std::vector<std::string>{"f(("},
                                std::vector<std::string>{}),
               ConversionError);
}

TEST(TreeToCodeExpressionsTest, RoundTrip) {
  const std::vector<std::string> depr = {"MultiIndex.copy(levels)",
                                         "bellman_ford()", "urllib",
                                         "RangeIndex._start"};
  const std::vector<std::string> repl = {"Series.clip(lower=x, upper=y)"};
  CodeSets sets = TreeToCodeExpressions(AnnotationToTree(depr, repl));
  ASSERT_EQ(sets.depr.size(), 4u);
  EXPECT_EQ(sets.depr[0], "MultiIndex.copy(levels)");
  EXPECT_EQ(NormalizeCode(sets.depr[1]), "bellman_ford");
  EXPECT_EQ(sets.depr[2], "urllib");
  EXPECT_EQ(sets.depr[3], "RangeIndex._start");
  ASSERT_EQ(sets.repl.size(), 1u);
  EXPECT_EQ(NormalizeCode(sets.repl[0]), "Series.clip(lower=x,upper=y)");
}

TEST(EntityTest, Constituents) {
  EXPECT_EQ(ToBracketed(EntityToCallable("MultiIndex.copy()", Label::kFunc, 2)),
            "(ns MultiIndex (func copy))");
  SemTree f = EntityToCallable("set_levels", Label::kFunc, 3);
  EXPECT_EQ(ToBracketed(f), "(func set_levels)");
  EXPECT_EQ(f.entity, 3);
  EXPECT_EQ(ToBracketed(EntityToNamespace("urllib.request", 0)),
            "(ns urllib.request)");
  EXPECT_EQ(ToBracketed(EntityToNamespace("f()", 0)), "(ns f)");
  EXPECT_EQ(ToBracketed(EntityToArg("lower=threshold", 0)),
            "(arg lower=threshold)");
}

}  // namespace
}  // namespace deprecparse
