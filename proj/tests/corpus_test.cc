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

#include "deprecparse/corpus.h"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "deprecparse/errors.h"
#include "json.hpp"

namespace deprecparse {
namespace {

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string RandomWord(std::mt19937_64 &rng) {
  static const std::vector<std::string> pieces = {
      "a", "Index", "_x", "é", "\"", "\\", "copy()", "(", ")", "=", "ü",
      "set_levels", "\t", "🙂", ",", "{", "}", "'"};
  std::string w;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) w += pieces[rng() % pieces.size()];
  return w;
}

// A random record that satisfies every schema check.
AnnotatedExample RandomRecord(std::mt19937_64 &rng, int i) {
  AnnotatedExample ex;
  ex.id = "rec-" + std::to_string(i) + RandomWord(rng);
  if (rng() % 2) ex.library = RandomWord(rng);
  if (rng() % 2) ex.version = "1." + std::to_string(rng() % 30);
  ex.text = RandomWord(rng) + " " + RandomWord(rng);
  const int n = static_cast<int>(rng() % 12);
  const bool annotate = rng() % 2 == 0;
  for (int t = 0; t < n; ++t) {
    LinguisticToken tok;
    tok.surface = RandomWord(rng);
    // Surfaces inside code spans carry no whitespace.
    tok.surface.erase(std::remove(tok.surface.begin(), tok.surface.end(), '\t'),
                      tok.surface.end());
    if (tok.surface.empty()) tok.surface = "x";
    if (annotate) {
      tok.lemma = RandomWord(rng);
      tok.pos = rng() % 2 ? "NOUN" : "VERB";
      tok.dep = rng() % 2 ? "dobj" : "ROOT";
      tok.head = static_cast<int>(rng() % n);
    }
    ex.tokens.push_back(std::move(tok));
  }
  int t = 0;
  while (t < n) {
    if (rng() % 3 == 0) {
      const int len = 1 + static_cast<int>(rng() % std::min(3, n - t));
      CodeSpan span{t, t + len, ""};
      const int id = static_cast<int>(ex.code_spans.size());
      for (int k = t; k < t + len; ++k) {
        ex.tokens[k].is_code = true;
        ex.tokens[k].code_entity_id = id;
        span.entity += ex.tokens[k].surface;
      }
      ex.code_spans.push_back(span);
      t += len;
    } else {
      ++t;
    }
  }
  const int nd = static_cast<int>(rng() % 3);
  for (int k = 0; k < nd; ++k) ex.gold_depr.push_back(RandomWord(rng));
  for (int k = 0; k < static_cast<int>(rng() % 3); ++k) {
    ex.gold_repl.push_back(RandomWord(rng));
  }
  if (rng() % 2) ex.units = {"Method"};
  if (rng() % 3 == 0) ex.units.push_back("Parameter");
  if (rng() % 2) ex.workarounds = {"other method"};
  ex.gold = nd > 0 && rng() % 2 == 0;
  if (rng() % 4 == 0) {
    ex.gold_tree = ParseBracketed(
        "(root (depr (ns \"a b\" (func f (arg x)))) (repl (ns g)))");
  }
  if (rng() % 3 == 0) {
    nlohmann::json v = {{"k", RandomWord(rng)}, {"n", rng() % 100}};
    ex.extra["reviewer_" + std::to_string(rng() % 5)] = v.dump();
  }
  if (rng() % 4 == 0) ex.extra["source_url"] = nlohmann::json("http://x/").dump();
  return ex;
}

TEST(DatasetTest, RandomRecordsRoundTrip) {
  std::mt19937_64 rng(42);
  std::vector<AnnotatedExample> all;
  for (int i = 0; i < 1000; ++i) {
    AnnotatedExample ex = RandomRecord(rng, i);
    ASSERT_TRUE(CheckExample(ex).empty()) << CheckExample(ex).front();
    const std::string line = ToJsonLine(ex);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    const AnnotatedExample back = FromJsonLine(line);
    EXPECT_EQ(back, ex) << line;
    EXPECT_EQ(ToJsonLine(back), line);
    all.push_back(std::move(ex));
  }
  EXPECT_EQ(ParseDataset(SerializeDataset(all)), all);
}

TEST(DatasetTest, BundledFilesAreCanonical) {
  for (const std::string path : {DEPRECPARSE_DATA_DIR "/golden.jsonl",
                                 DEPRECPARSE_FIXTURE_DIR "/annotated.jsonl"}) {
    const std::string text = ReadFile(path);
    EXPECT_EQ(SerializeDataset(ParseDataset(text)), text) << path;
  }
  const auto golden = ReadDataset(DEPRECPARSE_DATA_DIR "/golden.jsonl");
  EXPECT_EQ(golden.size(), 12u);
  for (const AnnotatedExample &ex : golden) {
    EXPECT_TRUE(ex.gold);
    EXPECT_FALSE(HasAnnotations(ex.tokens)) << ex.id;
  }
  for (const AnnotatedExample &ex :
       ReadDataset(DEPRECPARSE_FIXTURE_DIR "/annotated.jsonl")) {
    EXPECT_TRUE(HasAnnotations(ex.tokens)) << ex.id;
  }
}

TEST(DatasetTest, MissingFieldNamesFieldAndLine) {
  const std::string good =
      R"({"id":"a","text":"t","tokens":[],"code_spans":[]})";
  const std::string bad = R"({"id":"b","text":"t","code_spans":[]})";
  try {
    ParseDataset(good + "\n" + bad + "\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("tokens"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  try {
    FromJsonLine(R"({"id":"a","text":"t","tokens":[{"is_code":false}],)"
                 R"("code_spans":[]})", 7);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find("surface"), std::string::npos);
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST(DatasetTest, TypeAndJsonErrors) {
  EXPECT_THROW(FromJsonLine(R"({"id":3,"text":"t","tokens":[],"code_spans":[]})"),
               SchemaError);
  EXPECT_THROW(FromJsonLine("{not json"), SchemaError);
  EXPECT_THROW(FromJsonLine("[1,2]"), SchemaError);
  const std::string bad_tree =
      R"j({"id":"a","text":"t","tokens":[],"code_spans":[],)j"
      R"j("gold_tree":"(root (depr)"})j";
  EXPECT_THROW(FromJsonLine(bad_tree), SchemaError);
}

TEST(DatasetTest, UnknownFieldsArePreserved) {
  const std::string line =
      R"({"code_spans":[],"id":"a","note":{"by":"x","n":[1,2]},"text":"t",)"
      R"("tokens":[],"zeta":null})";
  const AnnotatedExample ex = FromJsonLine(line);
  ASSERT_EQ(ex.extra.size(), 2u);
  EXPECT_EQ(ex.extra.at("note"), R"({"by":"x","n":[1,2]})");
  const std::string out = ToJsonLine(ex);
  EXPECT_NE(out.find(R"("note":{"by":"x","n":[1,2]})"), std::string::npos);
  EXPECT_NE(out.find(R"("zeta":null)"), std::string::npos);
}

TEST(DatasetTest, DuplicateIdsAreRejected) {
  const std::string rec =
      R"({"id":"a","text":"t","tokens":[],"code_spans":[]})";
  try {
    ParseDataset(rec + "\n\n" + rec + "\n");
    FAIL();
  } catch (const SchemaError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(DatasetTest, SchemaChecks) {
  AnnotatedExample ex = ExampleFromItem(
      ParseMarkedText("The `urllib` module, use `urllib.request`."), "x");
  EXPECT_TRUE(CheckExample(ex).empty());

  AnnotatedExample bad = ex;
  bad.code_spans[1].begin_token = 0;
  EXPECT_FALSE(CheckExample(bad).empty());  // overlap and coverage
  bad = ex;
  bad.code_spans[0].end_token = 100;
  EXPECT_FALSE(CheckExample(bad).empty());
  bad = ex;
  bad.tokens[0].head = 99;
  EXPECT_FALSE(CheckExample(bad).empty());
  bad = ex;
  bad.gold = true;
  EXPECT_FALSE(CheckExample(bad).empty());  // gold without gold_depr
  bad = ex;
  bad.code_spans[0].entity = "urllib2";
  EXPECT_FALSE(CheckExample(bad).empty());
  bad = ex;
  bad.tokens[0].is_code = true;
  bad.tokens[0].code_entity_id = 0;
  EXPECT_FALSE(CheckExample(bad).empty());  // code token outside its span
}

TEST(TokenizeTest, MarkedText) {
  const AnnotatedExample ex = ExampleFromItem(
      ParseMarkedText("The `urllib` module has been deprecated."), "u");
  std::vector<std::string> surfaces;
  for (const LinguisticToken &t : ex.tokens) surfaces.push_back(t.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"The", "urllib", "module",
                                                "has", "been", "deprecated",
                                                "."}));
  ASSERT_EQ(ex.code_spans.size(), 1u);
  EXPECT_EQ(ex.code_spans[0], (CodeSpan{1, 2, "urllib"}));
  EXPECT_TRUE(ex.tokens[1].is_code);
  EXPECT_EQ(ex.tokens[1].code_entity_id, 0);
  EXPECT_EQ(ex.text, "The urllib module has been deprecated.");
}

TEST(TokenizeTest, CodeSpansKeepInnerPunctuation) {
  const AnnotatedExample ex = ExampleFromItem(
      ParseMarkedText("Use `Series.clip(lower = t)`; snake_case stays."), "c");
  ASSERT_EQ(ex.code_spans.size(), 1u);
  EXPECT_EQ(ex.code_spans[0].entity, "Series.clip(lower = t)");
  EXPECT_EQ(ex.tokens[1].surface, "Series.clip(lower=t)");
  EXPECT_EQ(ex.tokens[2].surface, ";");
  EXPECT_EQ(ex.tokens[3].surface, "snake_case");
  EXPECT_EQ(ExampleEntities(ex)[0].token_begin, 1);
}

TEST(TokenizeTest, UrlAndMetadataKept) {
  DeprecationItem item = ParseMarkedText("`a` is deprecated");
  item.library = "lib";
  item.version = "2.0";
  item.url = "https://example.org/notes.html";
  const AnnotatedExample ex = ExampleFromItem(item, "id1");
  EXPECT_EQ(ex.library, "lib");
  EXPECT_EQ(ex.version, "2.0");
  EXPECT_EQ(ex.extra.at("source_url"), "\"https://example.org/notes.html\"");
  EXPECT_EQ(FromJsonLine(ToJsonLine(ex)), ex);
}

TEST(TokenizeTest, BadSpansAreRejected) {
  DeprecationItem item;
  item.text = "abc def";
  item.code = {{0, 5}, {4, 7}};
  std::vector<LinguisticToken> tokens;
  std::vector<CodeSpan> spans;
  EXPECT_THROW(Tokenize(item, &tokens, &spans), Error);
  item.code = {{0, 50}};
  EXPECT_THROW(Tokenize(item, &tokens, &spans), Error);
}

TEST(ExtractTest, MinimalFixture) {
  const ExtractResult r =
      ExtractDeprecations(ReadFile(DEPRECPARSE_FIXTURE_DIR "/minimal.html"));
  ASSERT_EQ(r.items.size(), 2u);
  for (const DeprecationItem &item : r.items) EXPECT_EQ(item.code.size(), 2u);
  EXPECT_EQ(r.items[0].text, "foo() is deprecated, use bar() instead.");
  const auto &s = r.items[1].code[1];
  EXPECT_EQ(r.items[1].text.substr(s.begin, s.end - s.begin), "Baz.run()");
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ExtractTest, ReleaseNotesFixture) {
  ExtractOptions opts;
  opts.library = "pandas";
  opts.version = "0.24.0";
  const ExtractResult r = ExtractDeprecations(
      ReadFile(DEPRECPARSE_FIXTURE_DIR "/release_notes.html"), opts);
  // Counted by hand: six items, nested lists folded into their parent,
  // script, style and comments ignored.
  ASSERT_EQ(r.items.size(), 6u);
  const std::vector<size_t> spans = {5, 2, 3, 1, 3, 1};
  for (size_t i = 0; i < r.items.size(); ++i) {
    EXPECT_EQ(r.items[i].code.size(), spans[i]) << r.items[i].text;
    EXPECT_EQ(r.items[i].library, "pandas");
    EXPECT_EQ(r.items[i].version, "0.24.0");
  }
  EXPECT_EQ(r.items[1].text,
            "Series.clip_lower(), Series.clip_upper() are deprecated & will "
            "be removed in a future version.");
  const auto &s = r.items[3].code[0];
  EXPECT_EQ(r.items[3].text.substr(s.begin, s.end - s.begin), "dtype alias");
  EXPECT_TRUE(r.warnings.empty());

  // The MultiIndex item tokenizes exactly like the bundled record.
  const AnnotatedExample got = ExampleFromItem(r.items[0], "m");
  const auto golden = ReadDataset(DEPRECPARSE_DATA_DIR "/golden.jsonl");
  EXPECT_EQ(got.tokens, golden[0].tokens);
  EXPECT_EQ(got.code_spans, golden[0].code_spans);
}

TEST(ExtractTest, HeadingOptionsAndWarnings) {
  const std::string html =
      "<h3>Deprecated APIs</h3><ol><li>old <code>x</code>"
      "<li>older <code></code><code>y</code>";
  ExtractOptions opts;
  EXPECT_TRUE(ExtractDeprecations(html, opts).items.empty());
  opts.headings = {"deprecated apis"};
  const ExtractResult r = ExtractDeprecations(html, opts);
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].text, "old x");
  EXPECT_EQ(r.items[1].text, "older y");
  EXPECT_EQ(r.warnings.size(), 2u);  // empty code element, unclosed item
}

TEST(ExtractTest, EntitiesAndCodeVariants) {
  const std::string html =
      "<h2>Deprecations</h2><ul><li>&lt;<tt>a&amp;b</tt>&gt; &#x41;"
      "<kbd>k</kbd> <samp>s</samp> <span class=\"pre\">p</span>"
      "&nbsp;x</li></ul>";
  const ExtractResult r = ExtractDeprecations(html);
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_EQ(r.items[0].code.size(), 4u);
  EXPECT_EQ(r.items[0].text.substr(0, 8), "<a&b> Ak");
}

}  // namespace
}  // namespace deprecparse
