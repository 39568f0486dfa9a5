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

// Deprecation records: extraction from release-notes HTML, tokenization,
// and the line-delimited JSON dataset format.

#ifndef DEPRECPARSE_CORPUS_H_
#define DEPRECPARSE_CORPUS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deprecparse/token.h"
#include "deprecparse/transition.h"
#include "deprecparse/tree.h"

namespace deprecparse {

struct CodeSpan {
  int begin_token = 0;
  int end_token = 0;  // exclusive
  std::string entity;

  friend bool operator==(const CodeSpan &, const CodeSpan &) = default;
};

struct AnnotatedExample {
  std::string id;
  std::string library;
  std::string version;
  std::string text;
  std::vector<LinguisticToken> tokens;
  std::vector<CodeSpan> code_spans;
  std::vector<std::string> gold_depr;  // code expressions
  std::vector<std::string> gold_repl;
  std::vector<std::string> units;
  std::vector<std::string> workarounds;
  bool gold = false;
  // Explicit gold tree; when absent it is derived from gold_depr/gold_repl.
  std::optional<SemTree> gold_tree;
  // Unrecognized top-level fields, as serialized JSON values.
  std::map<std::string, std::string> extra;

  friend bool operator==(const AnnotatedExample &,
                         const AnnotatedExample &) = default;
};

// Schema checks beyond JSON shape. Returns human-readable problems.
std::vector<std::string> CheckExample(const AnnotatedExample &example);

// One code entity per code span, in span order.
std::vector<CodeEntity> ExampleEntities(const AnnotatedExample &example);

// The explicit gold tree or the one built from the gold code expressions.
// Throws ConversionError.
SemTree GoldTree(const AnnotatedExample &example);

bool HasGold(const AnnotatedExample &example);

// Canonical single-line JSON (sorted keys) and its inverse. FromJsonLine
// throws SchemaError with `line`.
std::string ToJsonLine(const AnnotatedExample &example);
AnnotatedExample FromJsonLine(std::string_view line, size_t line_no = 1);

// Reads one record per non-blank line. Throws SchemaError on schema
// violations and duplicate ids, Error on I/O failure.
std::vector<AnnotatedExample> ReadDataset(const std::string &path);
std::vector<AnnotatedExample> ParseDataset(std::string_view content);
void WriteDataset(const std::vector<AnnotatedExample> &examples,
                  const std::string &path);
std::string SerializeDataset(const std::vector<AnnotatedExample> &examples);

// A list item from release notes with byte offsets of its code spans.
struct DeprecationItem {
  struct Span {
    size_t begin = 0;
    size_t end = 0;  // exclusive
  };
  std::string text;
  std::vector<Span> code;
  std::string library;
  std::string version;
  std::string url;
};

// Splits on whitespace and punctuation; every code span becomes one token.
// Throws Error when spans overlap or leave the text.
void Tokenize(const DeprecationItem &item, std::vector<LinguisticToken> *tokens,
              std::vector<CodeSpan> *spans);

AnnotatedExample ExampleFromItem(const DeprecationItem &item, std::string id);

// Test and fixture helper: code spans marked with backticks, e.g.
// "The `urllib` module has been deprecated."
DeprecationItem ParseMarkedText(std::string_view marked);

struct ExtractOptions {
  std::vector<std::string> headings = {"Deprecations", "Deprecated"};
  std::string library;
  std::string version;
  std::string url;
};

struct ExtractResult {
  std::vector<DeprecationItem> items;
  std::vector<std::string> warnings;
};

// Collects the list items under headings matching `options.headings`
// (case-insensitive, whole heading text) until the next heading of the same
// or a higher level. code, tt, kbd and samp elements, and span elements of
// class "pre", become code spans.
ExtractResult ExtractDeprecations(std::string_view html,
                                  const ExtractOptions &options = {});

}  // namespace deprecparse

#endif  // DEPRECPARSE_CORPUS_H_
