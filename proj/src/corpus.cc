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

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "deprecparse/code_expression.h"
#include "deprecparse/errors.h"
#include "json.hpp"

namespace deprecparse {
namespace {

using nlohmann::json;

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool IsPunct(char c) {
  return c != '_' && std::ispunct(static_cast<unsigned char>(c));
}

class RecordReader {
 public:
  explicit RecordReader(size_t line) : line_(line) {}

  [[noreturn]] void Fail(const std::string &field,
                         const std::string &problem) const {
    throw SchemaError("field '" + field + "': " + problem, line_);
  }

  const json *Get(const json &obj, const std::string &field,
                  bool required) const {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
      if (required) Fail(field, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::string String(const json &obj, const std::string &field,
                     bool required) const {
    const json *v = Get(obj, field, required);
    if (v == nullptr) return "";
    if (!v->is_string()) Fail(field, "expected a string");
    return v->get<std::string>();
  }

  std::optional<int> Int(const json &obj, const std::string &field) const {
    const json *v = Get(obj, field, false);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer()) Fail(field, "expected an integer");
    const auto value = v->get<int64_t>();
    if (value < INT32_MIN || value > INT32_MAX) Fail(field, "out of range");
    return static_cast<int>(value);
  }

  bool Bool(const json &obj, const std::string &field) const {
    const json *v = Get(obj, field, false);
    if (v == nullptr) return false;
    if (!v->is_boolean()) Fail(field, "expected a boolean");
    return v->get<bool>();
  }

  std::vector<std::string> Strings(const json &obj,
                                   const std::string &field) const {
    const json *v = Get(obj, field, false);
    std::vector<std::string> out;
    if (v == nullptr) return out;
    if (!v->is_array()) Fail(field, "expected an array of strings");
    for (const json &s : *v) {
      if (!s.is_string()) Fail(field, "expected an array of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  const json &Array(const json &obj, const std::string &field) const {
    const json *v = Get(obj, field, true);
    if (!v->is_array()) Fail(field, "expected an array");
    return *v;
  }

 private:
  size_t line_;
};

const std::set<std::string> &KnownFields() {
  static const std::set<std::string> fields = {
      "id",        "library",   "version", "text",        "tokens",
      "code_spans", "gold_depr", "gold_repl", "units",     "workarounds",
      "gold",      "gold_tree"};
  return fields;
}

}  // namespace

std::vector<std::string> CheckExample(const AnnotatedExample &ex) {
  std::vector<std::string> problems;
  const int n = static_cast<int>(ex.tokens.size());
  if (ex.id.empty()) problems.push_back("id is empty");
  for (int i = 0; i < n; ++i) {
    const LinguisticToken &t = ex.tokens[i];
    if (t.head < -1 || t.head >= n) {
      problems.push_back("token " + std::to_string(i) + " has head " +
                         std::to_string(t.head) + " outside the sentence");
    }
    if (t.code_entity_id &&
        (*t.code_entity_id < 0 ||
         *t.code_entity_id >= static_cast<int>(ex.code_spans.size()))) {
      problems.push_back("token " + std::to_string(i) +
                         " refers to a missing code span");
    }
  }
  int prev_end = 0;
  for (size_t k = 0; k < ex.code_spans.size(); ++k) {
    const CodeSpan &s = ex.code_spans[k];
    const std::string where = "code span " + std::to_string(k);
    if (s.begin_token < 0 || s.end_token > n || s.begin_token >= s.end_token) {
      problems.push_back(where + " is outside the token range");
      continue;
    }
    if (s.begin_token < prev_end) {
      problems.push_back(where + " overlaps or precedes the previous span");
    }
    prev_end = s.end_token;
    std::string covered;
    for (int i = s.begin_token; i < s.end_token; ++i) {
      const LinguisticToken &t = ex.tokens[i];
      covered += t.surface;
      if (!t.is_code || t.code_entity_id != static_cast<int>(k)) {
        problems.push_back(where + " covers token " + std::to_string(i) +
                           " which is not marked as its code");
      }
    }
    std::string entity;
    for (char c : s.entity) {
      if (!IsSpace(c)) entity.push_back(c);
    }
    if (entity != covered) {
      problems.push_back(where + " entity '" + s.entity +
                         "' differs from the tokens it covers");
    }
  }
  for (int i = 0; i < n; ++i) {
    const LinguisticToken &t = ex.tokens[i];
    if (t.is_code && !t.code_entity_id) {
      problems.push_back("code token " + std::to_string(i) +
                         " belongs to no code span");
    }
    if (t.code_entity_id && *t.code_entity_id >= 0 &&
        *t.code_entity_id < static_cast<int>(ex.code_spans.size())) {
      const CodeSpan &s = ex.code_spans[*t.code_entity_id];
      if (i < s.begin_token || i >= s.end_token) {
        problems.push_back("token " + std::to_string(i) +
                           " lies outside code span " +
                           std::to_string(*t.code_entity_id));
      }
    }
  }
  if (ex.gold && ex.gold_depr.empty()) {
    problems.push_back("gold example without deprecated code expressions");
  }
  return problems;
}

std::vector<CodeEntity> ExampleEntities(const AnnotatedExample &ex) {
  std::vector<CodeEntity> out;
  for (size_t k = 0; k < ex.code_spans.size(); ++k) {
    const CodeSpan &s = ex.code_spans[k];
    out.push_back({s.entity, static_cast<int>(k), s.begin_token, s.end_token});
  }
  return out;
}

SemTree GoldTree(const AnnotatedExample &ex) {
  if (ex.gold_tree) return *ex.gold_tree;
  return AnnotationToTree(ex.gold_depr, ex.gold_repl);
}

bool HasGold(const AnnotatedExample &ex) {
  return ex.gold_tree.has_value() || !ex.gold_depr.empty();
}

std::string ToJsonLine(const AnnotatedExample &ex) {
  json j;
  for (const auto &[key, value] : ex.extra) j[key] = json::parse(value);
  j["id"] = ex.id;
  j["library"] = ex.library;
  j["version"] = ex.version;
  j["text"] = ex.text;
  json tokens = json::array();
  for (const LinguisticToken &t : ex.tokens) {
    json tj;
    tj["surface"] = t.surface;
    tj["is_code"] = t.is_code;
    if (!t.lemma.empty()) tj["lemma"] = t.lemma;
    if (!t.pos.empty()) tj["pos"] = t.pos;
    if (!t.dep.empty()) tj["dep"] = t.dep;
    if (t.head >= 0) tj["head"] = t.head;
    if (t.code_entity_id) tj["code_entity_id"] = *t.code_entity_id;
    tokens.push_back(std::move(tj));
  }
  j["tokens"] = std::move(tokens);
  json spans = json::array();
  for (const CodeSpan &s : ex.code_spans) {
    spans.push_back({{"begin_token", s.begin_token},
                     {"end_token", s.end_token},
                     {"entity", s.entity}});
  }
  j["code_spans"] = std::move(spans);
  j["gold_depr"] = ex.gold_depr;
  j["gold_repl"] = ex.gold_repl;
  j["units"] = ex.units;
  j["workarounds"] = ex.workarounds;
  j["gold"] = ex.gold;
  if (ex.gold_tree) j["gold_tree"] = ToBracketed(*ex.gold_tree);
  return j.dump();
}

AnnotatedExample FromJsonLine(std::string_view line, size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error &e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw SchemaError("record is not an object", line_no);
  RecordReader r(line_no);
  AnnotatedExample ex;
  ex.id = r.String(j, "id", true);
  ex.library = r.String(j, "library", false);
  ex.version = r.String(j, "version", false);
  ex.text = r.String(j, "text", true);
  for (const json &tj : r.Array(j, "tokens")) {
    if (!tj.is_object()) r.Fail("tokens", "expected objects");
    LinguisticToken t;
    t.surface = r.String(tj, "surface", true);
    t.lemma = r.String(tj, "lemma", false);
    t.pos = r.String(tj, "pos", false);
    t.dep = r.String(tj, "dep", false);
    t.head = r.Int(tj, "head").value_or(-1);
    t.is_code = r.Bool(tj, "is_code");
    t.code_entity_id = r.Int(tj, "code_entity_id");
    ex.tokens.push_back(std::move(t));
  }
  for (const json &sj : r.Array(j, "code_spans")) {
    if (!sj.is_object()) r.Fail("code_spans", "expected objects");
    CodeSpan s;
    const auto begin = r.Int(sj, "begin_token");
    const auto end = r.Int(sj, "end_token");
    if (!begin) r.Fail("begin_token", "missing required field");
    if (!end) r.Fail("end_token", "missing required field");
    s.begin_token = *begin;
    s.end_token = *end;
    s.entity = r.String(sj, "entity", true);
    ex.code_spans.push_back(std::move(s));
  }
  ex.gold_depr = r.Strings(j, "gold_depr");
  ex.gold_repl = r.Strings(j, "gold_repl");
  ex.units = r.Strings(j, "units");
  ex.workarounds = r.Strings(j, "workarounds");
  ex.gold = r.Bool(j, "gold");
  const std::string tree = r.String(j, "gold_tree", false);
  if (!tree.empty()) {
    try {
      ex.gold_tree = ParseBracketed(tree);
    } catch (const Error &e) {
      r.Fail("gold_tree", e.what());
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!KnownFields().count(it.key())) ex.extra[it.key()] = it->dump();
  }
  const std::vector<std::string> problems = CheckExample(ex);
  if (!problems.empty()) {
    throw SchemaError("record '" + ex.id + "': " + problems.front(), line_no);
  }
  return ex;
}

std::vector<AnnotatedExample> ParseDataset(std::string_view content) {
  std::vector<AnnotatedExample> out;
  std::set<std::string> ids;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    bool blank = true;
    for (char c : line) blank = blank && IsSpace(c);
    if (blank) continue;
    AnnotatedExample ex = FromJsonLine(line, line_no);
    if (!ids.insert(ex.id).second) {
      throw SchemaError("duplicate id '" + ex.id + "'", line_no);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<AnnotatedExample> ReadDataset(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read dataset " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDataset(buffer.str());
}

std::string SerializeDataset(const std::vector<AnnotatedExample> &examples) {
  std::string out;
  for (const AnnotatedExample &ex : examples) {
    out += ToJsonLine(ex);
    out.push_back('\n');
  }
  return out;
}

void WriteDataset(const std::vector<AnnotatedExample> &examples,
                  const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write dataset " + path);
  out << SerializeDataset(examples);
  if (!out) throw Error("failed writing dataset " + path);
}

void Tokenize(const DeprecationItem &item, std::vector<LinguisticToken> *tokens,
              std::vector<CodeSpan> *spans) {
  const std::string &text = item.text;
  size_t prev_end = 0;
  for (const DeprecationItem::Span &s : item.code) {
    if (s.begin >= s.end || s.end > text.size() || s.begin < prev_end) {
      throw Error("invalid code span [" + std::to_string(s.begin) + ", " +
                  std::to_string(s.end) + ")");
    }
    prev_end = s.end;
  }
  auto word = [&](std::string surface) {
    LinguisticToken t;
    t.surface = std::move(surface);
    tokens->push_back(std::move(t));
  };
  auto plain = [&](size_t from, size_t to) {
    size_t i = from;
    while (i < to) {
      if (IsSpace(text[i])) {
        ++i;
      } else if (IsPunct(text[i])) {
        word(std::string(1, text[i]));
        ++i;
      } else {
        const size_t start = i;
        while (i < to && !IsSpace(text[i]) && !IsPunct(text[i])) ++i;
        word(text.substr(start, i - start));
      }
    }
  };
  size_t pos = 0;
  for (size_t k = 0; k < item.code.size(); ++k) {
    const DeprecationItem::Span &s = item.code[k];
    plain(pos, s.begin);
    std::string surface;
    for (size_t i = s.begin; i < s.end; ++i) {
      if (!IsSpace(text[i])) surface.push_back(text[i]);
    }
    if (surface.empty()) throw Error("code span contains only whitespace");
    LinguisticToken t;
    t.surface = surface;
    t.is_code = true;
    t.code_entity_id = static_cast<int>(k);
    const int index = static_cast<int>(tokens->size());
    tokens->push_back(std::move(t));
    spans->push_back({index, index + 1, text.substr(s.begin, s.end - s.begin)});
    pos = s.end;
  }
  plain(pos, text.size());
}

AnnotatedExample ExampleFromItem(const DeprecationItem &item, std::string id) {
  AnnotatedExample ex;
  ex.id = std::move(id);
  ex.library = item.library;
  ex.version = item.version;
  ex.text = item.text;
  Tokenize(item, &ex.tokens, &ex.code_spans);
  if (!item.url.empty()) ex.extra["source_url"] = json(item.url).dump();
  return ex;
}

DeprecationItem ParseMarkedText(std::string_view marked) {
  DeprecationItem item;
  bool in_code = false;
  size_t begin = 0;
  for (char c : marked) {
    if (c == '`') {
      if (in_code) {
        item.code.push_back({begin, item.text.size()});
      } else {
        begin = item.text.size();
      }
      in_code = !in_code;
    } else {
      item.text.push_back(c);
    }
  }
  if (in_code) throw Error("unterminated code mark in '" + std::string(marked) + "'");
  return item;
}

}  // namespace deprecparse
