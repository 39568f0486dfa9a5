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

#include <cctype>

#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

constexpr std::array<std::string_view, 7> kLabelNames = {
    "root", "depr", "repl", "ns", "func", "arg", "attr"};

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool EndsWithCallParens(std::string_view s) {
  return s.size() >= 2 && s.substr(s.size() - 2) == "()";
}

// An unquoted atom survives tokenization iff it is non-empty, has no
// whitespace, quotes or backslashes, and its parentheses only occur as
// adjacent "()" pairs that are not at the start.
bool NeedsQuoting(const SemTree &node) {
  const std::string &code = *node.code;
  if (code.empty() || code[0] == '(') return true;
  if (node.label == Label::kFunc && EndsWithCallParens(code)) return true;
  for (size_t i = 0; i < code.size(); ++i) {
    const char c = code[i];
    if (IsSpace(c) || c == '"' || c == '\\') return true;
    if (c == '(') {
      if (i + 1 >= code.size() || code[i + 1] != ')') return true;
      ++i;
    } else if (c == ')') {
      return true;
    }
  }
  return false;
}

void AppendCode(const SemTree &node, std::string *out) {
  if (!NeedsQuoting(node)) {
    out->append(*node.code);
    return;
  }
  out->push_back('"');
  for (char c : *node.code) {
    if (c == '"' || c == '\\') out->push_back('\\');
    out->push_back(c);
  }
  out->push_back('"');
}

void AppendHead(const SemTree &node, std::string *out) {
  out->push_back('(');
  out->append(LabelName(node.label));
  if (node.code) {
    out->push_back(' ');
    AppendCode(node, out);
  }
}

void AppendBracketed(const SemTree &node, std::string *out) {
  AppendHead(node, out);
  for (const SemTree &child : node.children) {
    out->push_back(' ');
    AppendBracketed(child, out);
  }
  out->push_back(')');
}

void AppendPretty(const SemTree &node, int indent, std::string *out) {
  bool flat = true;
  for (const SemTree &child : node.children) {
    if (!child.children.empty()) flat = false;
  }
  if (flat) {
    AppendBracketed(node, out);
    return;
  }
  AppendHead(node, out);
  for (const SemTree &child : node.children) {
    out->push_back('\n');
    out->append(indent + 2, ' ');
    AppendPretty(child, indent + 2, out);
  }
  out->push_back(')');
}

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  SemTree ReadTree() {
    SkipSpace();
    SemTree tree = ReadNode();
    SkipSpace();
    if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
    return tree;
  }

 private:
  enum class Token { kOpen, kClose, kAtom, kQuoted, kEnd };

  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  Token Peek() {
    SkipSpace();
    if (pos_ >= text_.size()) return Token::kEnd;
    switch (text_[pos_]) {
      case '(':
        return Token::kOpen;
      case ')':
        return Token::kClose;
      case '"':
        return Token::kQuoted;
      default:
        return Token::kAtom;
    }
  }

  std::string ReadAtom() {
    const size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (IsSpace(c) || c == ')' || c == '"') break;
      if (c == '(') {
        // "()" glued to an atom belongs to it, e.g. "copy()".
        if (pos_ > start && pos_ + 1 < text_.size() && text_[pos_ + 1] == ')') {
          pos_ += 2;
          continue;
        }
        break;
      }
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string ReadQuoted() {
    const size_t start = pos_;
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= text_.size()) break;
      }
      value.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) throw SyntaxError("unterminated string", start);
    ++pos_;
    return value;
  }

  SemTree ReadNode() {
    if (Peek() != Token::kOpen) {
      throw SyntaxError(pos_ >= text_.size() ? "unexpected end of input"
                                             : "expected '('",
                        pos_);
    }
    ++pos_;
    if (Peek() != Token::kAtom) {
      throw SyntaxError(pos_ >= text_.size() ? "unexpected end of input"
                                             : "expected label",
                        pos_);
    }
    const size_t label_pos = pos_;
    const std::string name = ReadAtom();
    const std::optional<Label> label = LabelFromName(name);
    if (!label) {
      throw LabelError("unknown label '" + name + "' at position " +
                       std::to_string(label_pos));
    }
    SemTree node;
    node.label = *label;
    Token next = Peek();
    if (next == Token::kAtom) {
      std::string code = ReadAtom();
      if (node.label == Label::kFunc && EndsWithCallParens(code)) {
        code.resize(code.size() - 2);
      }
      node.code = std::move(code);
    } else if (next == Token::kQuoted) {
      node.code = ReadQuoted();
    }
    for (;;) {
      next = Peek();
      if (next == Token::kOpen) {
        node.children.push_back(ReadNode());
      } else if (next == Token::kClose) {
        ++pos_;
        return node;
      } else if (next == Token::kEnd) {
        throw SyntaxError("unexpected end of input", pos_);
      } else {
        throw SyntaxError("unexpected code token", pos_);
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void CheckNode(const SemTree &node, const std::string &path,
               std::vector<Violation> *out) {
  auto report = [&](std::string message) {
    out->push_back({path, std::move(message)});
  };
  const std::string_view name = LabelName(node.label);
  if (LabelHasCode(node.label)) {
    if (!node.code || node.code->empty()) {
      report(std::string(name) + " requires a code string");
    }
  } else if (node.code) {
    report(std::string(name) + " takes no code string");
  }

  const auto &children = node.children;
  switch (node.label) {
    case Label::kRoot:
      if (children.empty() || children.size() > 2) {
        report("root needs 1 or 2 children, found " +
               std::to_string(children.size()));
      }
      if (!children.empty() && children[0].label != Label::kDepr) {
        report("first child of root must be depr");
      }
      if (children.size() >= 2 && children[1].label != Label::kRepl) {
        report("second child of root must be repl");
      }
      break;
    case Label::kDepr:
    case Label::kRepl:
      if (children.empty()) report(std::string(name) + " needs children");
      for (size_t i = 0; i < children.size(); ++i) {
        if (children[i].label != Label::kNs) {
          report("child " + std::to_string(i) + " of " + std::string(name) +
                 " must be ns");
        }
      }
      break;
    case Label::kNs:
      if (children.size() > 1) report("ns takes at most one child");
      for (size_t i = 0; i < children.size(); ++i) {
        if (children[i].label != Label::kFunc &&
            children[i].label != Label::kAttr) {
          report("child " + std::to_string(i) + " of ns must be func or attr");
        }
      }
      break;
    case Label::kFunc:
      for (size_t i = 0; i < children.size(); ++i) {
        if (children[i].label != Label::kArg) {
          report("child " + std::to_string(i) + " of func must be arg");
        }
      }
      break;
    case Label::kArg:
    case Label::kAttr:
      if (!children.empty()) report(std::string(name) + " takes no children");
      break;
  }

  for (size_t i = 0; i < children.size(); ++i) {
    CheckNode(children[i],
              path + "/" + std::to_string(i) + ":" +
                  std::string(LabelName(children[i].label)),
              out);
  }
}

}  // namespace

std::string_view LabelName(Label label) {
  return kLabelNames[static_cast<size_t>(label)];
}

std::optional<Label> LabelFromName(std::string_view name) {
  for (Label label : kAllLabels) {
    if (LabelName(label) == name) return label;
  }
  return std::nullopt;
}

bool LabelHasCode(Label label) {
  return label == Label::kNs || label == Label::kFunc ||
         label == Label::kArg || label == Label::kAttr;
}

SemTree SemTree::Leaf(Label label, std::string code, int entity) {
  SemTree t;
  t.label = label;
  t.code = std::move(code);
  t.entity = entity;
  return t;
}

SemTree SemTree::Node(Label label, std::vector<SemTree> children) {
  SemTree t;
  t.label = label;
  t.children = std::move(children);
  return t;
}

SemTree SemTree::Node(Label label, std::string code,
                      std::vector<SemTree> children, int entity) {
  SemTree t = Leaf(label, std::move(code), entity);
  t.children = std::move(children);
  return t;
}

size_t NodeCount(const SemTree &tree) {
  size_t n = 1;
  for (const SemTree &child : tree.children) n += NodeCount(child);
  return n;
}

std::vector<Violation> Validate(const SemTree &tree) {
  std::vector<Violation> out;
  const std::string path(LabelName(tree.label));
  if (tree.label != Label::kRoot) {
    out.push_back({path, "top label must be root"});
  }
  CheckNode(tree, path, &out);
  return out;
}

std::string ToBracketed(const SemTree &tree) {
  std::string out;
  AppendBracketed(tree, &out);
  return out;
}

std::string ToBracketedPretty(const SemTree &tree) {
  std::string out;
  AppendPretty(tree, 0, &out);
  return out;
}

SemTree ParseBracketed(std::string_view text) {
  return BracketReader(text).ReadTree();
}

}  // namespace deprecparse
