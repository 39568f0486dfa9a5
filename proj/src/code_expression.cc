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

#include <cctype>

#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> SplitDotted(std::string_view path,
                                     std::string_view raw) {
  std::vector<std::string> segments;
  size_t start = 0;
  for (;;) {
    const size_t dot = path.find('.', start);
    std::string segment = Trim(path.substr(start, dot - start));
    if (segment.empty()) {
      throw ConversionError(std::string(raw), "empty name segment");
    }
    for (char c : segment) {
      if (IsSpace(c) || c == '(' || c == ')' || c == ',') {
        throw ConversionError(std::string(raw),
                              "invalid character in name '" + segment + "'");
      }
    }
    segments.push_back(std::move(segment));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return segments;
}

SemTree ExpressionToNs(const CodeExpression &expr) {
  if (expr.call || !expr.args.empty()) {
    SemTree func = SemTree::Leaf(Label::kFunc, expr.name);
    for (const std::string &arg : expr.args) {
      func.children.push_back(SemTree::Leaf(Label::kArg, arg));
    }
    const std::string ns = expr.namespace_segments.empty()
                               ? std::string(kNoNamespace)
                               : expr.Namespace();
    return SemTree::Node(Label::kNs, ns, {std::move(func)});
  }
  if (!expr.namespace_segments.empty()) {
    const std::string &owner = expr.namespace_segments.back();
    if (std::isupper(static_cast<unsigned char>(owner[0]))) {
      return SemTree::Node(Label::kNs, expr.Namespace(),
                           {SemTree::Leaf(Label::kAttr, expr.name)});
    }
  }
  std::vector<std::string> all = expr.namespace_segments;
  all.push_back(expr.name);
  return SemTree::Leaf(Label::kNs, Join(all, "."));
}

void SetEntity(SemTree *tree, int entity) {
  tree->entity = entity;
  for (SemTree &child : tree->children) SetEntity(&child, entity);
}

std::string RenderNs(const SemTree &ns) {
  const bool anonymous = ns.code && *ns.code == kNoNamespace;
  const std::string prefix = ns.code && !anonymous ? *ns.code : "";
  if (ns.children.empty()) return prefix;
  std::string out = prefix.empty() ? "" : prefix + ".";
  const SemTree &member = ns.children.front();
  out += member.code.value_or("");
  if (member.label == Label::kFunc) {
    std::vector<std::string> args;
    for (const SemTree &arg : member.children) {
      args.push_back(arg.code.value_or(""));
    }
    out += "(" + Join(args, ", ") + ")";
  }
  return out;
}

void CollectSide(const SemTree &side, std::vector<std::string> *out) {
  for (const SemTree &child : side.children) {
    std::string rendered;
    switch (child.label) {
      case Label::kNs:
        rendered = RenderNs(child);
        break;
      case Label::kFunc:
      case Label::kAttr: {
        SemTree wrapper = SemTree::Node(Label::kNs, std::string(kNoNamespace),
                                        {child});
        rendered = RenderNs(wrapper);
        break;
      }
      default:
        rendered = child.code.value_or("");
    }
    if (!rendered.empty()) out->push_back(std::move(rendered));
  }
}

}  // namespace

CodeExpression CodeExpression::Parse(std::string_view raw_view) {
  const std::string raw(raw_view);
  const std::string text = Trim(raw_view);
  if (text.empty()) throw ConversionError(raw, "empty expression");

  CodeExpression expr;
  expr.raw = raw;
  const size_t open = text.find('(');
  if (text.find(')') < open) throw ConversionError(raw, "unbalanced ')'");
  std::string_view path = std::string_view(text).substr(0, open);
  if (open != std::string::npos) {
    expr.call = true;
    int depth = 0;
    size_t close = std::string::npos;
    std::string current;
    for (size_t i = open; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '(') {
        if (depth++ > 0) current.push_back(c);
      } else if (c == ')') {
        if (--depth == 0) {
          close = i;
          break;
        }
        current.push_back(c);
      } else if (c == ',' && depth == 1) {
        std::string arg = Trim(current);
        if (arg.empty()) throw ConversionError(raw, "empty argument");
        expr.args.push_back(std::move(arg));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (close == std::string::npos) throw ConversionError(raw, "unbalanced '('");
    if (close + 1 != text.size()) {
      throw ConversionError(raw, "unexpected text after argument list");
    }
    std::string last = Trim(current);
    if (!last.empty()) {
      expr.args.push_back(std::move(last));
    } else if (!expr.args.empty()) {
      throw ConversionError(raw, "empty argument");
    }
  }
  std::vector<std::string> segments = SplitDotted(path, raw);
  expr.name = std::move(segments.back());
  segments.pop_back();
  expr.namespace_segments = std::move(segments);
  return expr;
}

std::string CodeExpression::Namespace() const {
  return Join(namespace_segments, ".");
}

std::string CodeExpression::Render() const {
  std::string out = Namespace();
  if (!out.empty()) out.push_back('.');
  out += name;
  if (call || !args.empty()) out += "(" + Join(args, ", ") + ")";
  return out;
}

std::string NormalizeCode(std::string_view code) {
  std::string out;
  for (char c : code) {
    if (!IsSpace(c)) out.push_back(c);
  }
  if (out.size() >= 2 && out.compare(out.size() - 2, 2, "()") == 0) {
    out.resize(out.size() - 2);
  }
  return out;
}

SemTree AnnotationToTree(const std::vector<CodeExpression> &depr,
                         const std::vector<CodeExpression> &repl) {
  SemTree root = SemTree::Node(Label::kRoot, {});
  SemTree depr_node = SemTree::Node(Label::kDepr, {});
  for (const CodeExpression &e : depr) {
    depr_node.children.push_back(ExpressionToNs(e));
  }
  root.children.push_back(std::move(depr_node));
  if (!repl.empty()) {
    SemTree repl_node = SemTree::Node(Label::kRepl, {});
    for (const CodeExpression &e : repl) {
      repl_node.children.push_back(ExpressionToNs(e));
    }
    root.children.push_back(std::move(repl_node));
  }
  return root;
}

SemTree AnnotationToTree(const std::vector<std::string> &depr,
                         const std::vector<std::string> &repl) {
  std::vector<CodeExpression> d, r;
  for (const std::string &s : depr) d.push_back(CodeExpression::Parse(s));
  for (const std::string &s : repl) r.push_back(CodeExpression::Parse(s));
  return AnnotationToTree(d, r);
}

CodeSets TreeToCodeExpressions(const SemTree &tree) {
  CodeSets sets;
  if (tree.label == Label::kDepr) {
    CollectSide(tree, &sets.depr);
    return sets;
  }
  for (const SemTree &child : tree.children) {
    if (child.label == Label::kDepr) CollectSide(child, &sets.depr);
    if (child.label == Label::kRepl) CollectSide(child, &sets.repl);
  }
  return sets;
}

SemTree EntityToNamespace(std::string_view text, int entity) {
  std::string code = Trim(text);
  if (code.size() >= 2 && code.compare(code.size() - 2, 2, "()") == 0) {
    code.resize(code.size() - 2);
  }
  return SemTree::Leaf(Label::kNs, std::move(code), entity);
}

SemTree EntityToArg(std::string_view text, int entity) {
  return SemTree::Leaf(Label::kArg, Trim(text), entity);
}

SemTree EntityToCallable(std::string_view text, Label label, int entity) {
  CodeExpression expr;
  try {
    expr = CodeExpression::Parse(text);
  } catch (const ConversionError &) {
    // Entities are taken verbatim from documentation and may not be valid
    // expressions; fall back to the whole text as the name.
    expr = CodeExpression{};
    expr.name = Trim(text);
  }
  SemTree member = SemTree::Leaf(label, expr.name);
  if (label == Label::kFunc) {
    for (const std::string &arg : expr.args) {
      member.children.push_back(SemTree::Leaf(Label::kArg, arg));
    }
  }
  SemTree result =
      expr.namespace_segments.empty()
          ? std::move(member)
          : SemTree::Node(Label::kNs, expr.Namespace(), {std::move(member)});
  SetEntity(&result, entity);
  return result;
}

}  // namespace deprecparse
