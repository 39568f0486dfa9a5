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

#include "deprecparse/transition.h"

#include <algorithm>
#include <array>
#include <functional>
#include <utility>

#include "deprecparse/code_expression.h"
#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

constexpr std::array<std::string_view, 9> kKindNames = {
    "shift",          "unary_x",       "reduce_rx",
    "reduce_lx",      "reduce_rx_each", "reduce_lx_each",
    "reuse_args_rx",  "reuse_ns_rx",   "reuse_funcs_rx"};

bool KindTakesLabel(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::kShift:
    case TransitionKind::kReuseArgs:
    case TransitionKind::kReuseNs:
    case TransitionKind::kReuseFuncs:
      return false;
    default:
      return true;
  }
}

const SemTree *AsTree(const StackItem &item) {
  return std::get_if<SemTree>(&item);
}
const CodeEntity *AsEntity(const StackItem &item) {
  return std::get_if<CodeEntity>(&item);
}
bool IsTree(const StackItem &item, Label label) {
  const SemTree *t = AsTree(item);
  return t != nullptr && t->label == label;
}

void MarkCopied(SemTree *tree) {
  tree->copied = true;
  for (SemTree &child : tree->children) MarkCopied(&child);
}

SemTree *InnerFunc(SemTree *tree) {
  if (tree->label == Label::kFunc) return tree;
  if (tree->label == Label::kNs && tree->children.size() == 1 &&
      tree->children[0].label == Label::kFunc) {
    return &tree->children[0];
  }
  return nullptr;
}

// Head of a func reduction: an entity, a func, or an ns wrapping a func.
std::optional<SemTree> FuncHead(const StackItem &item) {
  if (const CodeEntity *e = AsEntity(item)) {
    return EntityToCallable(e->text, Label::kFunc, e->index);
  }
  const SemTree &t = std::get<SemTree>(item);
  SemTree copy = t;
  if (InnerFunc(&copy) == nullptr) return std::nullopt;
  return copy;
}

// Head of an ns reduction: an entity or a childless ns.
std::optional<SemTree> NsHead(const StackItem &item) {
  if (const CodeEntity *e = AsEntity(item)) {
    return EntityToNamespace(e->text, e->index);
  }
  const SemTree &t = std::get<SemTree>(item);
  if (t.label == Label::kNs && t.children.empty()) return t;
  return std::nullopt;
}

bool IsMemberTree(const StackItem &item) {
  return IsTree(item, Label::kFunc) || IsTree(item, Label::kAttr);
}

// Length of the run at the top of `stack` whose items satisfy `pred`,
// stopping `skip` items below the top.
size_t TopRun(const std::vector<StackItem> &stack, size_t skip,
              const std::function<bool(const StackItem &)> &pred) {
  size_t n = 0;
  while (n + skip < stack.size() && pred(stack[stack.size() - 1 - skip - n])) {
    ++n;
  }
  return n;
}

// The state update computed by a tentative application.
struct Update {
  bool consume = false;         // shift
  size_t pop = 0;               // items removed from the top
  std::vector<StackItem> push;  // items pushed afterwards
};

using Result = std::variant<Update, std::string>;

Update Replace(size_t pop, std::vector<StackItem> push) {
  Update u;
  u.pop = pop;
  u.push = std::move(push);
  return u;
}

Update Replace(size_t pop, SemTree tree) {
  std::vector<StackItem> push;
  push.emplace_back(std::move(tree));
  return Replace(pop, std::move(push));
}

Result ApplyUnary(const std::vector<StackItem> &stack, Label label) {
  if (stack.empty()) return std::string("stack is empty");
  const StackItem &top = stack.back();
  if (const CodeEntity *e = AsEntity(top)) {
    switch (label) {
      case Label::kNs:
        return Replace(1, EntityToNamespace(e->text, e->index));
      case Label::kFunc:
      case Label::kAttr:
        return Replace(1, EntityToCallable(e->text, label, e->index));
      case Label::kArg:
        return Replace(1, EntityToArg(e->text, e->index));
      default:
        return std::string("a bare entity cannot be raised to ") +
               std::string(LabelName(label));
    }
  }
  const SemTree &t = std::get<SemTree>(top);
  bool ok = false;
  switch (label) {
    case Label::kDepr:
    case Label::kRepl:
      ok = t.label == Label::kNs;
      break;
    case Label::kRoot:
      ok = t.label == Label::kDepr;
      break;
    case Label::kNs:
      ok = t.label == Label::kFunc || t.label == Label::kAttr;
      break;
    default:
      break;
  }
  if (!ok) {
    return "top constituent " + std::string(LabelName(t.label)) +
           " cannot be raised to " + std::string(LabelName(label));
  }
  if (label == Label::kNs) {
    return Replace(1, SemTree::Node(Label::kNs, std::string(kNoNamespace), {t}));
  }
  return Replace(1, SemTree::Node(label, {t}));
}

Result ReduceHeadless(const std::vector<StackItem> &stack, Label label,
                      bool left) {
  if (label == Label::kRoot) {
    const size_t n = stack.size();
    if (!left) {
      if (n >= 2 && IsTree(stack[n - 1], Label::kRepl) &&
          IsTree(stack[n - 2], Label::kDepr)) {
        return Replace(2, SemTree::Node(Label::kRoot,
                                        {std::get<SemTree>(stack[n - 2]),
                                         std::get<SemTree>(stack[n - 1])}));
      }
      if (n >= 1 && IsTree(stack[n - 1], Label::kDepr)) {
        return Replace(1, SemTree::Node(Label::kRoot,
                                        {std::get<SemTree>(stack[n - 1])}));
      }
      return std::string("root needs depr, or depr below repl, on top");
    }
    if (n >= 2 && IsTree(stack[n - 1], Label::kDepr) &&
        IsTree(stack[n - 2], Label::kRepl)) {
      return Replace(2, SemTree::Node(Label::kRoot,
                                      {std::get<SemTree>(stack[n - 1]),
                                       std::get<SemTree>(stack[n - 2])}));
    }
    return std::string("root (lx) needs depr on top of repl");
  }
  // depr / repl over the maximal run of ns constituents.
  const size_t run = TopRun(stack, 0, [](const StackItem &item) {
    return IsTree(item, Label::kNs);
  });
  if (run < (left ? 2u : 1u)) {
    return std::string(left ? "needs at least two ns constituents on top"
                            : "needs an ns constituent on top");
  }
  std::vector<SemTree> children;
  for (size_t i = stack.size() - run; i < stack.size(); ++i) {
    children.push_back(std::get<SemTree>(stack[i]));
  }
  if (left) std::reverse(children.begin(), children.end());
  return Replace(run, SemTree::Node(label, std::move(children)));
}

Result ReduceFunc(const std::vector<StackItem> &stack, bool left, bool each) {
  const size_t min_run = each ? 2 : 1;
  auto is_arg = [](const StackItem &item) { return IsTree(item, Label::kArg); };
  size_t run, head_pos;
  if (left) {
    if (stack.empty()) return std::string("stack is empty");
    run = TopRun(stack, 1, is_arg);
    head_pos = stack.size() - 1;
  } else {
    run = TopRun(stack, 0, is_arg);
    if (run >= stack.size()) return std::string("no head below the arguments");
    head_pos = stack.size() - 1 - run;
  }
  if (run < min_run) {
    return "needs at least " + std::to_string(min_run) +
           " arg constituents adjacent to the head";
  }
  std::optional<SemTree> head = FuncHead(stack[head_pos]);
  if (!head) return std::string("head is not a function");
  const size_t first_arg = left ? stack.size() - 1 - run : stack.size() - run;

  if (!each) {
    SemTree *func = InnerFunc(&*head);
    for (size_t i = 0; i < run; ++i) {
      func->children.push_back(std::get<SemTree>(stack[first_arg + i]));
    }
    return Replace(run + 1, std::move(*head));
  }
  std::vector<StackItem> push;
  for (size_t i = 0; i < run; ++i) {
    SemTree copy = *head;
    if (i > 0) MarkCopied(&copy);
    InnerFunc(&copy)->children.push_back(
        std::get<SemTree>(stack[first_arg + i]));
    push.emplace_back(std::move(copy));
  }
  return Replace(run + 1, std::move(push));
}

Result ReduceNs(const std::vector<StackItem> &stack, bool left, bool each) {
  const size_t n = stack.size();
  if (n < 2) return std::string("needs two items");
  size_t run, head_pos;
  Label member;
  if (left) {
    if (!IsMemberTree(stack[n - 2])) {
      return std::string("needs a func or attr below the namespace");
    }
    member = std::get<SemTree>(stack[n - 2]).label;
    run = TopRun(stack, 1, [member](const StackItem &item) {
      return IsTree(item, member);
    });
    head_pos = n - 1;
  } else {
    if (!IsMemberTree(stack[n - 1])) {
      return std::string("needs a func or attr on top");
    }
    member = std::get<SemTree>(stack[n - 1]).label;
    run = TopRun(stack, 0, [member](const StackItem &item) {
      return IsTree(item, member);
    });
    if (run >= n) return std::string("no namespace below the members");
    head_pos = n - 1 - run;
  }
  if (!each) run = 1;
  if (each && run < 2) {
    return std::string("needs at least two same-label members");
  }
  if (!left && !each) head_pos = n - 2;
  std::optional<SemTree> head = NsHead(stack[head_pos]);
  if (!head) return std::string("head is not a bare namespace");
  const size_t first = left ? n - 1 - run : n - run;

  std::vector<StackItem> push;
  for (size_t i = 0; i < run; ++i) {
    SemTree copy = *head;
    if (i > 0) MarkCopied(&copy);
    copy.children.push_back(std::get<SemTree>(stack[first + i]));
    push.emplace_back(std::move(copy));
  }
  return Replace(run + 1, std::move(push));
}

// Locates a depr constituent directly below a run of k items accepted by
// `pred`, with exactly k ns children.
Result FindReuseTarget(const std::vector<StackItem> &stack,
                       const std::function<bool(const StackItem &)> &pred,
                       size_t *k_out, const SemTree **depr_out) {
  const size_t k = TopRun(stack, 0, pred);
  if (k == 0) return std::string("no replacement items on top");
  if (k >= stack.size() || !IsTree(stack[stack.size() - 1 - k], Label::kDepr)) {
    return std::string("replacement items are not directly above a depr");
  }
  const SemTree &depr = std::get<SemTree>(stack[stack.size() - 1 - k]);
  if (depr.children.size() != k) {
    return "depr has " + std::to_string(depr.children.size()) +
           " entries but " + std::to_string(k) + " replacement items";
  }
  *k_out = k;
  *depr_out = &depr;
  return Update{};
}

// The func of the i-th deprecated entry, or null.
const SemTree *DeprFunc(const SemTree &depr, size_t i) {
  const SemTree &ns = depr.children[i];
  if (ns.label != Label::kNs || ns.children.size() != 1 ||
      ns.children[0].label != Label::kFunc) {
    return nullptr;
  }
  return &ns.children[0];
}

Result ReuseArgs(const std::vector<StackItem> &stack) {
  size_t k;
  const SemTree *depr;
  Result found = FindReuseTarget(
      stack,
      [](const StackItem &item) {
        return AsEntity(item) != nullptr || IsTree(item, Label::kFunc);
      },
      &k, &depr);
  if (std::holds_alternative<std::string>(found)) return found;
  bool any_args = false;
  for (size_t i = 0; i < k; ++i) {
    const SemTree *f = DeprFunc(*depr, i);
    if (f == nullptr) return std::string("deprecated entries must be functions");
    any_args = any_args || !f->children.empty();
  }
  if (!any_args) return std::string("deprecated functions have no arguments");

  std::vector<StackItem> push;
  for (size_t i = 0; i < k; ++i) {
    const StackItem &item = stack[stack.size() - k + i];
    SemTree base = AsEntity(item) != nullptr
                       ? *FuncHead(item)
                       : std::get<SemTree>(item);
    SemTree *func = InnerFunc(&base);
    if (!func->children.empty()) {
      return std::string("replacement function already has arguments");
    }
    for (SemTree arg : DeprFunc(*depr, i)->children) {
      MarkCopied(&arg);
      func->children.push_back(std::move(arg));
    }
    push.emplace_back(std::move(base));
  }
  return Replace(k, std::move(push));
}

Result ReuseNs(const std::vector<StackItem> &stack) {
  size_t k;
  const SemTree *depr;
  Result found = FindReuseTarget(
      stack,
      [](const StackItem &item) {
        return AsEntity(item) != nullptr || IsMemberTree(item);
      },
      &k, &depr);
  if (std::holds_alternative<std::string>(found)) return found;

  std::vector<StackItem> push;
  for (size_t i = 0; i < k; ++i) {
    const SemTree &ns = depr->children[i];
    if (ns.label != Label::kNs || ns.children.size() != 1 || !ns.code ||
        *ns.code == kNoNamespace) {
      return std::string("deprecated entries must carry a namespace");
    }
    const Label member = ns.children[0].label;
    const StackItem &item = stack[stack.size() - k + i];
    SemTree base;
    if (const CodeEntity *e = AsEntity(item)) {
      base = EntityToCallable(e->text, member, e->index);
    } else {
      base = std::get<SemTree>(item);
    }
    if (base.label != member) {
      return "replacement item " + std::to_string(i) + " does not match " +
             std::string(LabelName(member));
    }
    SemTree wrapper = SemTree::Node(Label::kNs, *ns.code, {}, ns.entity);
    wrapper.copied = true;
    wrapper.children.push_back(std::move(base));
    push.emplace_back(std::move(wrapper));
  }
  return Replace(k, std::move(push));
}

Result ReuseFuncs(const std::vector<StackItem> &stack) {
  size_t k;
  const SemTree *depr;
  Result found = FindReuseTarget(
      stack,
      [](const StackItem &item) {
        return AsEntity(item) != nullptr || IsTree(item, Label::kArg);
      },
      &k, &depr);
  if (std::holds_alternative<std::string>(found)) return found;

  std::vector<StackItem> push;
  for (size_t i = 0; i < k; ++i) {
    const SemTree *f = DeprFunc(*depr, i);
    if (f == nullptr) return std::string("deprecated entries must be functions");
    const StackItem &item = stack[stack.size() - k + i];
    SemTree arg = AsEntity(item) != nullptr
                      ? EntityToArg(AsEntity(item)->text, AsEntity(item)->index)
                      : std::get<SemTree>(item);
    SemTree func = SemTree::Leaf(Label::kFunc, *f->code, f->entity);
    func.copied = true;
    func.children.push_back(std::move(arg));
    push.emplace_back(std::move(func));
  }
  return Replace(k, std::move(push));
}

Result Compute(const ParserState &state, const Transition &t) {
  const auto &stack = state.stack();
  const std::optional<Label> label = t.label();
  switch (t.kind()) {
    case TransitionKind::kShift: {
      if (state.buffer().empty()) return std::string("buffer is empty");
      Update u;
      u.consume = true;
      u.push.emplace_back(state.buffer().front());
      return u;
    }
    case TransitionKind::kUnary:
      return ApplyUnary(stack, *label);
    case TransitionKind::kReduceRight:
    case TransitionKind::kReduceLeft: {
      const bool left = t.kind() == TransitionKind::kReduceLeft;
      switch (*label) {
        case Label::kRoot:
        case Label::kDepr:
        case Label::kRepl:
          return ReduceHeadless(stack, *label, left);
        case Label::kFunc:
          return ReduceFunc(stack, left, /*each=*/false);
        case Label::kNs:
          return ReduceNs(stack, left, /*each=*/false);
        default:
          return std::string(LabelName(*label)) + " has no reduce production";
      }
    }
    case TransitionKind::kReduceRightEach:
    case TransitionKind::kReduceLeftEach: {
      const bool left = t.kind() == TransitionKind::kReduceLeftEach;
      if (*label == Label::kFunc) return ReduceFunc(stack, left, true);
      if (*label == Label::kNs) return ReduceNs(stack, left, true);
      return std::string(LabelName(*label)) + " has no iterative production";
    }
    case TransitionKind::kReuseArgs:
      return ReuseArgs(stack);
    case TransitionKind::kReuseNs:
      return ReuseNs(stack);
    case TransitionKind::kReuseFuncs:
      return ReuseFuncs(stack);
  }
  return std::string("unknown transition");
}

}  // namespace

std::vector<CodeEntity> MakeEntities(const std::vector<std::string> &texts) {
  std::vector<CodeEntity> out;
  for (size_t i = 0; i < texts.size(); ++i) {
    out.push_back({texts[i], static_cast<int>(i)});
  }
  return out;
}

Transition Transition::Make(TransitionKind kind, std::optional<Label> label) {
  if (KindTakesLabel(kind) != label.has_value()) {
    throw Error(std::string(kKindNames[static_cast<size_t>(kind)]) +
                (label ? " takes no label" : " requires a label"));
  }
  return label ? Transition(kind, *label) : Transition(kind);
}

std::string Transition::Encode() const {
  std::string out(kKindNames[static_cast<size_t>(kind_)]);
  out.push_back('(');
  if (label_) out.append(LabelName(*label_));
  out.push_back(')');
  return out;
}

Transition Transition::Decode(std::string_view text) {
  const size_t open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') {
    throw Error("malformed transition '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, open);
  const std::string_view arg = text.substr(open + 1, text.size() - open - 2);
  for (size_t k = 0; k < kKindNames.size(); ++k) {
    if (kKindNames[k] != name) continue;
    std::optional<Label> label;
    if (!arg.empty()) {
      label = LabelFromName(arg);
      if (!label) {
        throw Error("unknown label in transition '" + std::string(text) + "'");
      }
    }
    return Make(static_cast<TransitionKind>(k), label);
  }
  throw Error("unknown transition '" + std::string(text) + "'");
}

std::string EncodeSequence(const TransitionSequence &seq) {
  std::string out;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += seq[i].Encode();
  }
  return out;
}

TransitionSequence DecodeSequence(std::string_view text) {
  TransitionSequence seq;
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    seq.push_back(Transition::Decode(text.substr(pos, end - pos)));
    pos = end;
  }
  return seq;
}

const std::vector<Transition> &TransitionInventory() {
  static const std::vector<Transition> inventory = [] {
    std::vector<Transition> v;
    v.push_back(Transition::Shift());
    for (Label l : kAllLabels) v.push_back(Transition::Unary(l));
    const Label reducible[] = {Label::kRoot, Label::kDepr, Label::kRepl,
                               Label::kNs, Label::kFunc};
    for (Label l : reducible) v.push_back(Transition::ReduceRight(l));
    for (Label l : reducible) v.push_back(Transition::ReduceLeft(l));
    for (Label l : {Label::kNs, Label::kFunc}) {
      v.push_back(Transition::ReduceRightEach(l));
    }
    for (Label l : {Label::kNs, Label::kFunc}) {
      v.push_back(Transition::ReduceLeftEach(l));
    }
    v.push_back(Transition::ReuseArgs());
    v.push_back(Transition::ReuseNs());
    v.push_back(Transition::ReuseFuncs());
    return v;
  }();
  return inventory;
}

ParserState::ParserState(std::vector<CodeEntity> entities)
    : entities_(
          std::make_shared<const std::vector<CodeEntity>>(std::move(entities))) {}

std::string ItemString(const StackItem &item) {
  if (const CodeEntity *e = AsEntity(item)) return e->text;
  return ToBracketed(std::get<SemTree>(item));
}

std::string ParserState::BufferString() const {
  std::string out = "[";
  const auto buf = buffer();
  for (size_t i = 0; i < buf.size(); ++i) {
    if (i > 0) out += ", ";
    out += buf[i].text;
  }
  return out + "]";
}

std::string ParserState::StackString() const {
  std::string out = "[";
  for (size_t i = 0; i < stack_.size(); ++i) {
    if (i > 0) out += ", ";
    out += ItemString(stack_[i]);
  }
  return out + "]";
}

std::string ParserState::Key() const {
  std::string key = std::to_string(next_);
  for (const StackItem &item : stack_) {
    key.push_back('\x1f');
    if (AsEntity(item) != nullptr) key.push_back('\x02');
    key += ItemString(item);
  }
  return key;
}

ParserState InitialState(std::vector<CodeEntity> entities) {
  return ParserState(std::move(entities));
}

std::optional<std::string> WhyIllegal(const ParserState &state,
                                      const Transition &t) {
  Result r = Compute(state, t);
  if (auto *why = std::get_if<std::string>(&r)) return *why;
  return std::nullopt;
}

std::vector<Transition> LegalTransitions(const ParserState &state) {
  std::vector<Transition> legal;
  for (const Transition &t : TransitionInventory()) {
    if (!WhyIllegal(state, t)) legal.push_back(t);
  }
  return legal;
}

ParserState Apply(const ParserState &state, const Transition &t) {
  Result r = Compute(state, t);
  if (auto *why = std::get_if<std::string>(&r)) {
    throw PreconditionError("illegal " + t.Encode() + ": " + *why);
  }
  Update &u = std::get<Update>(r);
  ParserState next = state;
  if (u.consume) ++next.next_;
  next.stack_.resize(next.stack_.size() - u.pop);
  for (StackItem &item : u.push) next.stack_.push_back(std::move(item));
  next.history_.push_back(t);
  return next;
}

bool IsTerminal(const ParserState &state) {
  return state.buffer().empty() && state.stack().size() == 1 &&
         IsTree(state.stack()[0], Label::kRoot);
}

SemTree Run(const std::vector<CodeEntity> &entities,
            const TransitionSequence &seq) {
  ParserState state = InitialState(entities);
  for (size_t i = 0; i < seq.size(); ++i) {
    if (std::optional<std::string> why = WhyIllegal(state, seq[i])) {
      throw PreconditionError("transition " + std::to_string(i) + " (" +
                              seq[i].Encode() + ") is illegal: " + *why);
    }
    state = Apply(state, seq[i]);
  }
  if (!IsTerminal(state)) {
    throw PreconditionError("sequence ends in a non-terminal state " +
                            state.StackString());
  }
  return std::get<SemTree>(state.stack()[0]);
}

SemTree StackForest(const ParserState &state) {
  const auto &stack = state.stack();
  if (stack.size() == 1 && IsTree(stack[0], Label::kRoot)) {
    return std::get<SemTree>(stack[0]);
  }
  SemTree root = SemTree::Node(Label::kRoot, {});
  for (const StackItem &item : stack) {
    if (const SemTree *t = AsTree(item)) root.children.push_back(*t);
  }
  return root;
}

}  // namespace deprecparse
