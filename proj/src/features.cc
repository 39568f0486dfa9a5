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

#include "deprecparse/features.h"

#include <algorithm>
#include <cctype>
#include <deque>

namespace deprecparse {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int TreeHeight(const SemTree &t) {
  int h = t.code ? 2 : 1;
  for (const SemTree &c : t.children) h = std::max(h, 1 + TreeHeight(c));
  return h;
}

int FirstEntity(const SemTree &t) {
  if (t.entity >= 0) return t.entity;
  for (const SemTree &c : t.children) {
    const int e = FirstEntity(c);
    if (e >= 0) return e;
  }
  return -1;
}

struct Element {
  std::string slot;    // Q0, S0, S1
  std::string prefix;  // slot, plus ":L<height>" for constituents
  std::optional<int> token;
  std::string text_lemma;  // used when no token anchors the element
  const SemTree *tree = nullptr;
};

class Extractor {
 public:
  Extractor(const ParserState &state,
            const std::vector<LinguisticToken> &tokens)
      : state_(state), tokens_(tokens), annotated_(HasAnnotations(tokens)) {
    if (annotated_) {
      children_.resize(tokens.size());
      adjacency_.resize(tokens.size());
      int prev_root = -1;
      for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
        const int h = tokens[i].head;
        if (h == i) {
          if (prev_root >= 0) Link(prev_root, i);
          prev_root = i;
        } else {
          children_[h].push_back(i);
          Link(i, h);
        }
      }
    }
  }

  FeatureVector Run() {
    std::vector<Element> elems;
    if (!state_.buffer().empty()) {
      elems.push_back(FromEntity("Q0", state_.buffer().front()));
    }
    const auto &stack = state_.stack();
    for (int k = 0; k < 2 && k < static_cast<int>(stack.size()); ++k) {
      const StackItem &item = stack[stack.size() - 1 - k];
      const std::string slot = k == 0 ? "S0" : "S1";
      if (const CodeEntity *e = std::get_if<CodeEntity>(&item)) {
        elems.push_back(FromEntity(slot, *e));
      } else {
        elems.push_back(FromTree(slot, std::get<SemTree>(item)));
      }
    }
    for (const Element &e : elems) Unary(e);
    auto find = [&](const char *slot) -> const Element * {
      for (const Element &e : elems) {
        if (e.slot == slot) return &e;
      }
      return nullptr;
    };
    Pair(find("Q0"), find("S0"), "Q0-S0");
    Pair(find("Q0"), find("S1"), "Q0-S1");
    Pair(find("S0"), find("S1"), "S0-S1");
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void Link(int a, int b) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }

  Element FromEntity(const std::string &slot, const CodeEntity &e) {
    Element el;
    el.slot = el.prefix = slot;
    el.token = GoverningToken(e, tokens_);
    el.text_lemma = Lower(e.text);
    return el;
  }

  Element FromTree(const std::string &slot, const SemTree &t) {
    Element el;
    el.slot = slot;
    el.prefix = slot + ":L" + std::to_string(TreeHeight(t));
    el.tree = &t;
    const int idx = FirstEntity(t);
    if (idx >= 0 && idx < static_cast<int>(state_.entities().size())) {
      const CodeEntity &e = state_.entities()[idx];
      el.token = GoverningToken(e, tokens_);
      el.text_lemma = Lower(e.text);
    }
    return el;
  }

  void Add(const std::string &group, const std::string &tmpl,
           const std::string &value) {
    out_.push_back(group + ":" + tmpl + "=" + value);
  }

  std::string LemmaOf(int i) const {
    const LinguisticToken &t = tokens_[i];
    if (annotated_ && !t.lemma.empty()) return t.lemma;
    return Lower(t.surface);
  }

  int RootOf(int i) const {
    for (size_t steps = 0; steps < tokens_.size(); ++steps) {
      const int h = tokens_[i].head;
      if (h == i) break;
      i = h;
    }
    return i;
  }

  void TokenChildren(const std::string &prefix, const std::string &name,
                     int of) {
    const auto &kids = children_[of];
    for (int i = 0; i < kMaxChildFeatures && i < static_cast<int>(kids.size());
         ++i) {
      const std::string n = std::to_string(i);
      const LinguisticToken &c = tokens_[kids[i]];
      Add(prefix, name + "_" + n, LemmaOf(kids[i]));
      Add(prefix, name + "_pos_" + n, c.pos);
      Add(prefix, name + "_dep_" + n, c.dep);
    }
  }

  void Unary(const Element &e) {
    if (e.token || !e.text_lemma.empty()) {
      Add(e.prefix, "lemma", e.token ? LemmaOf(*e.token) : e.text_lemma);
    }
    if (annotated_ && e.token) {
      const int g = *e.token;
      const LinguisticToken &t = tokens_[g];
      Add(e.prefix, "dep", t.dep);
      const int h = t.head;
      Add(e.prefix, "head", LemmaOf(h));
      Add(e.prefix, "head_dep", tokens_[h].dep);
      Add(e.prefix, "head_pos", tokens_[h].pos);
      const int r = RootOf(g);
      Add(e.prefix, "root", LemmaOf(r));
      Add(e.prefix, "root_pos", tokens_[r].pos);
      TokenChildren(e.prefix, "child", g);
      TokenChildren(e.prefix, "head_child", h);
      TokenChildren(e.prefix, "root_child", r);
    }
    if (e.tree != nullptr) {
      const SemTree &t = *e.tree;
      Add(e.slot, "label", std::string(LabelName(t.label)));
      for (int i = 0;
           i < kMaxChildFeatures && i < static_cast<int>(t.children.size());
           ++i) {
        const SemTree &c = t.children[i];
        Add(e.slot, "child_label_" + std::to_string(i),
            std::string(LabelName(c.label)));
        if (!c.children.empty()) {
          Add(e.slot, "sub_child_label_" + std::to_string(i),
              std::string(LabelName(c.children[0].label)));
        }
      }
    }
  }

  // Shortest path on the undirected head graph, endpoints included.
  std::vector<int> DependencyPath(int from, int to) const {
    std::vector<int> prev(tokens_.size(), -1);
    std::deque<int> queue = {from};
    prev[from] = from;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (u == to) break;
      for (int v : adjacency_[u]) {
        if (prev[v] < 0) {
          prev[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (prev[to] < 0) return {};
    std::vector<int> path = {to};
    while (path.back() != from) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  void Pair(const Element *a, const Element *b, const std::string &group) {
    if (a == nullptr || b == nullptr || !a->token || !b->token) return;
    const int x = *a->token, y = *b->token;
    if (x == y) {
      Add(group, "path_lemma", "<same>");
      return;
    }
    if (!annotated_) {
      std::string lemma = "<x>";
      const int step = x < y ? 1 : -1;
      int hops = 0;
      for (int i = x + step; i != y; i += step) {
        if (++hops > kMaxPathHops) {
          lemma += " ...";
          break;
        }
        lemma += " " + LemmaOf(i);
      }
      Add(group, "path_lemma", lemma + " <y>");
      return;
    }
    const std::vector<int> path = DependencyPath(x, y);
    if (path.empty()) return;
    std::string lemma = "<x>", pos, dep;
    const size_t edges = path.size() - 1;
    const size_t shown = std::min<size_t>(edges, kMaxPathHops);
    for (size_t i = 0; i <= shown; ++i) {
      const int u = path[i];
      if (i > 0 && i < edges) lemma += " " + LemmaOf(u);
      pos += (i > 0 ? "," : "") + tokens_[u].pos;
      if (i < shown) {
        const int v = path[i + 1];
        dep += (i > 0 ? "," : "") +
               (tokens_[u].head == v ? tokens_[u].dep : tokens_[v].dep);
      }
    }
    if (shown < edges) {
      lemma += " ...";
      pos += ",...";
      dep += ",...";
    } else {
      lemma += " <y>";
    }
    Add(group, "path_lemma", lemma);
    Add(group, "path_pos", pos);
    Add(group, "path_dep", dep);
  }

  const ParserState &state_;
  const std::vector<LinguisticToken> &tokens_;
  const bool annotated_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> adjacency_;
  FeatureVector out_;
};

}  // namespace

std::optional<int> GoverningToken(const CodeEntity &entity,
                                  const std::vector<LinguisticToken> &tokens) {
  const int n = static_cast<int>(tokens.size());
  if (entity.token_begin >= 0 && entity.token_begin < n) {
    const int end = std::clamp(entity.token_end, entity.token_begin + 1, n);
    if (HasAnnotations(tokens)) {
      for (int i = entity.token_begin; i < end; ++i) {
        const int h = tokens[i].head;
        if (h == i || h < entity.token_begin || h >= end) return i;
      }
    }
    return entity.token_begin;
  }
  for (int i = 0; i < n; ++i) {
    if (tokens[i].code_entity_id == entity.index) return i;
  }
  return std::nullopt;
}

FeatureVector ExtractFeatures(const ParserState &state,
                              const std::vector<LinguisticToken> &tokens) {
  return Extractor(state, tokens).Run();
}

}  // namespace deprecparse
