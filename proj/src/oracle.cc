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

#include "deprecparse/oracle.h"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "deprecparse/errors.h"
#include "deprecparse/metrics.h"

namespace deprecparse {
namespace {

struct Candidate {
  ParserState state;
  double overlap = 0.0;
  std::string encoding;  // encoded history, the final tie-breaker
};

// Strict ordering: overlap desc, length asc, encoding asc.
bool Better(const Candidate &a, const Candidate &b) {
  if (a.overlap != b.overlap) return a.overlap > b.overlap;
  if (a.state.history().size() != b.state.history().size()) {
    return a.state.history().size() < b.state.history().size();
  }
  return a.encoding < b.encoding;
}

}  // namespace

void OracleConfig::Check() const {
  if (max_breadth < 1) throw Error("oracle max_breadth must be >= 1");
  if (max_depth < 1) throw Error("oracle max_depth must be >= 1");
  if (!(accept_threshold > 0.0 && accept_threshold <= 1.0)) {
    throw Error("oracle accept_threshold must be in (0, 1]");
  }
}

OracleResult FindGoldSequence(const std::vector<CodeEntity> &entities,
                              const SemTree &gold, const OracleConfig &config) {
  config.Check();
  if (entities.empty()) {
    throw DegenerateInputError("oracle needs at least one code entity");
  }
  const SubtreeProfile gold_profile(gold);
  std::unordered_map<std::string, double> overlap_cache;
  auto overlap_of = [&](const ParserState &s) {
    const std::string key = s.Key();
    auto it = overlap_cache.find(key);
    if (it != overlap_cache.end()) return it->second;
    const double f1 =
        TreeF1(SubtreeProfile(StackForest(s)), gold_profile).f1;
    overlap_cache.emplace(key, f1);
    return f1;
  };

  Candidate start{InitialState(entities), 0.0, ""};
  start.overlap = overlap_of(start.state);
  std::optional<Candidate> best_terminal;
  Candidate best_partial = start;
  std::vector<Candidate> frontier = {start};

  for (int depth = 1; depth <= config.max_depth && !frontier.empty(); ++depth) {
    std::vector<Candidate> expanded;
    std::unordered_map<std::string, size_t> seen;
    for (const Candidate &c : frontier) {
      for (const Transition &t : LegalTransitions(c.state)) {
        Candidate next{Apply(c.state, t), 0.0, c.encoding};
        if (!next.encoding.empty()) next.encoding.push_back(' ');
        next.encoding += t.Encode();
        next.overlap = overlap_of(next.state);
        const std::string key = next.state.Key();
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, expanded.size());
          expanded.push_back(std::move(next));
        } else if (Better(next, expanded[it->second])) {
          expanded[it->second] = std::move(next);
        }
      }
    }
    std::sort(expanded.begin(), expanded.end(), Better);

    frontier.clear();
    for (Candidate &c : expanded) {
      if (IsTerminal(c.state)) {
        if (!best_terminal || Better(c, *best_terminal)) best_terminal = c;
        continue;
      }
      if (Better(c, best_partial)) best_partial = c;
      if (static_cast<int>(frontier.size()) < config.max_breadth) {
        frontier.push_back(std::move(c));
      }
    }
    // Nothing found later can beat a perfect terminal: deeper sequences lose
    // the length tie-break.
    if (best_terminal && best_terminal->overlap >= 1.0) break;
  }

  OracleResult result;
  const Candidate &chosen = best_terminal ? *best_terminal : best_partial;
  result.sequence = chosen.state.history();
  result.tree = StackForest(chosen.state);
  result.overlap = chosen.overlap;
  result.terminal = best_terminal.has_value();
  result.accepted =
      result.terminal && result.overlap >= config.accept_threshold;
  return result;
}

}  // namespace deprecparse
