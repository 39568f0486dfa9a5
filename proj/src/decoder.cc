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

#include "deprecparse/decoder.h"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

#include "deprecparse/errors.h"

namespace deprecparse {
namespace {

struct Hypothesis {
  ParserState state;
  double score = 0.0;
  std::string key;
  bool terminal = false;
};

// Higher score first, then the smaller serialized state, then the smaller
// transition history (terminal states coincide more often).
bool Better(const Hypothesis &a, const Hypothesis &b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.key != b.key) return a.key < b.key;
  return EncodeSequence(a.state.history()) < EncodeSequence(b.state.history());
}

bool Same(const Hypothesis &a, const Hypothesis &b) {
  return a.key == b.key && (!a.terminal || a.state.history() == b.state.history());
}

DecodeResult ToResult(const Hypothesis &h, bool partial) {
  DecodeResult r;
  r.tree = StackForest(h.state);
  r.running_log_prob = h.score;
  r.log_prob = partial ? -std::numeric_limits<double>::infinity() : h.score;
  r.partial = partial;
  r.sequence = h.state.history();
  return r;
}

}  // namespace

void DecodeConfig::Check() const {
  if (beam_width < 1) throw Error("beam width must be at least 1");
  if (max_steps < 0) throw Error("max steps must be non-negative");
}

int DefaultMaxSteps(size_t entity_count) {
  return 4 * static_cast<int>(entity_count) + 8;
}

DecodeResult BeamParse(const TransitionScorer &scorer,
                       const std::vector<CodeEntity> &entities,
                       const std::vector<LinguisticToken> &tokens,
                       const DecodeConfig &config) {
  config.Check();
  if (entities.empty()) {
    throw DegenerateInputError("cannot parse without code entities");
  }
  const int max_steps =
      config.max_steps > 0 ? config.max_steps : DefaultMaxSteps(entities.size());
  const size_t width = static_cast<size_t>(config.beam_width);

  ParserState start = InitialState(entities);
  std::vector<Hypothesis> frontier = {{start, 0.0, start.Key(), false}};
  std::vector<Hypothesis> last_frontier = frontier;
  std::vector<Hypothesis> finished;
  // Key of the hypothesis a width-1 search would hold; it is never pruned.
  std::optional<std::string> lane = frontier.front().key;

  for (int step = 0; step < max_steps && !frontier.empty(); ++step) {
    // Scores only decrease along a derivation, so nothing left in the
    // frontier can overtake a finished hypothesis that is already ahead.
    if (!finished.empty() && finished.front().score >= frontier.front().score) {
      break;
    }
    std::map<std::string, Hypothesis> next;
    std::vector<Hypothesis> candidates;
    std::optional<Hypothesis> lane_child;
    for (const Hypothesis &h : frontier) {
      if (LegalTransitions(h.state).empty()) continue;  // dead end
      const bool on_lane = lane && h.key == *lane;
      for (const ScoredTransition &st : scorer.Score(h.state, tokens)) {
        Hypothesis child{Apply(h.state, st.transition), h.score + st.log_prob,
                         {}, false};
        child.key = child.state.Key();
        child.terminal = IsTerminal(child.state);
        if (on_lane && (!lane_child || Better(child, *lane_child))) {
          lane_child = child;
        }
        if (child.terminal) {
          candidates.push_back(std::move(child));
          continue;
        }
        auto it = next.find(child.key);
        if (it == next.end()) {
          next.emplace(child.key, std::move(child));
        } else if (Better(child, it->second)) {
          it->second = std::move(child);
        }
      }
    }
    for (auto &[key, h] : next) candidates.push_back(std::move(h));
    std::sort(candidates.begin(), candidates.end(), Better);

    std::vector<Hypothesis> kept;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (i < width || (lane_child && Same(candidates[i], *lane_child))) {
        kept.push_back(std::move(candidates[i]));
      }
    }
    lane.reset();
    if (lane_child && !lane_child->terminal) lane = lane_child->key;

    frontier.clear();
    for (Hypothesis &h : kept) {
      (h.terminal ? finished : frontier).push_back(std::move(h));
    }
    std::sort(finished.begin(), finished.end(), Better);
    if (!frontier.empty()) last_frontier = frontier;
  }

  if (!finished.empty()) return ToResult(finished.front(), false);
  return ToResult(last_frontier.front(), true);
}

}  // namespace deprecparse
