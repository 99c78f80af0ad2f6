// Copyright 2026 The cigames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CIG_EQUILIBRIA_HPP_
#define CIG_EQUILIBRIA_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "cig/model.hpp"
#include "cig/strategy.hpp"

namespace cig {

// The play-stage environment: which variants are still possible (with
// normalized weights), who knows what, which signal bits are pinned to a
// branch value, and which players are committed to a fixed strategy.
struct PlayEnv {
  const Game* game = nullptr;
  KnowledgeState knowledge;
  std::vector<std::pair<int, Rational>> scenario;  // (variant, weight), sums to 1
  std::map<int, int> pins;                         // bit -> value
  std::map<int, Strategy> committed;

  static PlayEnv base(const Game& g);
  static PlayEnv base(const Game& g, const KnowledgeState& k);
};

// Exact expectation of total_payoff over all worlds: bits i.i.d. uniform
// (channel bits per their conditional law), variants weighted by the
// environment's scenario. Throws knowledge_violation if a strategy
// conditions on a bit outside its player's knowledge.
std::vector<Rational> expected_payoff(const PlayEnv& env, const std::vector<Strategy>& profile);
std::vector<Rational> expected_payoff(const Game& g, const KnowledgeState& k,
                                      const std::vector<Strategy>& profile);

// Full strategy spaces at a play environment: every table over a player's
// known unpinned bits (variant-sliced when she knows the variant and several
// variants remain). Committed players get a singleton space.
struct LeafSpace {
  std::vector<std::vector<Strategy>> strategies;
  std::vector<char> is_committed;
  std::int64_t profile_count() const;
};

LeafSpace build_space(const PlayEnv& env, std::int64_t budget = 100000000);

// Pairwise expected-payoff matrices: profile payoffs decompose per context,
// so each (player pair, strategy pair) expectation is computed once.
struct PairTables {
  std::vector<std::pair<int, int>> pairs;       // (row player, col player)
  std::vector<std::vector<std::vector<Cell>>> m;  // [pair][si][sj]
  std::vector<Rational> value(const LeafSpace& sp, const std::vector<int>& profile) const;
};

PairTables build_pair_tables(const PlayEnv& env, const LeafSpace& space);

struct BestResponse {
  Rational value;
  std::vector<Strategy> argset;  // all maximizers, canonical order
};

BestResponse best_response(const PlayEnv& env, int player,
                           const std::vector<Strategy>& others_profile);
BestResponse best_response(const Game& g, const KnowledgeState& k, int player,
                           const std::vector<Strategy>& others_profile);

bool is_nash(const PlayEnv& env, const std::vector<Strategy>& profile);
bool is_nash(const Game& g, const KnowledgeState& k, const std::vector<Strategy>& profile);

struct EquilibriumSet {
  std::vector<std::vector<Strategy>> profiles;
  std::vector<std::vector<Rational>> payoffs;
  bool quotiented = false;
  std::vector<int> class_sizes;  // parallel to profiles when quotiented
};

// All Nash profiles in canonical order; with quotient, one representative
// per joint observational-equivalence class (observer for player i = the
// union of the other players' knowledge), with class sizes.
EquilibriumSet enumerate_nash(const PlayEnv& env, bool quotient,
                              std::int64_t budget = 100000000);
EquilibriumSet enumerate_nash(const Game& g, const KnowledgeState& k, bool quotient,
                              std::int64_t budget = 100000000);

// The subset whose payoff vectors weakly dominate every vector in the set;
// may be empty, and emptiness is reported as such, never patched over.
EquilibriumSet payoff_dominant(const EquilibriumSet& eqs);

}  // namespace cig

#endif  // CIG_EQUILIBRIA_HPP_
