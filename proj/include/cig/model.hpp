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

#ifndef CIG_MODEL_HPP_
#define CIG_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cig/error.hpp"
#include "cig/rational.hpp"

namespace cig {

enum class Role { subject, sender, recipient, replica_subject };

std::string role_name(Role r);
Role role_from_name(const std::string& s);

struct Player {
  std::string name;
  Role role = Role::subject;
  std::vector<std::string> choices;  // ordered, distinct, >= 2

  int choice_index(const std::string& label) const;  // throws invalid_choice
};

enum class BitKind { secret, signal, channel_output };

std::string bit_kind_name(BitKind k);
BitKind bit_kind_from_name(const std::string& s);

// Channel-output bits carry an exact conditional distribution over their
// value given the parent bits' valuation: prob_one[v] = P(bit=1 | parents=v),
// with parents read LSB-first in list order. A deterministic function is the
// special case of probabilities in {0,1}.
struct ChannelSpec {
  std::vector<int> parents;
  std::vector<Rational> prob_one;  // size 1 << parents.size()
};

struct BitDef {
  std::string name;
  BitKind kind = BitKind::secret;
  int owner = -1;  // originating knower
  std::optional<ChannelSpec> channel;
};

struct Cell {
  Rational row, col;
  friend bool operator==(const Cell& a, const Cell& b) {
    return a.row == b.row && a.col == b.col;
  }
};

struct ContextMatrix {
  int row_player = -1, col_player = -1;
  std::vector<std::vector<Cell>> cells;  // [row choice][col choice]
};

struct Variant {
  std::string name;
  Rational prior;
  std::vector<ContextMatrix> overrides;  // replace base contexts for these pairs
};

struct Game {
  std::string name;
  std::vector<Player> players;
  std::vector<BitDef> bits;
  std::vector<ContextMatrix> base_contexts;
  std::vector<Variant> variants;  // empty = single unnamed variant

  int player_index(const std::string& name) const;  // -1 if absent
  int bit_index(const std::string& name) const;     // -1 if absent
  int subject_index() const;                        // -1 if no subject role
  int variant_index(const std::string& name) const;
  int variant_count() const { return variants.empty() ? 1 : (int)variants.size(); }

  // Effective context list for one variant (base with overrides applied).
  std::vector<ContextMatrix> contexts_for(int variant) const;

  // Structural checks: dense players, unique names, context dims, one context
  // per unordered pair per variant, priors sum to 1, channel parents exist.
  void validate() const;
};

// Which player knows which bits, and who knows the drawn variant, at one
// point in time. Knowledge only ever grows across script stages.
struct KnowledgeState {
  std::vector<std::uint32_t> known;  // bitmask per player over Game::bits
  std::vector<char> knows_variant;

  static KnowledgeState own_secrets(const Game& g);
  bool knows(int player, int bit) const { return (known[player] >> bit) & 1u; }
  void grant(int player, int bit) { known[player] |= (1u << bit); }
};

struct World {
  std::uint32_t bits = 0;  // value of bit i at position i
  int variant = 0;
};

// All worlds of positive probability for one variant, with exact weights.
// Uniform bits weigh 1/2 per bit; channel bits weigh their conditional
// probability. Weights over the returned list sum to 1.
std::vector<std::pair<World, Rational>> enumerate_worlds(const Game& g, int variant);

// Payoff vector for a fully specified choice combination, summed over every
// context (of the world's variant) the player participates in. A pair with
// no context contributes zero.
std::vector<Rational> total_payoff(const Game& g, const World& w,
                                   const std::vector<int>& choices);

std::vector<Rational> total_payoff(const Game& g, const World& w,
                                   const std::vector<std::string>& labels);

}  // namespace cig

#endif  // CIG_MODEL_HPP_
