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

#ifndef CIG_STRATEGY_HPP_
#define CIG_STRATEGY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cig/model.hpp"

namespace cig {

// A pure strategy: a total map from valuations of the dependency bits (and,
// when the player knows the drawn variant, the variant) to a choice index.
//
// Table layout: entry index = slice * 2^|deps| + valuation, where bit j of
// the valuation is the value of deps[j]. deps are sorted by bit name.
// variant_ids lists the variants the table is sliced over; empty means the
// strategy is variant-blind.
struct Strategy {
  int player = -1;
  std::vector<int> deps;
  std::vector<int> variant_ids;
  std::vector<std::uint8_t> table;

  int cells_per_slice() const { return 1 << (int)deps.size(); }
  int slices() const { return variant_ids.empty() ? 1 : (int)variant_ids.size(); }

  int eval(std::uint32_t world_bits, int variant) const;

  // Lexicographic rank of the table read in increasing valuation order, the
  // canonical order used everywhere strategies are listed.
  std::int64_t canonical_index(int choice_count) const;

  // Drops dependencies (and the variant slicing) the table never reads.
  Strategy simplified() const;

  friend bool operator==(const Strategy& a, const Strategy& b);
};

// True when the two strategies agree as functions of (bits, variant).
bool same_function(const Strategy& a, const Strategy& b);

// All choice_count^(2^bit_count) tables over the given dependency list, in
// canonical order. deps/variant_ids are attached verbatim.
std::vector<Strategy> enumerate_strategies(int choice_count, const std::vector<int>& deps,
                                           const std::vector<int>& variant_ids, int player,
                                           std::int64_t budget = 100000000);

std::int64_t strategy_count(int choice_count, int bit_count);

// Text form. Grammar: expr := LABEL | BIT '?' expr ':' expr, right
// associative, whitespace-insensitive. Bit and label tokens are matched
// longest-first against the game's names, so multi-byte names work.
Strategy parse_strategy(const std::string& text, const Game& game, int player);
std::string format_strategy(const Strategy& s, const Game& game);

// "⟨sA,sB,sC⟩" or the ASCII fallback "<sA,sB,sC>", one entry per player.
std::vector<Strategy> parse_profile(const std::string& text, const Game& game);
std::string format_profile(const std::vector<Strategy>& profile, const Game& game);

// Indistinguishability to an observer who knows only observer_known bits
// (and the variant iff observer_knows_variant): for every valuation of the
// observer-known dependencies, the multiset of choices induced over the
// unknown ones must coincide.
bool observationally_equivalent(const Strategy& a, const Strategy& b,
                                std::uint32_t observer_known, bool observer_knows_variant);

struct EquivalenceClasses {
  std::vector<std::vector<int>> members;   // indices into the input list
  std::vector<int> representative;         // canonical-least member per class
  std::vector<int> class_of;               // input index -> class id
};

EquivalenceClasses equivalence_classes(const std::vector<Strategy>& strategies,
                                       std::uint32_t observer_known,
                                       bool observer_knows_variant, int choice_count);

}  // namespace cig

#endif  // CIG_STRATEGY_HPP_
