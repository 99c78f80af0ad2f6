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

#include "cig/model.hpp"

#include <algorithm>
#include <set>

namespace cig {

std::string role_name(Role r) {
  switch (r) {
    case Role::subject: return "subject";
    case Role::sender: return "sender";
    case Role::recipient: return "recipient";
    case Role::replica_subject: return "replica-subject";
  }
  return "?";
}

Role role_from_name(const std::string& s) {
  if (s == "subject") return Role::subject;
  if (s == "sender") return Role::sender;
  if (s == "recipient") return Role::recipient;
  if (s == "replica-subject") return Role::replica_subject;
  throw Error(ErrorKind::schema, "unknown role: " + s);
}

std::string bit_kind_name(BitKind k) {
  switch (k) {
    case BitKind::secret: return "secret";
    case BitKind::signal: return "signal";
    case BitKind::channel_output: return "channel-output";
  }
  return "?";
}

BitKind bit_kind_from_name(const std::string& s) {
  if (s == "secret") return BitKind::secret;
  if (s == "signal") return BitKind::signal;
  if (s == "channel-output") return BitKind::channel_output;
  throw Error(ErrorKind::schema, "unknown bit kind: " + s);
}

int Player::choice_index(const std::string& label) const {
  for (std::size_t i = 0; i < choices.size(); ++i)
    if (choices[i] == label) return (int)i;
  throw Error(ErrorKind::invalid_choice,
              "player " + name + " has no choice '" + label + "'");
}

int Game::player_index(const std::string& n) const {
  for (std::size_t i = 0; i < players.size(); ++i)
    if (players[i].name == n) return (int)i;
  return -1;
}

int Game::bit_index(const std::string& n) const {
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i].name == n) return (int)i;
  return -1;
}

int Game::subject_index() const {
  for (std::size_t i = 0; i < players.size(); ++i)
    if (players[i].role == Role::subject) return (int)i;
  return -1;
}

int Game::variant_index(const std::string& n) const {
  for (std::size_t i = 0; i < variants.size(); ++i)
    if (variants[i].name == n) return (int)i;
  return -1;
}

std::vector<ContextMatrix> Game::contexts_for(int variant) const {
  std::vector<ContextMatrix> out = base_contexts;
  if (!variants.empty()) {
    for (const ContextMatrix& ov : variants.at(variant).overrides) {
      bool replaced = false;
      for (ContextMatrix& c : out) {
        bool same = (c.row_player == ov.row_player && c.col_player == ov.col_player) ||
                    (c.row_player == ov.col_player && c.col_player == ov.row_player);
        if (same) { c = ov; replaced = true; break; }
      }
      if (!replaced) out.push_back(ov);
    }
  }
  return out;
}

void Game::validate() const {
  std::set<std::string> names;
  for (const Player& p : players) {
    if (!names.insert(p.name).second)
      throw Error(ErrorKind::schema, "duplicate player name: " + p.name);
    if (p.choices.size() < 2)
      throw Error(ErrorKind::schema, "player " + p.name + " needs >= 2 choices");
    std::set<std::string> labels(p.choices.begin(), p.choices.end());
    if (labels.size() != p.choices.size())
      throw Error(ErrorKind::schema, "player " + p.name + " has duplicate choice labels");
  }
  std::set<std::string> bitnames;
  for (const BitDef& b : bits) {
    if (!bitnames.insert(b.name).second)
      throw Error(ErrorKind::schema, "duplicate bit name: " + b.name);
    if (b.owner < 0 || b.owner >= (int)players.size())
      throw Error(ErrorKind::schema, "bit " + b.name + " has no owner");
    if (b.channel) {
      if (b.channel->prob_one.size() != (std::size_t{1} << b.channel->parents.size()))
        throw Error(ErrorKind::schema, "bit " + b.name + ": channel table size mismatch");
      for (int p : b.channel->parents)
        if (p < 0 || p >= (int)bits.size())
          throw Error(ErrorKind::schema, "bit " + b.name + ": dangling channel parent");
    }
  }
  auto check_contexts = [&](const std::vector<ContextMatrix>& cs, const std::string& where) {
    std::set<std::pair<int, int>> pairs;
    for (const ContextMatrix& c : cs) {
      if (c.row_player < 0 || c.row_player >= (int)players.size() ||
          c.col_player < 0 || c.col_player >= (int)players.size() ||
          c.row_player == c.col_player)
        throw Error(ErrorKind::schema, where + ": bad context players");
      auto key = std::minmax(c.row_player, c.col_player);
      if (!pairs.insert({key.first, key.second}).second)
        throw Error(ErrorKind::schema, where + ": duplicate context for one pair");
      if (c.cells.size() != players[c.row_player].choices.size())
        throw Error(ErrorKind::schema, where + ": context row count mismatch");
      for (const auto& row : c.cells)
        if (row.size() != players[c.col_player].choices.size())
          throw Error(ErrorKind::schema, where + ": context column count mismatch");
    }
  };
  for (int v = 0; v < variant_count(); ++v)
    check_contexts(contexts_for(variants.empty() ? 0 : v), "variant " + std::to_string(v));
  if (!variants.empty()) {
    Rational sum(0);
    for (const Variant& v : variants) sum += v.prior;
    if (sum != Rational(1))
      throw Error(ErrorKind::schema, "variant priors sum to " + sum.str() + ", want 1/1");
  }
}

KnowledgeState KnowledgeState::own_secrets(const Game& g) {
  KnowledgeState k;
  k.known.assign(g.players.size(), 0);
  k.knows_variant.assign(g.players.size(), 0);
  for (std::size_t i = 0; i < g.bits.size(); ++i)
    if (g.bits[i].kind == BitKind::secret) k.grant(g.bits[i].owner, (int)i);
  return k;
}

std::vector<std::pair<World, Rational>> enumerate_worlds(const Game& g, int variant) {
  const int n = (int)g.bits.size();
  if (n > 20) throw Error(ErrorKind::budget_exceeded, "too many bits for world enumeration");
  std::vector<std::pair<World, Rational>> out;
  const Rational half(1, 2);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rational w(1);
    for (int i = 0; i < n && !w.is_zero(); ++i) {
      const BitDef& b = g.bits[i];
      int val = (mask >> i) & 1;
      if (!b.channel) {
        w *= half;
      } else {
        std::uint32_t pv = 0;
        for (std::size_t j = 0; j < b.channel->parents.size(); ++j)
          pv |= ((mask >> b.channel->parents[j]) & 1u) << j;
        Rational p1 = b.channel->prob_one[pv];
        w *= val ? p1 : Rational(1) - p1;
      }
    }
    if (!w.is_zero()) out.push_back({World{mask, variant}, w});
  }
  return out;
}

std::vector<Rational> total_payoff(const Game& g, const World& w,
                                   const std::vector<int>& choices) {
  if (choices.size() != g.players.size())
    throw Error(ErrorKind::invalid_choice, "choice vector size mismatch");
  for (std::size_t i = 0; i < choices.size(); ++i)
    if (choices[i] < 0 || choices[i] >= (int)g.players[i].choices.size())
      throw Error(ErrorKind::invalid_choice,
                  "choice index out of range for player " + g.players[i].name);
  std::vector<Rational> out(g.players.size(), Rational(0));
  for (const ContextMatrix& c : g.contexts_for(w.variant)) {
    const Cell& cell = c.cells[choices[c.row_player]][choices[c.col_player]];
    out[c.row_player] += cell.row;
    out[c.col_player] += cell.col;
  }
  return out;
}

std::vector<Rational> total_payoff(const Game& g, const World& w,
                                   const std::vector<std::string>& labels) {
  std::vector<int> idx(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    idx[i] = g.players[i].choice_index(labels[i]);
  return total_payoff(g, w, idx);
}

}  // namespace cig
