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

#include "cig/equilibria.hpp"

#include <algorithm>
#include <set>

namespace cig {

PlayEnv PlayEnv::base(const Game& g) { return base(g, KnowledgeState::own_secrets(g)); }

PlayEnv PlayEnv::base(const Game& g, const KnowledgeState& k) {
  PlayEnv env;
  env.game = &g;
  env.knowledge = k;
  if (g.variants.empty()) {
    env.scenario = {{0, Rational(1)}};
  } else {
    for (std::size_t v = 0; v < g.variants.size(); ++v)
      env.scenario.push_back({(int)v, g.variants[v].prior});
  }
  return env;
}

namespace {

// Worlds consistent with the environment's pins, weights summing to 1 per
// variant. Pinned bits carry weight 1 at the pinned value.
std::vector<std::pair<std::uint32_t, Rational>> env_worlds(const PlayEnv& env, int /*variant*/) {
  const Game& g = *env.game;
  const int n = (int)g.bits.size();
  std::vector<std::pair<std::uint32_t, Rational>> out;
  const Rational half(1, 2);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rational w(1);
    for (int i = 0; i < n && !w.is_zero(); ++i) {
      int val = (mask >> i) & 1;
      auto pin = env.pins.find(i);
      if (pin != env.pins.end()) {
        if (val != pin->second) w = Rational(0);
        continue;
      }
      const BitDef& b = g.bits[i];
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
    if (!w.is_zero()) out.push_back({mask, w});
  }
  return out;
}

void check_knowledge(const PlayEnv& env, const Strategy& s) {
  for (int d : s.deps)
    if (!env.knowledge.knows(s.player, d))
      throw Error(ErrorKind::knowledge_violation,
                  "strategy for " + env.game->players[s.player].name +
                      " conditions on unknown bit " + env.game->bits[d].name);
  if (!s.variant_ids.empty() && !env.knowledge.knows_variant[s.player])
    throw Error(ErrorKind::knowledge_violation,
                "strategy for " + env.game->players[s.player].name +
                    " conditions on the unknown variant");
}

}  // namespace

std::vector<Rational> expected_payoff(const PlayEnv& env, const std::vector<Strategy>& profile) {
  const Game& g = *env.game;
  if (profile.size() != g.players.size())
    throw Error(ErrorKind::invalid_choice, "profile size mismatch");
  for (const Strategy& s : profile) check_knowledge(env, s);
  std::vector<Rational> acc(g.players.size(), Rational(0));
  std::vector<int> choices(g.players.size());
  for (const auto& [variant, scen_w] : env.scenario) {
    for (const auto& [bits, w] : env_worlds(env, variant)) {
      for (std::size_t p = 0; p < profile.size(); ++p)
        choices[p] = profile[p].eval(bits, variant);
      std::vector<Rational> pay = total_payoff(g, World{bits, variant}, choices);
      Rational f = scen_w * w;
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += f * pay[p];
    }
  }
  return acc;
}

std::vector<Rational> expected_payoff(const Game& g, const KnowledgeState& k,
                                      const std::vector<Strategy>& profile) {
  return expected_payoff(PlayEnv::base(g, k), profile);
}

std::int64_t LeafSpace::profile_count() const {
  std::int64_t n = 1;
  for (const auto& s : strategies) {
    n *= (std::int64_t)s.size();
    if (n < 0) return INT64_MAX;
  }
  return n;
}

LeafSpace build_space(const PlayEnv& env, std::int64_t budget) {
  const Game& g = *env.game;
  LeafSpace sp;
  sp.strategies.resize(g.players.size());
  sp.is_committed.assign(g.players.size(), 0);
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    auto it = env.committed.find((int)p);
    if (it != env.committed.end()) {
      check_knowledge(env, it->second);
      sp.strategies[p] = {it->second};
      sp.is_committed[p] = 1;
      continue;
    }
    std::vector<int> deps;
    for (std::size_t b = 0; b < g.bits.size(); ++b)
      if (env.knowledge.knows((int)p, (int)b) && !env.pins.count((int)b))
        deps.push_back((int)b);
    std::sort(deps.begin(), deps.end(),
              [&](int a, int b) { return g.bits[a].name < g.bits[b].name; });
    std::vector<int> variant_ids;
    if (env.knowledge.knows_variant[p] && env.scenario.size() > 1)
      for (const auto& [v, w] : env.scenario) variant_ids.push_back(v);
    sp.strategies[p] = enumerate_strategies((int)g.players[p].choices.size(), deps,
                                            variant_ids, (int)p, budget);
  }
  return sp;
}

PairTables build_pair_tables(const PlayEnv& env, const LeafSpace& sp) {
  const Game& g = *env.game;
  PairTables pt;
  // Canonical pair list: every unordered pair with a context in any scenario
  // variant, oriented as stored in that variant's context.
  std::set<std::pair<int, int>> seen;
  for (const auto& [variant, w] : env.scenario)
    for (const ContextMatrix& c : g.contexts_for(variant)) {
      auto key = std::minmax(c.row_player, c.col_player);
      if (seen.insert({key.first, key.second}).second)
        pt.pairs.push_back({c.row_player, c.col_player});
    }
  pt.m.resize(pt.pairs.size());
  for (std::size_t k = 0; k < pt.pairs.size(); ++k)
    pt.m[k].assign(sp.strategies[pt.pairs[k].first].size(),
                   std::vector<Cell>(sp.strategies[pt.pairs[k].second].size(),
                                     Cell{Rational(0), Rational(0)}));

  for (const auto& [variant, scen_w] : env.scenario) {
    auto worlds = env_worlds(env, variant);
    // Choices per player/strategy/world, computed once.
    std::vector<std::vector<std::vector<int>>> choice(g.players.size());
    for (std::size_t p = 0; p < g.players.size(); ++p) {
      choice[p].resize(sp.strategies[p].size());
      for (std::size_t s = 0; s < sp.strategies[p].size(); ++s) {
        choice[p][s].resize(worlds.size());
        for (std::size_t w = 0; w < worlds.size(); ++w)
          choice[p][s][w] = sp.strategies[p][s].eval(worlds[w].first, variant);
      }
    }
    for (const ContextMatrix& c : g.contexts_for(variant)) {
      auto key = std::minmax(c.row_player, c.col_player);
      std::size_t k = 0;
      while (std::minmax(pt.pairs[k].first, pt.pairs[k].second) != key) ++k;
      const bool flipped = pt.pairs[k].first != c.row_player;
      auto& mat = pt.m[k];
      const int pi = pt.pairs[k].first, pj = pt.pairs[k].second;
      for (std::size_t si = 0; si < sp.strategies[pi].size(); ++si)
        for (std::size_t sj = 0; sj < sp.strategies[pj].size(); ++sj) {
          Rational r(0), cl(0);
          for (std::size_t w = 0; w < worlds.size(); ++w) {
            int ci = choice[pi][si][w], cj = choice[pj][sj][w];
            const Cell& cell = flipped ? c.cells[cj][ci] : c.cells[ci][cj];
            Rational f = scen_w * worlds[w].second;
            r += f * (flipped ? cell.col : cell.row);
            cl += f * (flipped ? cell.row : cell.col);
          }
          mat[si][sj].row += r;
          mat[si][sj].col += cl;
        }
    }
  }
  return pt;
}

std::vector<Rational> PairTables::value(const LeafSpace& sp,
                                        const std::vector<int>& profile) const {
  std::vector<Rational> out(sp.strategies.size(), Rational(0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Cell& cell = m[k][profile[pairs[k].first]][profile[pairs[k].second]];
    out[pairs[k].first] += cell.row;
    out[pairs[k].second] += cell.col;
  }
  return out;
}

namespace {

// Expand a strategy onto the exact dep list/slices of a space entry so its
// canonical index addresses the enumeration directly.
Strategy align_to_space(const Strategy& s, const Strategy& shape) {
  Strategy e = shape;
  const int cells = shape.cells_per_slice();
  for (int sl = 0; sl < shape.slices(); ++sl)
    for (int v = 0; v < cells; ++v) {
      std::uint32_t bits = 0;
      for (std::size_t j = 0; j < shape.deps.size(); ++j)
        bits |= ((v >> j) & 1u) << shape.deps[j];
      int variant = shape.variant_ids.empty() ? 0 : shape.variant_ids[sl];
      e.table[sl * cells + v] = s.eval(bits, variant);
    }
  return e;
}

int space_index(const LeafSpace& sp, int player, const Strategy& s, const Game& g) {
  if (sp.is_committed[player]) {
    if (!same_function(s, sp.strategies[player][0]))
      throw Error(ErrorKind::knowledge_violation,
                  "profile deviates from the committed strategy of " +
                      g.players[player].name);
    return 0;
  }
  Strategy aligned = align_to_space(s, sp.strategies[player][0]);
  auto idx = aligned.canonical_index((int)g.players[player].choices.size());
  return (int)idx;
}

}  // namespace

BestResponse best_response(const PlayEnv& env, int player,
                           const std::vector<Strategy>& others_profile) {
  const Game& g = *env.game;
  LeafSpace sp = build_space(env);
  PairTables pt = build_pair_tables(env, sp);
  std::vector<int> idx(g.players.size(), 0);
  for (std::size_t p = 0; p < g.players.size(); ++p)
    if ((int)p != player) idx[p] = space_index(sp, (int)p, others_profile[p], g);
  BestResponse br;
  bool first = true;
  std::vector<int> arg_idx;
  for (std::size_t s = 0; s < sp.strategies[player].size(); ++s) {
    idx[player] = (int)s;
    Rational v(0);
    for (std::size_t k = 0; k < pt.pairs.size(); ++k) {
      if (pt.pairs[k].first == player) v += pt.m[k][idx[pt.pairs[k].first]][idx[pt.pairs[k].second]].row;
      else if (pt.pairs[k].second == player) v += pt.m[k][idx[pt.pairs[k].first]][idx[pt.pairs[k].second]].col;
    }
    if (first || v > br.value) { br.value = v; arg_idx = {(int)s}; first = false; }
    else if (v == br.value) arg_idx.push_back((int)s);
  }
  for (int s : arg_idx) br.argset.push_back(sp.strategies[player][s]);
  return br;
}

BestResponse best_response(const Game& g, const KnowledgeState& k, int player,
                           const std::vector<Strategy>& others_profile) {
  return best_response(PlayEnv::base(g, k), player, others_profile);
}

bool is_nash(const PlayEnv& env, const std::vector<Strategy>& profile) {
  const Game& g = *env.game;
  for (const Strategy& s : profile) check_knowledge(env, s);
  std::vector<Rational> actual = expected_payoff(env, profile);
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    if (env.committed.count((int)p)) continue;
    BestResponse br = best_response(env, (int)p, profile);
    if (br.value > actual[p]) return false;
  }
  return true;
}

bool is_nash(const Game& g, const KnowledgeState& k, const std::vector<Strategy>& profile) {
  return is_nash(PlayEnv::base(g, k), profile);
}

EquilibriumSet enumerate_nash(const PlayEnv& env, bool quotient, std::int64_t budget) {
  const Game& g = *env.game;
  LeafSpace sp = build_space(env, budget);
  std::int64_t total = sp.profile_count();
  if (total > budget)
    throw Error(ErrorKind::budget_exceeded,
                "enumeration needs " + std::to_string(total) +
                    " profile evaluations, budget " + std::to_string(budget));
  PairTables pt = build_pair_tables(env, sp);
  const int n = (int)g.players.size();

  // best_vs[p][tuple-of-others] = the best payoff player p can reach against
  // that opponent combination. Tuples are mixed-radix over the other spaces.
  std::vector<std::vector<Rational>> best_vs(n);
  std::vector<std::vector<std::pair<std::size_t, bool>>> pair_roles(n);  // (pair idx, p-is-row)
  for (int p = 0; p < n; ++p)
    for (std::size_t k = 0; k < pt.pairs.size(); ++k) {
      if (pt.pairs[k].first == p) pair_roles[p].push_back({k, true});
      else if (pt.pairs[k].second == p) pair_roles[p].push_back({k, false});
    }

  auto others_radix = [&](int p) {
    std::vector<std::size_t> radix;
    for (int q = 0; q < n; ++q)
      if (q != p) radix.push_back(sp.strategies[q].size());
    return radix;
  };

  std::vector<int> idx(n, 0);
  for (int p = 0; p < n; ++p) {
    auto radix = others_radix(p);
    std::size_t cnt = 1;
    for (auto r : radix) cnt *= r;
    best_vs[p].assign(cnt, Rational(0));
    std::vector<int> oidx(radix.size(), 0);
    for (std::size_t t = 0;; ++t) {
      // Materialize the full index vector for lookups.
      int qi = 0;
      for (int q = 0; q < n; ++q)
        if (q != p) idx[q] = oidx[qi++];
      bool first = true;
      Rational best(0);
      for (std::size_t s = 0; s < sp.strategies[p].size(); ++s) {
        idx[p] = (int)s;
        Rational v(0);
        for (auto [k, is_row] : pair_roles[p]) {
          const Cell& cell = pt.m[k][idx[pt.pairs[k].first]][idx[pt.pairs[k].second]];
          v += is_row ? cell.row : cell.col;
        }
        if (first || v > best) { best = v; first = false; }
      }
      best_vs[p][t] = best;
      // Advance mixed radix.
      std::size_t j = 0;
      while (j < radix.size()) {
        if (++oidx[j] < (int)radix[j]) break;
        oidx[j] = 0;
        ++j;
      }
      if (j == radix.size()) break;
      if (radix.empty()) break;
    }
  }

  auto others_key = [&](int p, const std::vector<int>& full) {
    std::size_t key = 0, mult = 1;
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      key += full[q] * mult;
      mult *= sp.strategies[q].size();
    }
    return key;
  };

  EquilibriumSet out;
  std::fill(idx.begin(), idx.end(), 0);
  for (;;) {
    std::vector<Rational> val = pt.value(sp, idx);
    bool nash = true;
    for (int p = 0; p < n && nash; ++p) {
      if (sp.is_committed[p]) continue;
      if (best_vs[p][others_key(p, idx)] > val[p]) nash = false;
    }
    if (nash) {
      std::vector<Strategy> prof;
      for (int p = 0; p < n; ++p) prof.push_back(sp.strategies[p][idx[p]]);
      out.profiles.push_back(std::move(prof));
      out.payoffs.push_back(std::move(val));
    }
    int j = n - 1;
    while (j >= 0) {
      if (++idx[j] < (int)sp.strategies[j].size()) break;
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }

  if (!quotient || out.profiles.empty()) return out;

  // Joint observational equivalence: player i's strategies are compared from
  // the viewpoint of everything the other players jointly know.
  std::vector<std::uint32_t> obs_bits(n, 0);
  std::vector<bool> obs_variant(n, false);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      obs_bits[p] |= env.knowledge.known[q];
      obs_variant[p] = obs_variant[p] || env.knowledge.knows_variant[q];
    }
  std::vector<EquivalenceClasses> cls(n);
  for (int p = 0; p < n; ++p) {
    std::vector<Strategy> present;
    for (const auto& prof : out.profiles) present.push_back(prof[p]);
    cls[p] = equivalence_classes(present, obs_bits[p], obs_variant[p],
                                 (int)g.players[p].choices.size());
  }
  std::map<std::vector<int>, std::vector<int>> groups;  // class tuple -> profile indices
  for (std::size_t i = 0; i < out.profiles.size(); ++i) {
    std::vector<int> key(n);
    for (int p = 0; p < n; ++p) key[p] = cls[p].class_of[i];
    groups[key].push_back((int)i);
  }
  EquilibriumSet q;
  q.quotiented = true;
  std::vector<int> order;
  for (const auto& [key, members] : groups) order.push_back(members.front());
  std::sort(order.begin(), order.end());
  for (int rep : order) {
    std::vector<int> key(n);
    for (int p = 0; p < n; ++p) key[p] = cls[p].class_of[rep];
    q.profiles.push_back(out.profiles[rep]);
    q.payoffs.push_back(out.payoffs[rep]);
    q.class_sizes.push_back((int)groups[key].size());
  }
  return q;
}

EquilibriumSet enumerate_nash(const Game& g, const KnowledgeState& k, bool quotient,
                              std::int64_t budget) {
  return enumerate_nash(PlayEnv::base(g, k), quotient, budget);
}

EquilibriumSet payoff_dominant(const EquilibriumSet& eqs) {
  EquilibriumSet out;
  out.quotiented = eqs.quotiented;
  for (std::size_t i = 0; i < eqs.profiles.size(); ++i) {
    bool dominant = true;
    for (std::size_t j = 0; j < eqs.payoffs.size() && dominant; ++j)
      for (std::size_t p = 0; p < eqs.payoffs[i].size() && dominant; ++p)
        if (eqs.payoffs[i][p] < eqs.payoffs[j][p]) dominant = false;
    if (dominant) {
      out.profiles.push_back(eqs.profiles[i]);
      out.payoffs.push_back(eqs.payoffs[i]);
      if (eqs.quotiented) out.class_sizes.push_back(eqs.class_sizes[i]);
    }
  }
  return out;
}

}  // namespace cig
