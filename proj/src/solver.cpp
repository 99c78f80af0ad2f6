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

#include "cig/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cig {

Stage Stage::nature(std::vector<int> observers) {
  Stage s; s.kind = Kind::nature; s.players = std::move(observers); return s;
}
Stage Stage::share(int decider, int bit, int recipient, bool forced, int via_bit) {
  Stage s; s.kind = Kind::share; s.decider = decider; s.bit = bit;
  s.recipient = recipient; s.forced = forced; s.via_bit = via_bit; return s;
}
Stage Stage::observe(int observer, int bit) {
  Stage s; s.kind = Kind::observe; s.decider = observer; s.bit = bit; return s;
}
Stage Stage::accept(int recipient, int sender) {
  Stage s; s.kind = Kind::accept; s.decider = recipient; s.recipient = sender; return s;
}
Stage Stage::signal(int sender, int receiver, int bit) {
  Stage s; s.kind = Kind::signal; s.decider = sender; s.recipient = receiver; s.bit = bit;
  return s;
}
Stage Stage::reveal(std::vector<int> to) {
  Stage s; s.kind = Kind::reveal; s.players = std::move(to); return s;
}
Stage Stage::play(Selection sel, std::map<int, Strategy> committed) {
  Stage s; s.kind = Kind::play; s.selection = sel; s.committed = std::move(committed);
  return s;
}

const Stage& ScenarioScript::play_stage() const {
  if (stages.empty() || stages.back().kind != Stage::Kind::play)
    throw Error(ErrorKind::schema, "script must end with a play stage");
  return stages.back();
}

void ScenarioScript::validate() const {
  game.validate();
  int plays = 0;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const Stage& s = stages[i];
    auto player_ok = [&](int p) { return p >= 0 && p < (int)game.players.size(); };
    auto bit_ok = [&](int b) { return b >= 0 && b < (int)game.bits.size(); };
    switch (s.kind) {
      case Stage::Kind::play:
        ++plays;
        if (i + 1 != stages.size())
          throw Error(ErrorKind::schema, "play stage must be last");
        for (const auto& [p, st] : s.committed)
          if (!player_ok(p) || st.player != p)
            throw Error(ErrorKind::schema, "committed strategy player mismatch");
        break;
      case Stage::Kind::share:
        if (!player_ok(s.decider) || !player_ok(s.recipient) || !bit_ok(s.bit))
          throw Error(ErrorKind::schema, "share stage references unknown player/bit");
        if (s.via_bit >= 0 && !bit_ok(s.via_bit))
          throw Error(ErrorKind::schema, "share stage references unknown channel bit");
        break;
      case Stage::Kind::observe:
        if (!player_ok(s.decider) || !bit_ok(s.bit))
          throw Error(ErrorKind::schema, "observe stage references unknown player/bit");
        break;
      case Stage::Kind::accept:
        if (!player_ok(s.decider) || !player_ok(s.recipient))
          throw Error(ErrorKind::schema, "accept stage references unknown player");
        break;
      case Stage::Kind::signal:
        if (!player_ok(s.decider) || !player_ok(s.recipient) || !bit_ok(s.bit))
          throw Error(ErrorKind::schema, "signal stage references unknown player/bit");
        break;
      case Stage::Kind::nature:
      case Stage::Kind::reveal:
        for (int p : s.players)
          if (!player_ok(p))
            throw Error(ErrorKind::schema, "stage references unknown player");
        break;
    }
  }
  if (plays != 1) throw Error(ErrorKind::schema, "script needs exactly one play stage");
}

bool GameAutomorphism::identity() const {
  for (const auto& p : perm)
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != (int)i) return false;
  return true;
}

std::vector<GameAutomorphism> game_automorphisms(const PlayEnv& env) {
  const Game& g = *env.game;
  const int n = (int)g.players.size();
  std::vector<std::vector<std::vector<int>>> perms(n);
  std::int64_t combos = 1;
  for (int p = 0; p < n; ++p) {
    std::vector<int> base(g.players[p].choices.size());
    std::iota(base.begin(), base.end(), 0);
    do perms[p].push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    combos *= (std::int64_t)perms[p].size();
  }
  std::vector<GameAutomorphism> out;
  GameAutomorphism id;
  for (int p = 0; p < n; ++p) {
    std::vector<int> base(g.players[p].choices.size());
    std::iota(base.begin(), base.end(), 0);
    id.perm.push_back(base);
  }
  out.push_back(id);
  if (combos > 100000) return out;  // identity only; larger games skip the filter

  std::vector<int> pick(n, 0);
  for (;;) {
    GameAutomorphism a;
    for (int p = 0; p < n; ++p) a.perm.push_back(perms[p][pick[p]]);
    if (!a.identity()) {
      bool ok = true;
      for (const auto& [variant, w] : env.scenario) {
        for (const ContextMatrix& c : g.contexts_for(variant)) {
          const auto& pr = a.perm[c.row_player];
          const auto& pc = a.perm[c.col_player];
          for (std::size_t x = 0; x < c.cells.size() && ok; ++x)
            for (std::size_t y = 0; y < c.cells[x].size() && ok; ++y)
              if (!(c.cells[pr[x]][pc[y]] == c.cells[x][y])) ok = false;
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (ok) out.push_back(a);
    }
    int j = n - 1;
    while (j >= 0) {
      if (++pick[j] < (int)perms[j].size()) break;
      pick[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

namespace {

// Does flipping the bits in `mask` leave every world weight unchanged?
// Uniform bits always do; a channel bit tolerates a flip pattern only if its
// conditional law is symmetric under it.
bool flip_preserves_distribution(const Game& g, std::uint32_t mask) {
  for (std::size_t b = 0; b < g.bits.size(); ++b) {
    if (!g.bits[b].channel) continue;
    const ChannelSpec& ch = *g.bits[b].channel;
    std::uint32_t pmask = 0;
    for (std::size_t j = 0; j < ch.parents.size(); ++j)
      if ((mask >> ch.parents[j]) & 1u) pmask |= (1u << j);
    bool flip_self = (mask >> b) & 1u;
    for (std::uint32_t pv = 0; pv < ch.prob_one.size(); ++pv) {
      Rational want = flip_self ? Rational(1) - ch.prob_one[pv ^ pmask]
                                : ch.prob_one[pv ^ pmask];
      if (!(want == ch.prob_one[pv])) return false;
    }
  }
  return true;
}

bool strategy_fixed_by(const Strategy& s, const std::vector<int>& perm, std::uint32_t mask) {
  std::uint32_t dep_flip = 0;
  for (std::size_t j = 0; j < s.deps.size(); ++j)
    if ((mask >> s.deps[j]) & 1u) dep_flip |= (1u << j);
  const int cells = s.cells_per_slice();
  for (int sl = 0; sl < s.slices(); ++sl)
    for (int v = 0; v < cells; ++v)
      if (perm[s.table[sl * cells + v]] != s.table[sl * cells + (int)(v ^ dep_flip)])
        return false;
  return true;
}

}  // namespace

bool profile_admissible(const PlayEnv& env, const std::vector<Strategy>& profile,
                        const std::vector<GameAutomorphism>& auts) {
  const Game& g = *env.game;
  std::uint32_t pinned = 0;
  for (const auto& [b, v] : env.pins) pinned |= (1u << b);
  const std::uint32_t all = (1u << g.bits.size()) - 1u;
  for (const GameAutomorphism& a : auts) {
    if (a.identity()) continue;
    bool found = false;
    for (std::uint32_t mask = 0; mask <= all && !found; ++mask) {
      if (mask & pinned) continue;
      if (!flip_preserves_distribution(g, mask)) continue;
      bool ok = true;
      for (std::size_t p = 0; p < profile.size() && ok; ++p)
        if (!strategy_fixed_by(profile[p], a.perm[p], mask)) ok = false;
      found = ok;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

Strategy partial_eval(const Strategy& s, const std::map<int, int>& pins) {
  bool touched = false;
  for (int d : s.deps)
    if (pins.count(d)) { touched = true; break; }
  if (!touched) return s;
  Strategy out;
  out.player = s.player;
  out.variant_ids = s.variant_ids;
  for (int d : s.deps)
    if (!pins.count(d)) out.deps.push_back(d);
  const int cells = 1 << out.deps.size();
  out.table.resize(cells * s.slices());
  std::uint32_t pin_bits = 0;
  for (const auto& [b, v] : pins)
    if (v) pin_bits |= (1u << b);
  for (int sl = 0; sl < s.slices(); ++sl)
    for (int v = 0; v < cells; ++v) {
      std::uint32_t bits = pin_bits;
      for (std::size_t j = 0; j < out.deps.size(); ++j)
        bits = (bits & ~(1u << out.deps[j])) | (((std::uint32_t)(v >> j) & 1u) << out.deps[j]);
      int variant = s.variant_ids.empty() ? 0 : s.variant_ids[sl];
      out.table[sl * cells + v] = s.eval(bits, variant);
    }
  return out;
}

std::string describe_env(const PlayEnv& env) {
  std::string d = "scenario{";
  for (std::size_t i = 0; i < env.scenario.size(); ++i) {
    if (i) d += ",";
    d += env.game->variants.empty() ? "-" : env.game->variants[env.scenario[i].first].name;
  }
  d += "}";
  for (const auto& [b, v] : env.pins)
    d += " " + env.game->bits[b].name + "=" + std::to_string(v);
  return d;
}

}  // namespace

LeafReport solve_leaf(const PlayEnv& env0, const Selection& sel, std::int64_t budget) {
  PlayEnv env = env0;
  for (auto& [p, s] : env.committed) s = partial_eval(s, env.pins);
  LeafReport rep;
  EquilibriumSet all = enumerate_nash(env, false, budget);
  rep.equilibria = enumerate_nash(env, true, budget);

  std::vector<GameAutomorphism> auts;
  if (sel.symmetry_filter) auts = game_automorphisms(env);

  EquilibriumSet pool;
  if (sel.symmetry_filter && auts.size() > 1) {
    for (std::size_t i = 0; i < all.profiles.size(); ++i)
      if (profile_admissible(env, all.profiles[i], auts)) {
        pool.profiles.push_back(all.profiles[i]);
        pool.payoffs.push_back(all.payoffs[i]);
      }
    if (pool.profiles.empty() && !all.profiles.empty()) {
      rep.notes.push_back("no symmetry-invariant equilibrium; selecting over the full set");
      pool = all;
    }
  } else {
    pool = all;
  }

  auto fail = [&](const std::string& why) {
    if (sel.fallback == Selection::Fallback::abort)
      throw Error(ErrorKind::selection_failure, why + " at leaf " + describe_env(env));
    rep.valuation_ok = false;
    rep.notes.push_back(why);
    rep.value.assign(env.game->players.size(), Rational(0));
  };

  if (all.profiles.empty()) {
    fail("no pure Nash equilibrium");
    return rep;
  }

  EquilibriumSet dom = payoff_dominant(pool);
  if (!dom.profiles.empty()) {
    rep.selected = dom;
    rep.value = dom.payoffs[0];
    return rep;
  }

  if (sel.fallback == Selection::Fallback::subject_optimal) {
    int subj = env.game->subject_index();
    if (subj < 0) {
      fail("empty payoff-dominant set and no subject for the fallback");
      return rep;
    }
    std::size_t best = 0;
    auto total = [&](std::size_t i) {
      Rational t(0);
      for (const Rational& r : pool.payoffs[i]) t += r;
      return t;
    };
    for (std::size_t i = 1; i < pool.profiles.size(); ++i) {
      if (pool.payoffs[i][subj] > pool.payoffs[best][subj] ||
          (pool.payoffs[i][subj] == pool.payoffs[best][subj] && total(i) > total(best)))
        best = i;
    }
    rep.selected.profiles = {pool.profiles[best]};
    rep.selected.payoffs = {pool.payoffs[best]};
    rep.value = pool.payoffs[best];
    rep.notes.push_back("payoff-dominant set empty; subject-optimal fallback applied");
    return rep;
  }

  fail("empty payoff-dominant set");
  return rep;
}

namespace {

struct Solver {
  const ScenarioScript* script;
  std::map<std::size_t, int> forced;

  std::unique_ptr<SolutionNode> solve_from(PlayEnv env,
                                           std::map<std::pair<int, int>, char> accepted,
                                           std::size_t i) {
    const auto& stages = script->stages;
    while (i < stages.size()) {
      const Stage& st = stages[i];
      switch (st.kind) {
        case Stage::Kind::nature:
          for (int p : st.players) env.knowledge.knows_variant[p] = 1;
          ++i;
          continue;
        case Stage::Kind::reveal:
          for (int p : st.players) env.knowledge.knows_variant[p] = 1;
          ++i;
          continue;
        case Stage::Kind::play: {
          auto node = std::make_unique<SolutionNode>();
          node->stage_index = (int)i;
          node->label = "play";
          node->env = env;
          node->env.committed = st.committed;
          node->accepted = accepted;
          node->stage_cursor = i;
          PlayEnv leaf_env = env;
          leaf_env.committed = st.committed;
          LeafReport rep = solve_leaf(leaf_env, st.selection);
          node->value = rep.value;
          node->valuation_ok = rep.valuation_ok;
          node->leaf = std::move(rep);
          return node;
        }
        case Stage::Kind::share:
          if (!env.knowledge.knows(st.decider, st.bit)) { ++i; continue; }  // nothing to share
          return decision(env, accepted, i);
        case Stage::Kind::observe:
          if (env.knowledge.knows(st.decider, st.bit)) { ++i; continue; }
          return decision(env, accepted, i);
        case Stage::Kind::accept:
        case Stage::Kind::signal:
          return decision(env, accepted, i);
      }
    }
    throw Error(ErrorKind::schema, "script ended without a play stage");
  }

  static void apply_action(const Stage& st, int action, PlayEnv& env,
                           std::map<std::pair<int, int>, char>& accepted) {
    switch (st.kind) {
      case Stage::Kind::share:
        if (action == 1) {
          auto gate = accepted.find({st.decider, st.recipient});
          if (gate == accepted.end() || gate->second) {
            int delivered = st.via_bit >= 0 ? st.via_bit : st.bit;
            env.knowledge.grant(st.recipient, delivered);
          }
        }
        break;
      case Stage::Kind::observe:
        if (action == 1) env.knowledge.grant(st.decider, st.bit);
        break;
      case Stage::Kind::accept:
        accepted[{st.recipient, st.decider}] = (char)action;
        break;
      case Stage::Kind::signal:
        env.pins[st.bit] = action;
        env.knowledge.grant(st.decider, st.bit);
        env.knowledge.grant(st.recipient, st.bit);
        break;
      default:
        break;
    }
  }

  static std::vector<std::string> action_names_for(const Stage& st) {
    switch (st.kind) {
      case Stage::Kind::share: return {"keep", "share"};
      case Stage::Kind::observe: return {"respect", "observe"};
      case Stage::Kind::accept: return {"refuse", "accept"};
      case Stage::Kind::signal: return {"signal-0", "signal-1"};
      default: return {};
    }
  }

  std::unique_ptr<SolutionNode> decision(const PlayEnv& env,
                                         const std::map<std::pair<int, int>, char>& accepted,
                                         std::size_t i) {
    const Game& g = script->game;
    const Stage& st = script->stages[i];
    auto node = std::make_unique<SolutionNode>();
    node->stage_index = (int)i;
    node->decider = st.decider;
    node->action_names = action_names_for(st);
    node->env = env;
    node->accepted = accepted;
    node->stage_cursor = i;
    {
      std::ostringstream lab;
      lab << node->action_names[1] << " decision of " << g.players[st.decider].name;
      if (st.bit >= 0) lab << " on " << g.bits[st.bit].name;
      if (st.kind == Stage::Kind::share)
        lab << " toward " << g.players[st.recipient].name;
      node->label = lab.str();
    }

    const int nacts = 2;
    const bool per_variant =
        env.knowledge.knows_variant[st.decider] && env.scenario.size() > 1;
    const int slots = per_variant ? (int)env.scenario.size() : 1;

    std::vector<std::vector<int>> rule_actions;
    auto forced_it = forced.find(i);
    if (forced_it != forced.end()) {
      rule_actions.push_back(std::vector<int>(slots, forced_it->second));
    } else if (st.kind == Stage::Kind::share && st.forced) {
      rule_actions.push_back(std::vector<int>(slots, 1));
    } else {
      int count = 1;
      for (int s = 0; s < slots; ++s) count *= nacts;
      for (int r = 0; r < count; ++r) {
        std::vector<int> acts(slots);
        int x = r;
        for (int s = slots - 1; s >= 0; --s) { acts[s] = x % nacts; x /= nacts; }
        rule_actions.push_back(acts);
      }
    }

    for (const auto& acts : rule_actions) {
      SolutionNode::Rule rule;
      rule.action_per_variant = acts;
      // Group the scenario's variants by the action the rule takes.
      std::map<int, std::vector<std::pair<int, Rational>>> groups;
      for (std::size_t s = 0; s < env.scenario.size(); ++s)
        groups[acts[per_variant ? s : 0]].push_back(env.scenario[s]);
      rule.value.assign(g.players.size(), Rational(0));
      bool ok = true;
      for (auto& [action, part] : groups) {
        Rational wa(0);
        for (const auto& [v, w] : part) wa += w;
        PlayEnv child_env = env;
        child_env.scenario.clear();
        for (const auto& [v, w] : part) child_env.scenario.push_back({v, w / wa});
        auto child_accepted = accepted;
        apply_action(st, action, child_env, child_accepted);
        auto child = solve_from(child_env, child_accepted, i + 1);
        ok = ok && child->valuation_ok;
        for (std::size_t p = 0; p < rule.value.size(); ++p)
          rule.value[p] += wa * child->value[p];
        rule.children[action] = std::move(child);
      }
      rule.decider_value = rule.value[st.decider];
      if (!ok) rule.decider_value = Rational(0);
      node->valuation_ok = node->valuation_ok && ok;
      node->rules.push_back(std::move(rule));
    }

    int best = 0;
    for (std::size_t r = 1; r < node->rules.size(); ++r)
      if (node->rules[r].decider_value > node->rules[best].decider_value) best = (int)r;
    node->chosen_rule = best;
    node->rules[best].chosen = true;
    for (std::size_t r = 0; r < node->rules.size(); ++r)
      if ((int)r != best &&
          node->rules[r].decider_value == node->rules[best].decider_value)
        node->rules[r].tie_with_chosen = true;
    node->value = node->rules[best].value;
    return node;
  }
};

}  // namespace

SolutionTree solve_forced(const ScenarioScript& script, const std::map<std::size_t, int>& forced) {
  script.validate();
  Solver sv{&script, forced};
  PlayEnv env = PlayEnv::base(script.game, script.initial);
  SolutionTree tree;
  tree.root = sv.solve_from(env, {}, 0);
  tree.valuation_ok = tree.root->valuation_ok;
  tree.value = tree.root->value;
  return tree;
}

SolutionTree solve(const ScenarioScript& script) { return solve_forced(script, {}); }

SolutionTree signaling_solve(const ScenarioScript& script) {
  bool has_signal = false;
  for (const Stage& s : script.stages)
    if (s.kind == Stage::Kind::signal) has_signal = true;
  if (!has_signal)
    throw Error(ErrorKind::schema, "signaling_solve requires a signal stage");
  return solve(script);
}

const SolutionNode* SolutionNode::child_on_path(int action) const {
  if (chosen_rule < 0) return nullptr;
  auto it = rules[chosen_rule].children.find(action);
  return it == rules[chosen_rule].children.end() ? nullptr : it->second.get();
}

namespace {

void collect_stage_nodes(const SolutionNode* node, std::size_t stage_index,
                         std::vector<const SolutionNode*>& out) {
  if (!node) return;
  if (node->stage_index == (int)stage_index && !node->leaf) {
    out.push_back(node);
    return;
  }
  if (node->chosen_rule < 0) return;
  for (const auto& [a, child] : node->rules[node->chosen_rule].children)
    collect_stage_nodes(child.get(), stage_index, out);
}

}  // namespace

const SolutionNode* find_stage_node(const SolutionTree& tree, std::size_t stage_index) {
  std::vector<const SolutionNode*> nodes;
  collect_stage_nodes(tree.root.get(), stage_index, nodes);
  if (nodes.empty()) return nullptr;
  if (nodes.size() > 1)
    throw Error(ErrorKind::usage, "stage resolves to several nodes on the solved path");
  return nodes.front();
}

std::vector<Rational> continuation_value(const ScenarioScript& script,
                                         const SolutionNode& node, int action) {
  Solver sv{&script, {{node.stage_cursor, action}}};
  auto sub = sv.solve_from(node.env, node.accepted, node.stage_cursor);
  return sub->value;
}

std::vector<Rational> continuation_value_in_variant(const ScenarioScript& script,
                                                    const SolutionNode& node, int variant,
                                                    int action) {
  Solver sv{&script, {{node.stage_cursor, action}}};
  PlayEnv env = node.env;
  env.scenario = {{variant, Rational(1)}};
  auto sub = sv.solve_from(env, node.accepted, node.stage_cursor);
  return sub->value;
}

std::vector<Rational> continuation_value_in_variant2(const ScenarioScript& script,
                                                     const SolutionNode& node, int variant,
                                                     std::size_t stage_a, int action_a,
                                                     std::size_t stage_b, int action_b) {
  Solver sv{&script, {{stage_a, action_a}, {stage_b, action_b}}};
  PlayEnv env = node.env;
  env.scenario = {{variant, Rational(1)}};
  auto sub = sv.solve_from(env, node.accepted, node.stage_cursor);
  return sub->value;
}

namespace {

void render_node(const SolutionNode* node, const Game& g, int depth, std::ostringstream& out) {
  std::string pad(2 * depth, ' ');
  if (node->leaf) {
    const LeafReport& rep = *node->leaf;
    out << pad << "play: ";
    if (!rep.valuation_ok) {
      out << "valuation aborted";
    } else if (!rep.selected.profiles.empty()) {
      out << "selected " << format_profile(rep.selected.profiles[0], g) << " value (";
      for (std::size_t p = 0; p < rep.value.size(); ++p)
        out << (p ? " " : "") << rep.value[p].str();
      out << ")";
    }
    out << " [" << rep.equilibria.profiles.size() << " equilibrium class"
        << (rep.equilibria.profiles.size() == 1 ? "" : "es") << "]\n";
    for (const std::string& n : rep.notes) out << pad << "  note: " << n << "\n";
    return;
  }
  out << pad << "stage " << node->stage_index << ": " << node->label << "\n";
  for (std::size_t r = 0; r < node->rules.size(); ++r) {
    const auto& rule = node->rules[r];
    out << pad << "  " << (rule.chosen ? "-> " : "   ");
    for (std::size_t s = 0; s < rule.action_per_variant.size(); ++s) {
      if (s) out << "/";
      out << node->action_names[rule.action_per_variant[s]];
    }
    out << "  value ";
    for (std::size_t p = 0; p < rule.value.size(); ++p)
      out << (p ? " " : "(") << rule.value[p].str();
    out << ")";
    if (rule.tie_with_chosen) out << "  [tie]";
    out << "\n";
  }
  const auto& chosen = node->rules[node->chosen_rule];
  for (const auto& [a, child] : chosen.children) {
    out << pad << "  after " << node->action_names[a] << ":\n";
    render_node(child.get(), g, depth + 2, out);
  }
}

}  // namespace

std::string render_tree(const SolutionTree& tree, const Game& game) {
  std::ostringstream out;
  render_node(tree.root.get(), game, 0, out);
  if (!tree.valuation_ok) out << "valuation incomplete (see notes above)\n";
  return out.str();
}

}  // namespace cig
