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

#ifndef CIG_SOLVER_HPP_
#define CIG_SOLVER_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cig/equilibria.hpp"

namespace cig {

// Equilibrium selection at a Play leaf. Equilibria are first filtered to
// those invariant under the game's choice-relabeling automorphisms modulo a
// relabeling of secret-bit values: two players cannot settle on one of
// several interchangeable labelings unless a shared secret breaks the
// symmetry for them. The payoff-dominant subset of the filtered set is then
// selected; the fallback governs what happens when that subset is empty.
struct Selection {
  enum class Fallback { abort, report_all, subject_optimal };
  Fallback fallback = Fallback::abort;
  bool symmetry_filter = true;
};

struct Stage {
  enum class Kind { nature, share, observe, accept, signal, reveal, play };
  Kind kind = Kind::play;

  std::vector<int> players;  // nature: observers; reveal: recipients
  int decider = -1;          // share/observe/accept/signal actor
  int bit = -1;              // share/observe/signal subject bit
  int recipient = -1;        // share/signal receiver; accept: gated sender
  bool forced = false;       // share only: options reduced to {share}
  int via_bit = -1;          // share delivers this bit instead (noisy output)

  Selection selection;                // play
  std::map<int, Strategy> committed;  // play: player -> fixed strategy

  static Stage nature(std::vector<int> observers);
  static Stage share(int decider, int bit, int recipient, bool forced = false,
                     int via_bit = -1);
  static Stage observe(int observer, int bit);
  static Stage accept(int recipient, int sender);
  static Stage signal(int sender, int receiver, int bit);
  static Stage reveal(std::vector<int> to);
  static Stage play(Selection sel = {}, std::map<int, Strategy> committed = {});
};

struct ScenarioScript {
  Game game;
  KnowledgeState initial;  // defaults to own secrets when empty
  std::vector<Stage> stages;

  void validate() const;
  const Stage& play_stage() const;
};

struct LeafReport {
  EquilibriumSet equilibria;  // quotiented listing of all Nash profiles
  EquilibriumSet selected;    // profiles carrying the leaf value
  std::vector<Rational> value;
  bool valuation_ok = true;
  std::vector<std::string> notes;
};

// One node of the solved tree. Decision nodes carry every candidate rule (a
// rule assigns an action per still-possible variant when the decider knows
// the variant, one action otherwise) with its continuation value; chosen
// actions maximize the decider's expected component, ties broken toward the
// first action (keep/respect/refuse/signal-0) and recorded.
struct SolutionNode {
  int stage_index = -1;  // -1 for the leaf
  std::string label;
  int decider = -1;
  std::vector<std::string> action_names;

  struct Rule {
    std::vector<int> action_per_variant;  // parallel to env.scenario
    std::vector<Rational> value;
    Rational decider_value;
    bool chosen = false;
    bool tie_with_chosen = false;
    std::map<int, std::unique_ptr<SolutionNode>> children;  // by action
  };
  std::vector<Rule> rules;
  int chosen_rule = -1;

  std::optional<LeafReport> leaf;
  std::vector<Rational> value;
  bool valuation_ok = true;

  // Environment at this node, kept so subtrees can be re-solved for
  // continuation queries.
  PlayEnv env;
  std::map<std::pair<int, int>, char> accepted;
  std::size_t stage_cursor = 0;

  const SolutionNode* child_on_path(int action) const;
};

struct SolutionTree {
  std::unique_ptr<SolutionNode> root;
  bool valuation_ok = true;
  std::vector<Rational> value;
};

// Backward induction over the script: pre-play decisions resolve in declared
// order, deciders without variant knowledge act uniformly across the
// variants consistent with the public history, and leaves are solved by
// enumerate_nash + the selection rule.
SolutionTree solve(const ScenarioScript& script);

// solve with some stages' actions forced (stage index -> action id applied
// in every variant). Used for continuation probing.
SolutionTree solve_forced(const ScenarioScript& script,
                          const std::map<std::size_t, int>& forced);

// Scripts with Signal stages go through the same machinery; this wrapper
// validates that a Signal stage is present.
SolutionTree signaling_solve(const ScenarioScript& script);

// Find the unique realized decision node for a stage (follows chosen rules).
// Returns nullptr when the stage is vacuous or off the realized path;
// throws if the stage splits into several realized nodes.
const SolutionNode* find_stage_node(const SolutionTree& tree, std::size_t stage_index);

// Value of the subtree below `node` when `action` is taken at it (in every
// consistent variant), under the same selection rules.
std::vector<Rational> continuation_value(const ScenarioScript& script,
                                         const SolutionNode& node, int action);

// Same, with the node's scenario narrowed to a single variant first.
std::vector<Rational> continuation_value_in_variant(const ScenarioScript& script,
                                                    const SolutionNode& node, int variant,
                                                    int action);

// Like continuation_value_in_variant but forcing two stages (used to probe
// share/signal combinations).
std::vector<Rational> continuation_value_in_variant2(const ScenarioScript& script,
                                                     const SolutionNode& node, int variant,
                                                     std::size_t stage_a, int action_a,
                                                     std::size_t stage_b, int action_b);

// Leaf machinery, exposed for tests and the claims harness.
struct GameAutomorphism {
  std::vector<std::vector<int>> perm;  // per player, permutation of choices
  bool identity() const;
};

std::vector<GameAutomorphism> game_automorphisms(const PlayEnv& env);

bool profile_admissible(const PlayEnv& env, const std::vector<Strategy>& profile,
                        const std::vector<GameAutomorphism>& auts);

LeafReport solve_leaf(const PlayEnv& env, const Selection& sel,
                      std::int64_t budget = 100000000);

std::string render_tree(const SolutionTree& tree, const Game& game);

}  // namespace cig

#endif  // CIG_SOLVER_HPP_
