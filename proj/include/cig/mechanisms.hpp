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

#ifndef CIG_MECHANISMS_HPP_
#define CIG_MECHANISMS_HPP_

#include <string>
#include <vector>

#include "cig/solver.hpp"

namespace cig {

// One mechanism block. Distributional mechanisms (transfer, tax) modify
// cells; communication mechanisms (interactive, noisy, bandwidth) degrade the
// secret-passing channels and never add one.
struct Mechanism {
  enum class Kind { transfer, tax, interactive, noisy, bandwidth };
  Kind kind = Kind::transfer;
  std::string name;

  // transfer: `amount` moves from `from` to `to` on the listed
  // (from-choice, to-choice) combinations of their shared context.
  int from = -1, to = -1;
  Rational amount;
  std::vector<std::pair<int, int>> on_pairs;

  // tax: `amount` is taken from `from` whenever his choice is listed.
  std::vector<int> taxed_choices;

  // noisy: output agrees with the source bit with probability 1/2 + delta.
  int source_bit = -1;
  std::string output_name;
  Rational delta;

  // bandwidth: k replica subjects, threshold fraction alpha, message bit
  // name, sender-secret fallback.
  int k = 1;
  Rational alpha;
  std::string message_name;
  int fallback_bit = -1;
};

// Applies transfer/tax rules to the game's cells and validates that no
// outcome's total payoff increases (equality for pure transfers).
Game apply_distributional(const Game& g, const std::vector<Mechanism>& rules);

// Inserts the recipient's accept/refuse decision before the matching share
// stage; refusal blocks the knowledge transfer.
ScenarioScript apply_interactive(const ScenarioScript& script, int sender, int recipient);

// Adds the channel-output bit and reroutes the matching share stage through
// it; the recipient learns the output, never the source.
ScenarioScript apply_noisy(const ScenarioScript& script, int sender, int recipient,
                           int source_bit, const std::string& output_name,
                           const Rational& delta);

// f = 0 below the alpha fraction of ones, 1 above 1-alpha, else the fallback.
int threshold_message(const std::vector<int>& values, const Rational& alpha, int fallback);

// Exact probability that the fraction of ones among k uniform bits lies in
// the closed band [alpha, 1-alpha], from binomial weights.
Rational prob_informative(int k, const Rational& alpha);

struct WelfareDelta {
  std::vector<Rational> before, after, deltas;
  Rational total_before, total_after;
};

WelfareDelta welfare_delta(const ScenarioScript& before, const ScenarioScript& after);

// The bandwidth-limited replicated game: k subjects each with her own secret
// play the template against one sender and one recipient, whose single
// strategies apply round by round; the sender-recipient channel carries only
// the threshold message bit. The per-round sender/recipient contexts violate
// the one-context-per-pair shape of Game, hence the dedicated type.
class BandwidthGame {
 public:
  BandwidthGame(const Game& templ, int k, const Rational& alpha);

  const Game& template_game() const { return templ_; }
  int replicas() const { return k_; }
  const Rational& alpha() const { return alpha_; }

  // Template strategies are written against the template game's bits: the
  // round subject's secret, the sender's own secret, the recipient's secret,
  // and the message bit "f".
  Strategy parse_template(const std::string& text, int template_player) const;

  // Payoffs ordered subject_1..subject_k, sender, recipient. The profile is
  // (subject template, sender template, recipient strategy); each subject
  // plays her instance of the subject template.
  std::vector<Rational> eval(const Strategy& subject_t, const Strategy& sender_t,
                             const Strategy& recipient_t) const;

  // Unilateral-deviation check of the template profile. The full check
  // enumerates every sender template (k <= 3 only); the menu check restricts
  // the sender to constants, single-bit conditionals, and the profile's own
  // strategies, and is labeled as such in reports.
  bool is_nash_full(const Strategy& subject_t, const Strategy& sender_t,
                    const Strategy& recipient_t) const;
  bool is_nash_menu(const Strategy& subject_t, const Strategy& sender_t,
                    const Strategy& recipient_t) const;

  // Expected payoff of one subject conditioned on the message carrying the
  // sender's fallback bit (the informative band), for the decomposition
  // property.
  Rational subject_value_given_band(const Strategy& subject_t, const Strategy& sender_t,
                                    const Strategy& recipient_t) const;

  int bit_f() const { return bit_f_; }

 private:
  std::vector<Rational> eval_internal(const Strategy& subject_t, const Strategy& sender_t,
                                      const Strategy& recipient_t, int band_filter,
                                      Rational* prob_out) const;
  bool deviations_beat(const Strategy& subject_t, const Strategy& sender_t,
                       const Strategy& recipient_t,
                       const std::vector<Strategy>& sender_menu) const;

  Game templ_;
  int k_;
  Rational alpha_;
  int bit_a_, bit_b_, bit_c_, bit_f_;  // template bit indices
  const ContextMatrix *ac_, *ab_, *bc_;
};

BandwidthGame build_bandwidth(const Game& templ, int k, const Rational& alpha);

}  // namespace cig

#endif  // CIG_MECHANISMS_HPP_
