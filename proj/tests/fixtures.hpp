// Shared helpers for the test suites: tiny game builders and a naive
// evaluator kept deliberately independent of the library's context-matrix
// path, used as the brute-force oracle.
#ifndef CIG_TESTS_FIXTURES_HPP_
#define CIG_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "cig/equilibria.hpp"
#include "cig/model.hpp"
#include "cig/strategy.hpp"

namespace cig_test {

using namespace cig;

inline ContextMatrix matrix(const Game& g, const std::string& rowp, const std::string& colp,
                            std::vector<std::vector<std::pair<int, int>>> cells) {
  ContextMatrix m;
  m.row_player = g.player_index(rowp);
  m.col_player = g.player_index(colp);
  for (auto& row : cells) {
    std::vector<Cell> r;
    for (auto& [a, b] : row) r.push_back(Cell{Rational(a), Rational(b)});
    m.cells.push_back(r);
  }
  return m;
}

// Table 1: the two-player base game between the subject and the recipient.
inline Game privacy_game() {
  Game g;
  g.name = "privacy";
  g.players = {{"Alice", Role::subject, {"T", "M", "B"}},
               {"Carol", Role::recipient, {"L", "C", "R"}}};
  g.bits = {{"a", BitKind::secret, 0, {}}, {"c", BitKind::secret, 1, {}}};
  g.base_contexts = {matrix(g, "Alice", "Carol",
                            {{{0, 8}, {0, 2}, {8, 0}},
                             {{2, 0}, {2, 2}, {2, 0}},
                             {{8, 0}, {0, 2}, {0, 8}}})};
  g.validate();
  return g;
}

// Direct world-sum evaluator: no pair tables, no sharing with the library
// beyond Strategy::eval and total_payoff.
inline std::vector<Rational> naive_expected(const Game& g, const std::vector<Strategy>& prof) {
  std::vector<Rational> acc(g.players.size(), Rational(0));
  const int vc = g.variant_count();
  for (int v = 0; v < vc; ++v) {
    Rational prior = g.variants.empty() ? Rational(1) : g.variants[v].prior;
    for (const auto& [w, weight] : enumerate_worlds(g, v)) {
      std::vector<int> choices;
      for (const Strategy& s : prof) choices.push_back(s.eval(w.bits, v));
      auto pay = total_payoff(g, w, choices);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += prior * weight * pay[p];
    }
  }
  return acc;
}

// Naive double-loop Nash oracle: for every joint profile over the given
// spaces, test every unilateral deviation with the naive evaluator.
inline std::vector<std::vector<Strategy>> naive_nash(const Game& g,
                                                     const std::vector<std::vector<Strategy>>& spaces) {
  std::vector<std::vector<Strategy>> result;
  std::vector<std::size_t> idx(spaces.size(), 0);
  for (;;) {
    std::vector<Strategy> prof;
    for (std::size_t p = 0; p < spaces.size(); ++p) prof.push_back(spaces[p][idx[p]]);
    auto val = naive_expected(g, prof);
    bool nash = true;
    for (std::size_t p = 0; p < spaces.size() && nash; ++p) {
      auto dev = prof;
      for (const Strategy& alt : spaces[p]) {
        dev[p] = alt;
        if (naive_expected(g, dev)[p] > val[p]) { nash = false; break; }
      }
    }
    if (nash) result.push_back(prof);
    std::size_t j = spaces.size();
    while (j > 0) {
      --j;
      if (++idx[j] < spaces[j].size()) break;
      idx[j] = 0;
      if (j == 0) return result;
    }
  }
}

inline std::vector<Rational> rvec(std::vector<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.push_back(Rational(x));
  return out;
}

}  // namespace cig_test

#endif  // CIG_TESTS_FIXTURES_HPP_
