#include "doctest.h"

#include <algorithm>
#include <set>

#include "cig/equilibria.hpp"
#include "fixtures.hpp"

using namespace cig;
using namespace cig_test;

namespace {

std::set<std::string> profile_strings(const EquilibriumSet& eqs, const Game& g) {
  std::set<std::string> out;
  for (const auto& p : eqs.profiles) out.insert(format_profile(p, g));
  return out;
}

}  // namespace

TEST_CASE("Table 1 has exactly the five Nash profiles") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto eqs = enumerate_nash(g, k, false);
  CHECK(eqs.profiles.size() == 5);
  auto got = profile_strings(eqs, g);
  std::set<std::string> want = {
      "⟨M,C⟩",
      "⟨a?T:B,c?L:R⟩", "⟨a?T:B,c?R:L⟩",
      "⟨a?B:T,c?L:R⟩", "⟨a?B:T,c?R:L⟩"};
  CHECK(got == want);
  for (std::size_t i = 0; i < eqs.profiles.size(); ++i) {
    bool is_mc = format_profile(eqs.profiles[i], g) == "⟨M,C⟩";
    CHECK(eqs.payoffs[i] == (is_mc ? rvec({2, 2}) : rvec({4, 4})));
  }
}

TEST_CASE("best response values from Table 1") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  // Carol fixed at C: Alice's best value is 2, via M.
  auto prof = parse_profile("<M,C>", g);
  auto br = best_response(g, k, 0, prof);
  CHECK(br.value == Rational(2));
  REQUIRE(br.argset.size() == 1);
  CHECK(format_strategy(br.argset[0], g) == "M");

  // Carol knowing a, Alice fixed at a?T:B: Carol reaches 8 via a?L:R.
  auto k2 = k;
  k2.grant(1, 0);
  auto br2 = best_response(g, k2, 1, parse_profile("<a?T:B,C>", g));
  CHECK(br2.value == Rational(8));
  REQUIRE(br2.argset.size() == 1);
  CHECK(format_strategy(br2.argset[0], g) == "a?L:R");
}

TEST_CASE("is_nash on Table 1") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  CHECK(is_nash(g, k, parse_profile("<M,C>", g)));
  CHECK(!is_nash(g, k, parse_profile("<T,L>", g)));
  CHECK(is_nash(g, k, parse_profile("<a?T:B,c?L:R>", g)));
  auto k2 = k;
  k2.grant(1, 0);
  CHECK(!is_nash(g, k2, parse_profile("<a?T:B,c?L:R>", g)));
}

TEST_CASE("after sharing a the unique quotiented equilibrium is <M,C>") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  k.grant(1, 0);
  auto eqs = enumerate_nash(g, k, true);
  REQUIRE(eqs.profiles.size() == 1);
  CHECK(format_profile(eqs.profiles[0], g) == "⟨M,C⟩");
  CHECK(eqs.payoffs[0] == rvec({2, 2}));
}

TEST_CASE("quotient of the base game groups the four secret profiles") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto eqs = enumerate_nash(g, k, true);
  REQUIRE(eqs.profiles.size() == 2);
  std::multiset<int> sizes(eqs.class_sizes.begin(), eqs.class_sizes.end());
  CHECK(sizes == std::multiset<int>{1, 4});
}

TEST_CASE("quotient soundness on Table 1: every class member is Nash") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto all = enumerate_nash(g, k, false);
  // Rebuild each profile's equivalents and check them directly.
  for (const char* a : {"a?T:B", "a?B:T"})
    for (const char* c : {"c?L:R", "c?R:L"}) {
      auto prof = parse_profile(std::string("<") + a + "," + c + ">", g);
      CHECK(is_nash(g, k, prof));
    }
}

TEST_CASE("enumerate_nash agrees with the naive double-loop oracle") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  std::vector<std::vector<Strategy>> spaces = {
      enumerate_strategies(3, {0}, {}, 0),
      enumerate_strategies(3, {1}, {}, 1)};
  auto oracle = naive_nash(g, spaces);
  auto fast = enumerate_nash(g, k, false);
  std::set<std::string> o, f;
  for (const auto& p : oracle) o.insert(format_profile(p, g));
  for (const auto& p : fast.profiles) f.insert(format_profile(p, g));
  CHECK(o == f);
}

TEST_CASE("payoff dominance on Table 1 picks the four (4,4) profiles") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto dom = payoff_dominant(enumerate_nash(g, k, false));
  CHECK(dom.profiles.size() == 4);
  for (const auto& v : dom.payoffs) CHECK(v == rvec({4, 4}));
}

TEST_CASE("payoff dominance returns empty on incomparable vectors") {
  // Synthetic two-equilibrium shape: vectors (3,1) and (1,3).
  EquilibriumSet eqs;
  eqs.profiles.resize(2);
  eqs.payoffs = {rvec({3, 1}), rvec({1, 3})};
  CHECK(payoff_dominant(eqs).profiles.empty());
}

TEST_CASE("dominance antisymmetry: nonempty dominant sets share one vector") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto dom = payoff_dominant(enumerate_nash(g, k, false));
  REQUIRE(!dom.payoffs.empty());
  for (const auto& v : dom.payoffs) CHECK(v == dom.payoffs[0]);
}

TEST_CASE("budget exceeded names the required count") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  CHECK_THROWS_WITH_AS(enumerate_nash(g, k, false, 10), doctest::Contains("81"), Error);
}

TEST_CASE("argmax invariance under positive scaling of one player's cells") {
  Game g = privacy_game();
  Game scaled = g;
  for (auto& row : scaled.base_contexts[0].cells)
    for (auto& cell : row) cell.row = cell.row * Rational(7, 3);
  auto k = KnowledgeState::own_secrets(g);
  auto e1 = enumerate_nash(g, k, false);
  auto e2 = enumerate_nash(scaled, k, false);
  CHECK(profile_strings(e1, g) == profile_strings(e2, scaled));
  auto d1 = payoff_dominant(e1);
  auto d2 = payoff_dominant(e2);
  CHECK(profile_strings(d1, g) == profile_strings(d2, scaled));
}

TEST_CASE("linearity: scaling every cell scales expected payoffs") {
  Game g = privacy_game();
  Game scaled = g;
  Rational lambda(5, 2);
  for (auto& row : scaled.base_contexts[0].cells)
    for (auto& cell : row) { cell.row = cell.row * lambda; cell.col = cell.col * lambda; }
  auto k = KnowledgeState::own_secrets(g);
  for (const char* text : {"<a?T:B,c?L:R>", "<M,C>", "<a?T:M,c?C:R>"}) {
    auto prof = parse_profile(text, g);
    auto base = expected_payoff(g, k, prof);
    auto big = expected_payoff(scaled, k, prof);
    for (std::size_t p = 0; p < base.size(); ++p) CHECK(big[p] == lambda * base[p]);
  }
}

TEST_CASE("branch-swap invariance when nobody else reads the bit") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto prof = parse_profile("<a?T:B,c?L:R>", g);
  auto swapped = parse_profile("<a?B:T,c?L:R>", g);
  CHECK(expected_payoff(g, k, prof) == expected_payoff(g, k, swapped));
}
