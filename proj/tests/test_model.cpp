#include "doctest.h"

#include "cig/equilibria.hpp"
#include "cig/model.hpp"
#include "fixtures.hpp"

using namespace cig;
using namespace cig_test;

TEST_CASE("total payoff sums the contexts a player participates in") {
  Game g = privacy_game();
  World w{0, 0};
  auto pay = total_payoff(g, w, std::vector<std::string>{"M", "C"});
  CHECK(pay == rvec({2, 2}));
  pay = total_payoff(g, w, std::vector<std::string>{"T", "L"});
  CHECK(pay == rvec({0, 8}));
  CHECK_THROWS_AS(total_payoff(g, w, std::vector<std::string>{"X", "L"}), Error);
}

TEST_CASE("world enumeration weights sum to one") {
  Game g = privacy_game();
  Rational sum(0);
  for (const auto& [w, weight] : enumerate_worlds(g, 0)) sum += weight;
  CHECK(sum == Rational(1));
}

TEST_CASE("expected payoff of the secret profile on the base game") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  auto prof = parse_profile("⟨a?T:B,c?L:R⟩", g);
  CHECK(expected_payoff(g, k, prof) == rvec({4, 4}));
  prof = parse_profile("<M,C>", g);
  CHECK(expected_payoff(g, k, prof) == rvec({2, 2}));
}

TEST_CASE("expected payoff rejects conditioning on unknown bits") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  // Carol conditioning on Alice's secret without knowing it.
  auto prof = parse_profile("<M,a?L:R>", g);
  CHECK_THROWS_AS(expected_payoff(g, k, prof), Error);
  k.grant(1, 0);
  CHECK(expected_payoff(g, k, prof)[0] == Rational(2));
}

TEST_CASE("expected payoff agrees with direct world summation") {
  Game g = privacy_game();
  auto k = KnowledgeState::own_secrets(g);
  for (const char* text : {"<a?T:B,c?L:R>", "<a?T:M,c?C:R>", "<B,c?R:L>", "<M,C>"}) {
    auto prof = parse_profile(text, g);
    CHECK(expected_payoff(g, k, prof) == naive_expected(g, prof));
  }
}
