#include "doctest.h"

#include <set>

#include "cig/strategy.hpp"
#include "fixtures.hpp"

using namespace cig;
using namespace cig_test;

TEST_CASE("strategy text parses to the flat table") {
  Game g = privacy_game();
  Strategy m = parse_strategy("M", g, 0);
  CHECK(m.deps.empty());
  CHECK(m.table == std::vector<std::uint8_t>{1});

  Strategy q = parse_strategy("a?T:B", g, 0);
  CHECK(q.deps == std::vector<int>{0});
  CHECK(q.table == std::vector<std::uint8_t>{2, 0});  // a=0 -> B, a=1 -> T

  Strategy ws = parse_strategy("  a ? T : B ", g, 0);
  CHECK(same_function(q, ws));
}

TEST_CASE("nested conditionals compile to the flat form") {
  Game g = privacy_game();
  // Give Alice a second conditioning bit by letting her know Carol's c.
  Strategy r = parse_strategy("c?M:a?T:B", g, 0);
  CHECK(r.deps == std::vector<int>{0, 1});
  // valuation order: (a,c) = 00,10,01,11 -> B,T,M,M
  CHECK(r.table == std::vector<std::uint8_t>{2, 0, 1, 1});
  CHECK(format_strategy(r, g) == "c?M:a?T:B");
}

TEST_CASE("parse errors carry a position") {
  Game g = privacy_game();
  CHECK_THROWS_WITH_AS(parse_strategy("a?T", g, 0), doctest::Contains("position"), Error);
  CHECK_THROWS_AS(parse_strategy("z?T:B", g, 0), Error);
  CHECK_THROWS_AS(parse_strategy("a?T:B extra", g, 0), Error);
  CHECK_THROWS_AS(parse_strategy("L", g, 0), Error);  // Carol's label, not Alice's
}

TEST_CASE("format then parse is the identity on all tables up to 2 bits") {
  Game g = privacy_game();
  // One bit.
  for (const Strategy& s : enumerate_strategies(3, {0}, {}, 0)) {
    Strategy back = parse_strategy(format_strategy(s, g), g, 0);
    CHECK(same_function(s, back));
  }
  // Two bits (Alice conditioned on a and c).
  auto all2 = enumerate_strategies(3, {0, 1}, {}, 0);
  CHECK(all2.size() == 81);
  for (const Strategy& s : all2) {
    Strategy back = parse_strategy(format_strategy(s, g), g, 0);
    CHECK(same_function(s, back));
  }
}

TEST_CASE("enumeration counts follow c^(2^s)") {
  CHECK(strategy_count(3, 0) == 3);
  CHECK(strategy_count(3, 1) == 9);
  CHECK(strategy_count(3, 2) == 81);
  CHECK(enumerate_strategies(3, {}, {}, 0).size() == 3);
  CHECK(enumerate_strategies(3, {0}, {}, 0).size() == 9);
  // Distinct and canonically ordered.
  auto one = enumerate_strategies(3, {0}, {}, 0);
  std::set<std::vector<std::uint8_t>> tables;
  for (const auto& s : one) tables.insert(s.table);
  CHECK(tables.size() == 9);
  for (std::size_t i = 1; i < one.size(); ++i)
    CHECK(one[i - 1].canonical_index(3) < one[i].canonical_index(3));
}

TEST_CASE("observational equivalence matches the secret-swap examples") {
  Game g = privacy_game();
  Strategy q = parse_strategy("a?T:B", g, 0);
  Strategy qq = parse_strategy("a?B:T", g, 0);
  // Observer without a: equivalent; with a: distinguishable.
  CHECK(observationally_equivalent(q, qq, 0u, false));
  CHECK(!observationally_equivalent(q, qq, 1u << 0, false));
  Strategy m = parse_strategy("M", g, 0);
  CHECK(observationally_equivalent(m, m, 0u, false));
  CHECK(!observationally_equivalent(m, q, 0u, false));
}

TEST_CASE("equivalence classes of the nine one-secret strategies") {
  Game g = privacy_game();
  auto nine = enumerate_strategies(3, {0}, {}, 0);
  auto cls = equivalence_classes(nine, 0u, false, 3);
  CHECK(cls.members.size() == 6);
  std::multiset<std::size_t> sizes;
  for (const auto& m : cls.members) sizes.insert(m.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 1, 2, 2, 2});

  auto cls_known = equivalence_classes(nine, 1u << 0, false, 3);
  CHECK(cls_known.members.size() == 9);

  auto empty = equivalence_classes({}, 0u, false, 3);
  CHECK(empty.members.empty());
}
