#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <algorithm>

#include "glab/finite_groupoid.hpp"

using namespace glab;

static bool has_axiom(const std::vector<AxiomViolation>& v, const std::string& name) {
  return std::any_of(v.begin(), v.end(),
                     [&](const AxiomViolation& a) { return a.axiom == name; });
}

TEST_CASE("pair groupoid satisfies every axiom") {
  auto g = pair_groupoid(5);
  CHECK(g.n_arrows == 25);
  CHECK(g.units.size() == 5);
  CHECK(validate_groupoid(g).empty());
  CHECK(is_pair_groupoid(g));

  // (a,b)*(b,c) = (a,c); anything else undefined
  CHECK(g.compose(pair_arrow(5, 1, 2), pair_arrow(5, 2, 4)) == pair_arrow(5, 1, 4));
  CHECK(g.compose(pair_arrow(5, 1, 2), pair_arrow(5, 3, 4)) == -1);
  CHECK(g.inv[pair_arrow(5, 1, 2)] == pair_arrow(5, 2, 1));
  CHECK(g.src[pair_arrow(5, 1, 2)] == pair_arrow(5, 2, 2));
  CHECK(g.tgt[pair_arrow(5, 1, 2)] == pair_arrow(5, 1, 1));
}

TEST_CASE("cyclic group as a one-unit groupoid") {
  auto g = cyclic_group_groupoid(6);
  CHECK(g.n_arrows == 6);
  CHECK(g.units == std::vector<int>{0});
  CHECK(validate_groupoid(g).empty());
  for (int a = 0; a < 6; ++a) CHECK(g.inv[a] == (6 - a) % 6);
  CHECK(g.compose(4, 5) == 3);
  CHECK_FALSE(is_pair_groupoid(g));
}

TEST_CASE("disjoint union keeps components separated") {
  auto g = disjoint_union(pair_groupoid(3), cyclic_group_groupoid(4));
  CHECK(g.n_arrows == 13);
  CHECK(g.units.size() == 4);
  CHECK(validate_groupoid(g).empty());
  // cross-component compositions are undefined
  for (int x = 0; x < 9; ++x)
    for (int y = 9; y < 13; ++y) {
      CHECK(g.compose(x, y) == -1);
      CHECK(g.compose(y, x) == -1);
    }
}

TEST_CASE("tampered tables are reported with the right law name") {
  SUBCASE("broken inverse") {
    auto g = pair_groupoid(3);
    g.inv[pair_arrow(3, 0, 1)] = pair_arrow(3, 0, 1);
    auto v = validate_groupoid(g);
    CHECK_FALSE(v.empty());
    CHECK((has_axiom(v, "inverse_src_tgt") || has_axiom(v, "inverse_right") ||
           has_axiom(v, "inverse_left")));
  }
  SUBCASE("broken composition target") {
    auto g = pair_groupoid(3);
    g.comp[std::int64_t(pair_arrow(3, 0, 1)) * 9 + pair_arrow(3, 1, 2)] = pair_arrow(3, 1, 2);
    auto v = validate_groupoid(g);
    CHECK((has_axiom(v, "compose_src_tgt") || has_axiom(v, "associativity") ||
           has_axiom(v, "unit_identity")));
  }
  SUBCASE("missing composition") {
    auto g = pair_groupoid(3);
    g.comp[std::int64_t(pair_arrow(3, 0, 1)) * 9 + pair_arrow(3, 1, 2)] = -1;
    CHECK(has_axiom(validate_groupoid(g), "compose_defined"));
  }
  SUBCASE("composition defined where sources do not match") {
    auto g = pair_groupoid(3);
    g.comp[std::int64_t(pair_arrow(3, 0, 1)) * 9 + pair_arrow(3, 0, 2)] = pair_arrow(3, 0, 2);
    CHECK(has_axiom(validate_groupoid(g), "compose_domain"));
  }
  SUBCASE("nonpositive fiber weight") {
    auto g = pair_groupoid(3);
    g.haar[1] = RatWeight{-1, 2};
    CHECK(has_axiom(validate_groupoid(g), "haar_positive"));
  }
  SUBCASE("weight not constant along a transitive component") {
    auto g = pair_groupoid(3);
    g.haar[1] = RatWeight{2, 1};
    CHECK(has_axiom(validate_groupoid(g), "haar_invariant"));
  }
  SUBCASE("unit moved off itself") {
    auto g = cyclic_group_groupoid(4);
    g.src[0] = 1;
    auto v = validate_groupoid(g);
    CHECK(has_axiom(v, "unit_fixed"));
  }
  SUBCASE("empty groupoid is rejected outright") {
    FiniteGroupoid g;
    CHECK_THROWS_AS(validate_groupoid(g), std::invalid_argument);
  }
}

TEST_CASE("fiber lists partition the arrows") {
  auto g = disjoint_union(pair_groupoid(4), cyclic_group_groupoid(3));
  auto sf = source_fibers(g);
  auto tf = target_fibers(g);
  REQUIRE(sf.size() == g.units.size());
  int total = 0;
  for (size_t k = 0; k < sf.size(); ++k) {
    total += int(sf[k].size());
    for (int x : sf[k]) CHECK(g.src[x] == g.units[k]);
  }
  CHECK(total == g.n_arrows);
  for (size_t k = 0; k < tf.size(); ++k)
    for (int x : tf[k]) CHECK(g.tgt[x] == g.units[k]);
  // pair component: every source fiber has 4 arrows
  CHECK(sf[0].size() == 4);
}

TEST_CASE("json round trip preserves all tables") {
  auto g = disjoint_union(pair_groupoid(3), cyclic_group_groupoid(5));
  g.haar[3] = RatWeight{1, 5};  // cyclic component gets normalized counting weight
  auto h = groupoid_from_json(groupoid_to_json(g));
  CHECK(h.n_arrows == g.n_arrows);
  CHECK(h.src == g.src);
  CHECK(h.tgt == g.tgt);
  CHECK(h.inv == g.inv);
  CHECK(h.units == g.units);
  CHECK(h.comp == g.comp);
  REQUIRE(h.haar.size() == g.haar.size());
  for (size_t k = 0; k < g.haar.size(); ++k) CHECK(h.haar[k].value() == g.haar[k].value());
  CHECK(validate_groupoid(h).empty());
}
