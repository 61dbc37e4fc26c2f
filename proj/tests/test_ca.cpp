#include "doctest.h"
#include "fekete/ca.hpp"
#include "support.hpp"

using namespace fekete;

TEST_CASE("apply_local on the builtin examples") {
  const auto shift = make_builtin("shift");
  const auto and1d = make_builtin("and1d");
  CHECK(shift.apply_local(std::vector<State>{1}) == 1);
  CHECK(and1d.apply_local(std::vector<State>{1, 0}) == 0);
  CHECK(and1d.apply_local(std::vector<State>{1, 1}) == 1);
  CHECK_THROWS_AS(and1d.apply_local(std::vector<State>{2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(and1d.apply_local(std::vector<State>{1}), std::invalid_argument);
}

TEST_CASE("builtins") {
  const auto and2d = make_builtin("and2d");
  CHECK(and2d.dimension() == 2);
  CHECK(and2d.neighborhood_size() == 3);
  CHECK(make_builtin("xor1d").apply_local(std::vector<State>{1, 1}) == 0);
  CHECK_THROWS_AS(make_builtin("rule30"), std::invalid_argument);
}

TEST_CASE("automaton invariants are validated") {
  CHECK_THROWS(CellularAutomaton(1, 1, {{0}}, {0}));
  CHECK_THROWS(CellularAutomaton(1, 2, {{0}, {0}}, {0, 0, 0, 0}));
  CHECK_THROWS(CellularAutomaton(1, 2, {{0}, {1}}, {0, 0, 0}));
  CHECK_THROWS(CellularAutomaton(1, 2, {{0}, {1}}, {0, 0, 0, 2}));
  CHECK_THROWS(CellularAutomaton(1, 2, {}, {0}));
  CHECK_THROWS(CellularAutomaton(2, 2, {{0}}, {0, 1}));
}

TEST_CASE("rule table round-trips through the canonical encoding") {
  for (const auto& ca : testing::random_rules(20, 3)) {
    const State q = ca.state_count();
    const std::size_t n = ca.neighborhood_size();
    for (std::size_t index = 0; index < ca.rule_table().size(); ++index) {
      std::vector<State> tuple(n);
      std::size_t rest = index;
      for (std::size_t i = n; i-- > 0;) {
        tuple[i] = static_cast<State>(rest % q);
        rest /= q;
      }
      CHECK(ca.rule_index(tuple) == index);
      CHECK(ca.apply_local(tuple) == ca.rule_table()[index]);
    }
  }
}

TEST_CASE("minkowski_sum") {
  SUBCASE("interval") {
    const auto s = minkowski_sum(anchored_box({3}), std::vector<Offset>{{0}, {1}});
    CHECK(s.size() == 4);
    CHECK(s.hull == RightPolytope{{0}, {4}});
  }
  SUBCASE("2x2 with an L-shaped neighbourhood is exact, not its hull") {
    const auto s = minkowski_sum(anchored_box({2, 2}), std::vector<Offset>{{0, 0}, {1, 0}, {0, 1}});
    const std::vector<Offset> expected{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}};
    CHECK(s.cells == expected);
    CHECK(s.hull == RightPolytope{{0, 0}, {3, 3}});
    CHECK_FALSE(s.index_of({2, 2}).has_value());
  }
  SUBCASE("identity offset") {
    const RightPolytope box{{-1, 4}, {2, 3}};
    const auto s = minkowski_sum(box, std::vector<Offset>{{0, 0}});
    CHECK(s.cells == box.cells());
    CHECK(s.hull == box);
  }
}

TEST_CASE("bounding_sides") {
  CHECK(bounding_sides(std::vector<Offset>{{0}, {1}}) == MultiIndex{2});
  CHECK(bounding_sides(std::vector<Offset>{{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {0, 0}}) == MultiIndex{3, 3});
  CHECK(bounding_sides(std::vector<Offset>{{1}}) == MultiIndex{1});
}

TEST_CASE("translate_support") {
  CHECK(translate_support({{0}, {3}}, {5}) == RightPolytope{{5}, {3}});
  CHECK(translate_support({{2, 7}, {1, 4}}, {0, 0}) == RightPolytope{{2, 7}, {1, 4}});
  CHECK(translate_support({{0, 0}, {2, 2}}, {-1, 3}) == RightPolytope{{-1, 3}, {2, 2}});
  CHECK_THROWS(translate_support({{0}, {3}}, {1, 1}));
}

namespace {

CellPattern input_for(const CellularAutomaton& ca, const RightPolytope& box, std::vector<State> states) {
  return {minkowski_sum(box, ca.neighborhood()), std::move(states)};
}

}  // namespace

TEST_CASE("induced_map") {
  const auto and1d = make_builtin("and1d");
  const auto box = anchored_box({3});
  SUBCASE("AND on 1011") {
    const auto out = induced_map(and1d, box, input_for(and1d, box, {1, 0, 1, 1}));
    CHECK(out.cells == std::vector<State>{0, 0, 1});
  }
  SUBCASE("AND on all ones") {
    const auto out = induced_map(and1d, anchored_box({5}), input_for(and1d, anchored_box({5}), std::vector<State>(6, 1)));
    CHECK(out.cells == std::vector<State>(5, 1));
  }
  SUBCASE("shift copies its input") {
    const auto shift = make_builtin("shift");
    const auto in = input_for(shift, anchored_box({4}), {1, 1, 0, 1});
    CHECK(in.support.cells.front() == Offset{1});
    CHECK(induced_map(shift, anchored_box({4}), in).cells == std::vector<State>{1, 1, 0, 1});
  }
  SUBCASE("support mismatch is rejected") {
    CHECK_THROWS_AS(induced_map(and1d, box, input_for(and1d, anchored_box({2}), {1, 0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(induced_map(and1d, box, input_for(and1d, box, {1, 0, 1})), std::invalid_argument);
  }
}

TEST_CASE("shift: induced map is a bijection onto Q^E") {
  const auto shift = make_builtin("shift");
  for (std::uint64_t k = 1; k <= 8; ++k) {
    const auto box = anchored_box({k});
    std::set<std::vector<State>> images;
    for (std::uint64_t code = 0; code < (1u << k); ++code) {
      const auto in = Pattern::from_code(box, 2, code);
      images.insert(induced_map(shift, box, {minkowski_sum(box, shift.neighborhood()), in.cells}).cells);
    }
    CHECK(images.size() == (1u << k));
  }
}

TEST_CASE("pattern codes round-trip on every support of volume <= 16") {
  for (std::uint64_t v = 1; v <= 16; ++v) {
    const RightPolytope box{{0}, {v}};
    for (std::uint64_t code = 0; code < (1u << v); ++code) {
      const auto p = Pattern::from_code(box, 2, code);
      REQUIRE(p.code(2) == code);
    }
  }
  const RightPolytope square{{3, -2}, {4, 4}};
  for (std::uint64_t code = 0; code < (1u << 16); code += 1) {
    REQUIRE(Pattern::from_code(square, 2, code).code(2) == code);
  }
  const RightPolytope ternary{{0, 0}, {2, 4}};
  for (std::uint64_t code = 0; code < 6561; ++code) {
    REQUIRE(Pattern::from_code(ternary, 3, code).code(3) == code);
  }
  CHECK(Pattern::from_code(anchored_box({3}), 2, 5).cells == std::vector<State>{1, 0, 1});
  CHECK_THROWS(Pattern::from_code(anchored_box({3}), 2, 8));
}
