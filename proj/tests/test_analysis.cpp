#include <cmath>

#include "doctest.h"
#include "fekete/analysis.hpp"
#include "support.hpp"

using namespace fekete;

namespace {

constexpr double kLog2Lambda = 0.811370462752;  // log2 of the real root of x^3 - 2x^2 + x - 1

OutRecord record(const char* name, std::uint64_t n) { return out_size_bruteforce(make_builtin(name), {n}); }

}  // namespace

TEST_CASE("loss examples") {
  const auto shift = make_builtin("shift");
  const auto and1d = make_builtin("and1d");
  CHECK(loss(shift, record("shift", 5)).lambda_loss == 0.0);
  CHECK(loss(and1d, record("and1d", 3)).lambda_loss == doctest::Approx(3.0 - std::log2(7.0)).epsilon(1e-14));
  CHECK(loss(and1d, record("and1d", 3)).lambda_loss == doctest::Approx(0.19265).epsilon(1e-4));
  CHECK(loss(and1d, record("and1d", 1)).lambda_loss == 0.0);
  CHECK(loss(and1d, record("and1d", 3)).lambda_bits == loss(and1d, record("and1d", 3)).lambda_loss);
}

TEST_CASE("loss in q-its and bits for a ternary rule") {
  const CellularAutomaton ca(1, 3, {{0}, {1}}, {0, 0, 0, 0, 1, 1, 0, 1, 2});
  const auto rec = out_size_bruteforce(ca, {4});
  const auto l = loss(ca, rec);
  CHECK(l.lambda_loss == doctest::Approx(4.0 - std::log(static_cast<double>(rec.out_size)) / std::log(3.0)));
  CHECK(l.lambda_bits == doctest::Approx(l.lambda_loss * std::log2(3.0)));
}

TEST_CASE("log_q is exact on powers and finite on huge values") {
  CHECK(log_q(pow_big(3, 40), 3) == 40.0);
  CHECK(log_q(pow_big(2, 5000), 2) == 5000.0);
  const double v = log_q(pow_big(2, 5000) + 1, 2);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(5000.0));
}

TEST_CASE("ratio = 1 - loss / volume and loss >= 0") {
  for (const auto& ca : testing::random_rules(20, 41)) {
    for (const auto& rec : out_size_transfer_1d(ca, 30)) {
      const auto l = loss(ca, rec);
      CHECK(l.lambda_loss >= 0.0);
      CHECK(l.ratio >= 0.0);
      CHECK(l.ratio <= 1.0);
      CHECK(std::abs(l.ratio - (1.0 - l.lambda_loss / rec.sides.volume_d())) <= 1e-12);
      CHECK((l.ratio == 1.0) == (l.lambda_loss == 0.0));
    }
  }
}

TEST_CASE("out_table picks methods and records refusals") {
  const auto and1d = make_builtin("and1d");
  const auto rows = out_table(and1d, diagonal_schedule(1, 1, 6));
  REQUIRE(rows.size() == 6);
  CHECK(rows[5].record->out_size == 37);
  CHECK(rows[5].record->method == CountMethod::Transfer1d);

  CountOptions brute;
  brute.method = MethodChoice::BruteForce;
  brute.brute.budget = 64;
  const auto limited = out_table(and1d, diagonal_schedule(1, 4, 6), brute);
  CHECK(limited[0].record->out_size == 12);
  CHECK(limited[1].record->out_size == 21);
  CHECK_FALSE(limited[2].record.has_value());
  CHECK(limited[2].refusal.find("budget") != std::string::npos);

  CountOptions transfer;
  transfer.method = MethodChoice::Transfer;
  CHECK_THROWS(out_table(make_builtin("and2d"), {{1, 1}}, transfer));
  CHECK_THROWS(out_table(and1d, {{1, 1}}));
}

TEST_CASE("check_log_subadditivity finds planted violations") {
  std::map<MultiIndex, BigInt> table{{{1}, 2}, {{2}, 4}, {{3}, 7}, {{4}, 12}};
  CHECK(check_log_subadditivity(table).empty());
  table[{4}] = 15;  // > Out(1) * Out(3) = 14, <= Out(2)^2 = 16
  const auto v = check_log_subadditivity(table);
  REQUIRE(v.size() == 1);
  CHECK((v[0].x == MultiIndex{1} || v[0].x == MultiIndex{3}));
  table[{4}] = 17;  // also > Out(2)^2
  CHECK(check_log_subadditivity(table).size() == 2);
  // Equality is not a violation.
  CHECK(check_log_subadditivity({{{1}, 2}, {{2}, 4}, {{4}, 16}}).empty());
}

TEST_CASE("lambda_estimate examples") {
  SUBCASE("shift") {
    const auto est = lambda_estimate(make_builtin("shift"), diagonal_schedule(1, 1, 200));
    CHECK(est.bracket.lower == 1.0);
    CHECK(est.bracket.upper == 1.0);
    CHECK(est.subadditivity_violations.empty());
  }
  SUBCASE("and1d") {
    const auto est = lambda_estimate(make_builtin("and1d"), diagonal_schedule(1, 1, 400));
    CHECK(est.bracket.contains(kLog2Lambda));
    CHECK(est.bracket.upper < 1.0);
    CHECK(est.subadditivity_violations.empty());
    for (const auto& rec : est.table) CHECK(est.bracket.estimate.running_inf <= rec.ratio);
  }
  SUBCASE("and1d bracket excludes 1 once n = 3 is computed") {
    const auto est = lambda_estimate(make_builtin("and1d"), diagonal_schedule(1, 1, 3));
    CHECK(est.bracket.upper == doctest::Approx(std::log2(7.0) / 3.0));
    CHECK(est.bracket.upper < 0.9358);
  }
  SUBCASE("and2d: running infimum strictly below 1") {
    const auto est = lambda_estimate(make_builtin("and2d"), boxes_below({3, 3}));
    CHECK(est.bracket.estimate.running_inf < 1.0);
    CHECK(est.bracket.upper <= 1.0);
    CHECK(est.bracket.lower >= 0.0);
    CHECK(est.subadditivity_violations.empty());
    CHECK_FALSE(est.partial);
  }
  SUBCASE("refusals mark the estimate partial") {
    CountOptions opts;
    opts.brute.budget = 1 << 11;
    const auto est = lambda_estimate(make_builtin("and2d"), boxes_below({3, 3}), opts);
    CHECK(est.partial);
    CHECK(est.refused == std::vector<MultiIndex>{{3, 3}});
  }
}

TEST_CASE("theorem2_threshold examples") {
  const auto and1d = make_builtin("and1d");
  SUBCASE("K = 1, r = 2, delta = 0.9") {
    const auto report = theorem2_threshold(and1d, 1.0, {2}, 0.9, {64});
    REQUIRE(report.t);
    CHECK(*report.t == MultiIndex{30});
    CHECK(report.inequality_verified);
    CHECK(report.checked_region.size() == 35);
    // Re-evaluated from scratch by brute force on part of the region.
    for (const auto& x : report.checked_region) {
      if (x[0] > 16) break;
      const auto l = loss(and1d, out_size_bruteforce(and1d, x));
      CHECK(l.lambda_loss >= 3.0);
    }
    for (const auto& x : report.checked_region) {
      const auto l = loss(and1d, out_size_transfer_1d(and1d, x[0]).back());
      CHECK(l.lambda_loss >= boundary_excess(x, {2}, 1.0));
    }
  }
  SUBCASE("K = 0, r = 0 leaves only the ratio condition") {
    // ratios: 1, 1, log2(7)/3 = 0.936, log2(12)/4 = 0.896, then decreasing
    const auto report = theorem2_threshold(and1d, 0.0, {0}, 0.9, {64});
    REQUIRE(report.t);
    CHECK(*report.t == MultiIndex{4});
  }
  SUBCASE("default delta is midway") {
    const auto report = theorem2_threshold(and1d, 1.0, {2}, std::nullopt, {64});
    CHECK(report.delta == doctest::Approx((report.lambda_upper + 1.0) / 2.0));
  }
  SUBCASE("surjective automata are rejected") {
    CHECK_THROWS_AS(theorem2_threshold(make_builtin("shift"), 1.0, {2}, 0.9, {64}), std::invalid_argument);
  }
  SUBCASE("and2d at desk scale") {
    const auto report = theorem2_threshold(make_builtin("and2d"), 0.0, {1, 1}, std::nullopt, {3, 3});
    CHECK(report.losses.size() == 9);
    CHECK_FALSE(report.t.has_value());
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS(theorem2_threshold(and1d, -1.0, {2}, 0.9, {64}));
    CHECK_THROWS(theorem2_threshold(and1d, 1.0, {2}, 1.5, {64}));
    CHECK_THROWS(theorem2_threshold(and1d, 1.0, {2, 2}, 0.9, {64}));
  }
}

TEST_CASE("threshold t is <=_pi-minimal among qualifying boxes in 2D") {
  const auto and2d = make_builtin("and2d");
  const auto report = theorem2_threshold(and2d, 0.0, {0, 0}, 0.99, {3, 3}, {}, true);
  REQUIRE(report.t);
  for (const auto& x : report.checked_region) CHECK(leq_pi(*report.t, x));
  CHECK(report.inequality_verified);
}

TEST_CASE("surjectivity_report examples") {
  SUBCASE("shift") {
    const auto v = surjectivity_report(make_builtin("shift"));
    CHECK(v.verdict == Verdict::ProvedSurjective);
    CHECK_FALSE(v.certificate);
  }
  SUBCASE("and1d") {
    const auto v = surjectivity_report(make_builtin("and1d"));
    REQUIRE(v.verdict == Verdict::Nonsurjective);
    CHECK(v.certificate->pattern.cells == std::vector<State>{1, 0, 1});
    CHECK(v.certificate->code == 5);
    CHECK(verify_orphan(make_builtin("and1d"), *v.certificate));
  }
  SUBCASE("xor1d") { CHECK(surjectivity_report(make_builtin("xor1d")).verdict == Verdict::ProvedSurjective); }
  SUBCASE("and2d with the default budget") {
    const auto v = surjectivity_report(make_builtin("and2d"));
    REQUIRE(v.verdict == Verdict::Nonsurjective);
    CHECK(v.certificate->sides == MultiIndex{2, 3});
    CHECK(v.certificate->code == 42);
    CHECK(verify_orphan(make_builtin("and2d"), *v.certificate));
  }
  SUBCASE("and2d with a small budget is UNKNOWN, never surjective") {
    CountOptions opts;
    opts.brute.budget = 1 << 8;  // |E+N| <= 8 cells
    const auto v = surjectivity_report(make_builtin("and2d"), opts);
    CHECK(v.verdict == Verdict::Unknown);
    const std::vector<MultiIndex> frontier{{1, 3}, {2, 2}, {3, 1}};
    CHECK(v.cleared_frontier == frontier);
  }
  SUBCASE("a surjective 2D rule is only ever UNKNOWN") {
    const CellularAutomaton id2(2, 2, {{0, 0}}, {0, 1}, "identity2d");
    CountOptions opts;
    opts.brute.budget = 1 << 10;
    const auto v = surjectivity_report(id2, opts);
    CHECK(v.verdict == Verdict::Unknown);
    CHECK_FALSE(v.cleared_frontier.empty());
  }
}

TEST_CASE("dichotomy consistency on the 1D corpus") {
  for (const auto& ca : testing::random_rules(30, 77)) {
    const auto v = surjectivity_report(ca);
    REQUIRE(v.verdict != Verdict::Unknown);
    const auto counts = out_size_transfer_1d(ca, 12);
    bool any_loss = false;
    for (const auto& rec : counts) {
      const double l = loss(ca, rec).lambda_loss;
      if (v.verdict == Verdict::ProvedSurjective) CHECK(l == 0.0);
      any_loss = any_loss || l > 0.0;
    }
    if (v.verdict == Verdict::Nonsurjective) CHECK(any_loss);
  }
}
