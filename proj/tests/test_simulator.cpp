#include <doctest.h>

#include <cmath>

#include "serve_order/compare.hpp"
#include "serve_order/match.hpp"
#include "serve_order/simulator.hpp"
#include "support.hpp"

using namespace serve_order;

TEST_SUITE("rng") {
  TEST_CASE("streams are reproducible and distinct") {
    Rng a(123, 0), b(123, 0), c(123, 1), d(124, 0);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
  }

  TEST_CASE("uniform stays in [0, 1)") {
    Rng r(5);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
    }
  }
}

TEST_SUITE("simulate_match") {
  TEST_CASE("a perfect server against a hopeless one") {
    Rng rng(1);
    const MatchOutcome m = simulate_match(ServeParams(1.0, 0.0), Player::A, rng);
    CHECK(m.winner == Player::A);
    REQUIRE(m.sets.size() == 2);
    CHECK(m.sets[0].a_games() == 6);
    CHECK(m.sets[0].b_games() == 0);
    CHECK(m.sets[1].a_games() == 6);
    CHECK(m.sets[1].b_games() == 0);
    CHECK(m.total_games == 12);
    CHECK(m.margin == 12);
    CHECK(m.sets_started_by_a == 2);
  }

  TEST_CASE("structural invariants hold on every trajectory") {
    Rng rng(8);
    for (int i = 0; i < 20000; ++i) {
      const MatchOutcome m = simulate_match(ServeParams(0.62, 0.58), i % 2 ? Player::A : Player::B, rng);
      int total = 0, margin = 0, by_a = 0;
      for (std::size_t k = 0; k < m.sets.size(); ++k) {
        const PlayedSet& s = m.sets[k];
        REQUIRE(is_terminal(s.score));
        if (k > 0) REQUIRE(s.first_server == next_set_server(m.sets[k - 1].first_server, m.sets[k - 1].score.total()));
        total += s.score.total();
        margin += s.a_games() - s.b_games();
        by_a += s.first_server == Player::A;
      }
      REQUIRE(total == m.total_games);
      REQUIRE(margin == m.margin);
      REQUIRE(by_a == m.sets_started_by_a);
      // every lost service game ends on an unsaved break point
      REQUIRE(m.stats_a.service_games_lost == m.stats_a.break_points_faced - m.stats_a.break_points_saved);
      REQUIRE(m.stats_b.service_games_lost == m.stats_b.break_points_faced - m.stats_b.break_points_saved);
    }
  }
}

TEST_SUITE("tally") {
  TEST_CASE("config validation") {
    CHECK_THROWS_AS(tally(SimConfig{ServeParams(0.6, 0.6), Player::A, 0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(tally(SimConfig{ServeParams(0.6, 0.6), Player::A, 10, 1, 0}), std::invalid_argument);
  }

  TEST_CASE("equal configs give equal tallies") {
    const SimConfig cfg{ServeParams(0.66, 0.61), Player::B, 20000, 42, 3};
    const SimTally a = tally(cfg);
    const SimTally b = tally(cfg);
    CHECK(a == b);
    CHECK(a.n_matches == 20000);
    std::uint64_t sum = 0;
    for (const auto& [key, c] : a.outcome_counts) sum += c;
    CHECK(sum == 20000);
  }

  TEST_CASE("a different seed changes the tally") {
    const SimTally a = tally(SimConfig{ServeParams(0.66, 0.61), Player::A, 5000, 1, 1});
    const SimTally b = tally(SimConfig{ServeParams(0.66, 0.61), Player::A, 5000, 2, 1});
    CHECK_FALSE(a == b);
  }

  TEST_CASE("degenerate parameters give a single outcome") {
    const SimTally t = tally(SimConfig{ServeParams(1.0, 0.0), Player::B, 1000, 3, 2});
    REQUIRE(t.outcome_counts.size() == 1);
    CHECK(t.frequency(t.outcome_counts.begin()->second) == 1.0);
  }

  TEST_CASE("first-set scores at (0.65, 0.60) match the exact law") {
    const ServeParams params(0.65, 0.60);
    const SimTally t = tally(SimConfig{params, Player::A, 1'000'000, 7, 1});
    const auto exact = set_score_distribution(SetModel::from(params), Player::A);
    for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
      const double p = exact.at(i);
      CHECK(test_support::within_sigmas(t.first_set_frequency(kTerminalScores[i]), p, proportion_se(p, t.n_matches)));
    }
  }

  TEST_CASE("expected total at (0.70, 0.60) with A serving first") {
    const ServeParams params(0.70, 0.60);
    const SimTally t = tally(SimConfig{params, Player::A, 1'000'000, 11, 1});
    const auto m = match_expectations(SetModel::from(params));
    CHECK(test_support::within_sigmas(t.mean_total(), m.t_match_a, t.se_total()));
    CHECK(test_support::within_sigmas(t.mean_margin(), m.h_match_a, t.se_margin()));
  }
}

TEST_SUITE("compare_with_analytic") {
  TEST_CASE("rows line up with the tally and the engine") {
    const ServeParams params(0.68, 0.62);
    const SimTally t = tally(SimConfig{params, Player::B, 100'000, 3, 2});
    const auto rows = compare_with_analytic(t, params, Player::B, {19.5, 21.5});
    const auto find = [&](const std::string& q) {
      for (const Comparison& c : rows) {
        if (c.quantity == q) return c;
      }
      FAIL("missing " << q);
      return Comparison{};
    };
    CHECK(rows.size() == 14 + 8 + 2 + 5 + 2);
    const auto exact = set_score_distribution(SetModel::from(params), Player::B);
    const Comparison s64 = find("first_set_score_6-4");
    CHECK(s64.analytic == exact[SetScore{6, 4}]);
    CHECK(s64.simulated == t.first_set_frequency(SetScore{6, 4}));
    const auto dist = match_distribution(SetModel::from(params), Player::B);
    const Comparison total = find("match_total_games");
    CHECK(total.analytic == doctest::Approx(dist.expected_total()).epsilon(1e-12));
    CHECK(total.se == t.se_total());
    const Comparison over = find("over_21.5");
    CHECK(over.analytic == doctest::Approx(over_line_prob(dist, 21.5).value()).epsilon(1e-12));
    for (const Comparison& c : rows) {
      INFO(c.quantity);
      if (c.se > 0) CHECK(c.z == doctest::Approx((c.simulated - c.analytic) / c.se).epsilon(1e-9));
      CHECK(std::abs(c.z) <= 4.0);
    }
  }

  TEST_CASE("boundary parameters are rejected") {
    const ServeParams params(1.0, 0.0);
    const SimTally t = tally(SimConfig{params, Player::A, 10, 1, 1});
    CHECK_THROWS_AS(compare_with_analytic(t, params, Player::A, {19.5}), std::domain_error);
  }
}
