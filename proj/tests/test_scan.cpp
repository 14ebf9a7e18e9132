#include <doctest.h>

#include <cmath>

#include "serve_order/match.hpp"
#include "serve_order/scan.hpp"

using namespace serve_order;

TEST_CASE("grid layout") {
  ScanSpec spec;
  spec.p_min = 0.5;
  spec.p_max = 0.7;
  spec.step = 0.01;
  const auto axis = grid_axis(spec);
  REQUIRE(axis.size() == 21);
  CHECK(axis.front() == 0.5);
  CHECK(axis.back() == 0.7);
  CHECK(axis[7] == 0.57);
  const auto pts = grid_points(spec);
  CHECK(pts.size() == 21 * 22 / 2);
  for (const auto& p : pts) REQUIRE(p.p_b <= p.p_a);
}

TEST_CASE("scan bounds validation") {
  ScanSpec s;
  s.step = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = ScanSpec{};
  s.p_min = 0.8;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = ScanSpec{};
  s.lines = {20.0};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = ScanSpec{};
  s.p_max = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("diagonal totals differences vanish") {
  ScanSpec spec;
  spec.step = 0.05;
  for (const auto& r : scan_expectations(spec)) {
    if (r.at.p_a == r.at.p_b) {
      REQUIRE(std::abs(r.match_totals_diff()) < 1e-12);
      REQUIRE(std::abs(r.set_totals_diff()) < 1e-12);
    }
  }
  for (const auto& r : scan_overline(spec).rows) {
    if (r.at.p_a == r.at.p_b) {
      for (std::size_t i = 0; i < spec.lines.size(); ++i) REQUIRE(std::abs(r.diff(i)) < 1e-12);
    }
  }
}

TEST_CASE("threaded scans equal serial scans") {
  ScanSpec spec;
  spec.step = 0.02;
  const auto serial = scan_overline(spec);
  spec.threads = 4;
  const auto threaded = scan_overline(spec);
  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    REQUIRE(serial.rows[i].over_a == threaded.rows[i].over_a);
    REQUIRE(serial.rows[i].over_b == threaded.rows[i].over_b);
  }
  for (std::size_t k = 0; k < spec.lines.size(); ++k) {
    CHECK(serial.summary[k].max_abs_diff == threaded.summary[k].max_abs_diff);
  }
}

TEST_CASE("overline summary is consistent with the rows") {
  ScanSpec spec;
  const auto scan = scan_overline(spec);
  for (std::size_t k = 0; k < spec.lines.size(); ++k) {
    const auto& s = scan.summary[k];
    double mx = 0, sum = 0;
    for (const auto& r : scan.rows) {
      mx = std::max(mx, std::abs(r.diff(k)));
      sum += r.diff(k);
    }
    CHECK(s.max_abs_diff == mx);
    CHECK(s.mean_diff == doctest::Approx(sum / scan.rows.size()));
    CHECK(std::abs(s.diff_at_argmax) == s.max_abs_diff);
  }
  // at (0.70, 0.60) the 19.5 shift is within a hair of the max
  const auto& s195 = scan.summary[1];
  CHECK(s195.line == 19.5);
  CHECK(s195.max_abs_diff == doctest::Approx(0.0884).epsilon(1e-3));
}

TEST_CASE("shift approximation rows") {
  ScanSpec spec;
  spec.step = 0.05;
  const auto rows = scan_shift_approx(spec);
  CHECK_FALSE(rows.empty());
  for (const auto& r : rows) {
    REQUIRE(r.error == doctest::Approx(std::abs(r.exact - r.approx)));
    REQUIRE(r.error == doctest::Approx(shift_approx_error(ServeParams(r.at.p_a, r.at.p_b))));
  }
}
