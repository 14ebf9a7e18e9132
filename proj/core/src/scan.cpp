#include "serve_order/scan.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "serve_order/analytic.hpp"
#include "serve_order/match.hpp"

namespace serve_order {
namespace {

double round12(double v) { return std::round(v * 1e12) / 1e12; }

// Runs fn(i) for i in [0, count) on up to `threads` workers; each index is
// written by exactly one worker, so callers store results by index.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([=, &fn] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
}

}  // namespace

void ScanSpec::validate() const {
  if (!(p_min > 0.0 && p_max < 1.0)) throw std::invalid_argument("grid bounds must lie strictly inside (0, 1)");
  if (p_min > p_max) throw std::invalid_argument("grid minimum exceeds grid maximum");
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  for (double line : lines) {
    if (std::abs(line - std::floor(line) - 0.5) > 1e-9) {
      throw std::invalid_argument("totals lines must be half-integers");
    }
  }
}

std::vector<double> grid_axis(const ScanSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::floor((spec.p_max - spec.p_min) / spec.step + 1e-9));
  std::vector<double> axis;
  axis.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) axis.push_back(round12(spec.p_min + static_cast<double>(i) * spec.step));
  return axis;
}

std::vector<GridPoint> grid_points(const ScanSpec& spec) {
  const std::vector<double> axis = grid_axis(spec);
  std::vector<GridPoint> pts;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) pts.push_back(GridPoint{axis[i], axis[j]});
  }
  return pts;
}

std::vector<ExpectationRow> scan_expectations(const ScanSpec& spec) {
  const std::vector<GridPoint> pts = grid_points(spec);
  std::vector<ExpectationRow> rows(pts.size());
  parallel_for(pts.size(), spec.threads, [&](std::size_t i) {
    const SetModel model = SetModel::from(ServeParams(pts[i].p_a, pts[i].p_b));
    const SetSummary sa = set_summary(set_score_distribution(model, Player::A));
    const SetSummary sb = set_summary(set_score_distribution(model, Player::B));
    const MatchExpectations m = match_expectations(model);
    rows[i] = ExpectationRow{pts[i], sa.t_set, sb.t_set, sa.h_set, sb.h_set,
                             m.t_match_a, m.t_match_b, m.h_match_a, m.h_match_b};
  });
  return rows;
}

OverlineScan scan_overline(const ScanSpec& spec) {
  const std::vector<GridPoint> pts = grid_points(spec);
  OverlineScan scan;
  scan.rows.resize(pts.size());
  parallel_for(pts.size(), spec.threads, [&](std::size_t i) {
    const SetModel model = SetModel::from(ServeParams(pts[i].p_a, pts[i].p_b));
    const MatchOutcomeDistribution a = match_distribution(model, Player::A);
    const MatchOutcomeDistribution b = match_distribution(model, Player::B);
    OverlineRow row{pts[i], {}, {}};
    for (double line : spec.lines) {
      row.over_a.push_back(over_line_prob(a, line).value());
      row.over_b.push_back(over_line_prob(b, line).value());
    }
    scan.rows[i] = std::move(row);
  });

  for (std::size_t k = 0; k < spec.lines.size(); ++k) {
    OverlineSummary s;
    s.line = spec.lines[k];
    double sum = 0;
    bool first = true;
    for (const OverlineRow& row : scan.rows) {
      const double d = row.diff(k);
      sum += d;
      if (first || std::abs(d) > s.max_abs_diff) {
        s.max_abs_diff = std::abs(d);
        s.argmax = row.at;
        s.diff_at_argmax = d;
        first = false;
      }
    }
    s.mean_diff = scan.rows.empty() ? 0.0 : sum / static_cast<double>(scan.rows.size());
    scan.summary.push_back(s);
  }
  return scan;
}

std::vector<ShiftApproxRow> scan_shift_approx(const ScanSpec& spec) {
  constexpr double kCentre = 0.6;
  const std::vector<GridPoint> pts = grid_points(spec);
  std::vector<std::optional<ShiftApproxRow>> slots(pts.size());
  parallel_for(pts.size(), spec.threads, [&](std::size_t i) {
    const double d = pts[i].p_a - pts[i].p_b;
    // Both shifted evaluation points must stay inside (0, 1).
    if (!(kCentre + d < 1.0 && kCentre - d > 0.0)) return;
    const ServeParams params(pts[i].p_a, pts[i].p_b);
    const double exact = match_win_prob(params).value();
    const double error = shift_approx_error(params);
    const double up = match_win_prob(ServeParams(kCentre + d, kCentre)).value();
    const double down = match_win_prob(ServeParams(kCentre, kCentre - d)).value();
    slots[i] = ShiftApproxRow{pts[i], exact, 0.5 * (up + down), error};
  });
  std::vector<ShiftApproxRow> rows;
  for (auto& s : slots) {
    if (s) rows.push_back(*s);
  }
  return rows;
}

}  // namespace serve_order
