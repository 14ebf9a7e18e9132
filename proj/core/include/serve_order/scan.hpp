#pragma once

#include <cstddef>
#include <vector>

#include "serve_order/probability.hpp"

namespace serve_order {

/// Parameter grid over p_min <= p_b <= p_a <= p_max.
struct ScanSpec {
  double p_min = 0.50;
  double p_max = 0.70;
  double step = 0.01;
  std::vector<double> lines{18.5, 19.5, 20.5, 21.5, 22.5};
  unsigned threads = 1;

  /// Throws std::invalid_argument when the grid is empty or ill-formed.
  void validate() const;
};

/// p_min, p_min + step, ... up to p_max (inclusive within 1e-9). Each node is
/// computed as p_min + i * step and rounded to 12 decimals.
std::vector<double> grid_axis(const ScanSpec& spec);

struct GridPoint {
  double p_a = 0;
  double p_b = 0;
};

/// Lower-triangular grid points (p_b <= p_a) in row-major (p_a, then p_b) order.
std::vector<GridPoint> grid_points(const ScanSpec& spec);

struct ExpectationRow {
  GridPoint at;
  double t_set_a = 0, t_set_b = 0;
  double h_set_a = 0, h_set_b = 0;
  double t_match_a = 0, t_match_b = 0;
  double h_match_a = 0, h_match_b = 0;

  double set_totals_diff() const noexcept { return t_set_a - t_set_b; }
  double set_margin_diff() const noexcept { return h_set_a - h_set_b; }
  double match_totals_diff() const noexcept { return t_match_a - t_match_b; }
  double match_margin_diff() const noexcept { return h_match_a - h_match_b; }
};

/// Set and match expectations at every grid point, both first servers.
std::vector<ExpectationRow> scan_expectations(const ScanSpec& spec);

struct OverlineRow {
  GridPoint at;
  std::vector<double> over_a;  // P(T > line | S_1 = A), one per spec.lines entry
  std::vector<double> over_b;
  double diff(std::size_t i) const { return over_a.at(i) - over_b.at(i); }
};

struct OverlineSummary {
  double line = 0;
  double mean_diff = 0;      // mean of the signed difference over the grid
  double max_abs_diff = 0;
  GridPoint argmax;          // first maximiser in grid order
  double diff_at_argmax = 0; // signed
};

struct OverlineScan {
  std::vector<OverlineRow> rows;
  std::vector<OverlineSummary> summary;
};

OverlineScan scan_overline(const ScanSpec& spec);

struct ShiftApproxRow {
  GridPoint at;
  double exact = 0;
  double approx = 0;
  double error = 0;
};

std::vector<ShiftApproxRow> scan_shift_approx(const ScanSpec& spec);

}  // namespace serve_order
