#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace serve_order {

struct LogitObservation {
  int y = 0;         // 1 when the winner served first
  double x = 0.0;    // covariate, e.g. p_w - p_l
};

/// Univariate logistic fit logit P(Y = 1) = beta0 + beta1 * x with Wald
/// inference on beta1.
struct LogitFit {
  double beta0 = 0, beta1 = 0;
  double se0 = 0, se1 = 0;
  double odds_ratio = 0;
  double ci_low = 0, ci_high = 0;  // 95% interval for the odds ratio
  double p_value = 1;              // two-sided Wald
  std::size_t n = 0;
  int iterations = 0;
  bool converged = false;
};

/// Raised when a coefficient diverges (|beta| > 50), which signals
/// complete or quasi-complete separation.
class SeparationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogitOptions {
  double tolerance = 1e-10;  // max absolute coefficient change
  int max_iterations = 100;
  double divergence_bound = 50.0;
};

/// Maximum likelihood by iteratively reweighted least squares. Requires at
/// least 10 observations with both classes present (std::invalid_argument).
LogitFit fit_logit(std::span<const LogitObservation> data, const LogitOptions& options = {});

struct LogitGradient {
  double d_beta0 = 0;
  double d_beta1 = 0;
};

/// Gradient of the log-likelihood at (beta0, beta1).
LogitGradient logit_score(std::span<const LogitObservation> data, double beta0, double beta1);

/// Two-sided p-value of a standard normal statistic.
double two_sided_normal_p(double z) noexcept;

}  // namespace serve_order
