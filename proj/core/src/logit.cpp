#include "serve_order/logit.hpp"

#include <algorithm>
#include <cmath>

namespace serve_order {
namespace {

double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

struct Information {
  double i00 = 0, i01 = 0, i11 = 0;
  double det() const { return i00 * i11 - i01 * i01; }
};

Information information(std::span<const LogitObservation> data, double b0, double b1) {
  Information info;
  for (const auto& o : data) {
    const double p = sigmoid(b0 + b1 * o.x);
    const double w = p * (1.0 - p);
    info.i00 += w;
    info.i01 += w * o.x;
    info.i11 += w * o.x * o.x;
  }
  return info;
}

}  // namespace

double two_sided_normal_p(double z) noexcept { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

LogitGradient logit_score(std::span<const LogitObservation> data, double beta0, double beta1) {
  LogitGradient g;
  for (const auto& o : data) {
    const double r = o.y - sigmoid(beta0 + beta1 * o.x);
    g.d_beta0 += r;
    g.d_beta1 += r * o.x;
  }
  return g;
}

LogitFit fit_logit(std::span<const LogitObservation> data, const LogitOptions& options) {
  if (data.size() < 10) throw std::invalid_argument("logistic fit needs at least 10 observations");
  std::size_t ones = 0;
  for (const auto& o : data) {
    if (o.y != 0 && o.y != 1) throw std::invalid_argument("response must be 0 or 1");
    ones += static_cast<std::size_t>(o.y);
  }
  if (ones == 0 || ones == data.size()) throw std::invalid_argument("logistic fit needs both response classes");
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end(),
                                            [](const auto& a, const auto& b) { return a.x < b.x; });
  if (lo->x == hi->x) throw std::invalid_argument("covariate has no variation");

  const double ybar = static_cast<double>(ones) / static_cast<double>(data.size());
  LogitFit fit;
  fit.n = data.size();
  fit.beta0 = std::log(ybar / (1.0 - ybar));
  fit.beta1 = 0.0;

  for (fit.iterations = 1; fit.iterations <= options.max_iterations; ++fit.iterations) {
    const Information info = information(data, fit.beta0, fit.beta1);
    const double det = info.det();
    if (!(det > 1e-14 * info.i00 * info.i11)) throw std::invalid_argument("singular information matrix");
    const LogitGradient g = logit_score(data, fit.beta0, fit.beta1);
    // Newton step: info^{-1} * gradient.
    const double step0 = (info.i11 * g.d_beta0 - info.i01 * g.d_beta1) / det;
    const double step1 = (-info.i01 * g.d_beta0 + info.i00 * g.d_beta1) / det;
    fit.beta0 += step0;
    fit.beta1 += step1;
    if (std::abs(fit.beta0) > options.divergence_bound || std::abs(fit.beta1) > options.divergence_bound) {
      throw SeparationError("logistic coefficients diverged; data look separated");
    }
    if (std::max(std::abs(step0), std::abs(step1)) < options.tolerance) {
      fit.converged = true;
      break;
    }
  }
  fit.iterations = std::min(fit.iterations, options.max_iterations);

  const Information info = information(data, fit.beta0, fit.beta1);
  const double det = info.det();
  fit.se0 = std::sqrt(info.i11 / det);
  fit.se1 = std::sqrt(info.i00 / det);

  constexpr double kZ95 = 1.96;
  fit.odds_ratio = std::exp(fit.beta1);
  fit.ci_low = std::exp(fit.beta1 - kZ95 * fit.se1);
  fit.ci_high = std::exp(fit.beta1 + kZ95 * fit.se1);
  fit.p_value = two_sided_normal_p(fit.beta1 / fit.se1);
  return fit;
}

}  // namespace serve_order
