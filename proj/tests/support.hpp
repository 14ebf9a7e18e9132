#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "serve_order/probability.hpp"

namespace test_support {

/// Deterministic random serve parameters, both coordinates in [lo, hi].
inline std::vector<serve_order::ServeParams> random_params(std::size_t n, std::uint64_t seed, double lo = 0.05,
                                                           double hi = 0.95) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<serve_order::ServeParams> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    out.emplace_back(a, b);
  }
  return out;
}

inline bool within_sigmas(double estimate, double truth, double se, double k = 4.0) {
  return std::abs(estimate - truth) <= k * se;
}

}  // namespace test_support
