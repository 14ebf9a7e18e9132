#pragma once

#include <string>
#include <vector>

#include "serve_order/simulator.hpp"

namespace serve_order {

/// One simulated estimate next to its exact value.
struct Comparison {
  std::string quantity;
  double analytic = 0;
  double simulated = 0;
  double se = 0;  // standard error of `simulated`
  double z = 0;   // (simulated - analytic) / se; 0 when both agree exactly
};

/// Compares a tally with the exact engine: first-set score probabilities
/// (oriented by the first server), first-set length law, first-set and match
/// expectations, match win probability and over-line probabilities. Requires
/// interior serve probabilities.
std::vector<Comparison> compare_with_analytic(const SimTally& tally, const ServeParams& params, Player first_server,
                                              const std::vector<double>& lines);

}  // namespace serve_order
