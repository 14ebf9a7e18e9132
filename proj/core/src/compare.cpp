#include "serve_order/compare.hpp"

#include <cmath>
#include <limits>

#include "serve_order/analytic.hpp"
#include "serve_order/match.hpp"

namespace serve_order {
namespace {

std::string fmt_line(double line) {
  std::string s = std::to_string(line);
  s.erase(s.find_last_not_of('0') + 1);
  return s;
}

double z_score(double sim, double exact, double se) {
  if (se > 0) return (sim - exact) / se;
  return sim == exact ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), sim - exact);
}

// Mean and standard error of f(key) over the tallied outcomes.
template <class F>
std::pair<double, double> outcome_moment(const SimTally& t, F f) {
  double s = 0, ss = 0;
  for (const auto& [key, c] : t.outcome_counts) {
    const double v = f(key);
    s += v * static_cast<double>(c);
    ss += v * v * static_cast<double>(c);
  }
  const double n = static_cast<double>(t.n_matches);
  const double mean = s / n;
  const double var = n > 1 ? std::max(0.0, (ss - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

std::vector<Comparison> compare_with_analytic(const SimTally& tally, const ServeParams& params, Player first_server,
                                              const std::vector<double>& lines) {
  const SetModel model = SetModel::from(params);
  const SetScoreDistribution set = set_score_distribution(model, first_server);
  const SetSummary summary = set_summary(set);
  const MatchOutcomeDistribution match = match_distribution(model, first_server);
  const std::uint64_t n = tally.n_matches;

  std::vector<Comparison> out;
  const auto prob = [&](std::string name, double exact, double sim) {
    const double se = proportion_se(exact, n);
    out.push_back({std::move(name), exact, sim, se, z_score(sim, exact, se)});
  };
  const auto mean = [&](std::string name, double exact, double sim, double se) {
    out.push_back({std::move(name), exact, sim, se, z_score(sim, exact, se)});
  };

  for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
    const SetScore s = kTerminalScores[i];
    prob("first_set_score_" + std::to_string(s.server_games) + "-" + std::to_string(s.receiver_games), set.at(i),
         tally.first_set_frequency(s));
  }
  for (int g = 6; g <= 13; ++g) {
    prob("first_set_length_" + std::to_string(g), summary.pi_of(g), tally.first_set_length_frequency(g));
  }
  mean("first_set_games", summary.t_set, tally.mean_first_set_games(), tally.se_first_set_games());
  mean("first_set_margin", summary.h_set, tally.mean_first_set_margin(), tally.se_first_set_margin());
  prob("match_win_a", match.win_prob_a(), tally.win_frequency_a());
  mean("match_total_games", match.expected_total(), tally.mean_total(), tally.se_total());
  mean("match_margin", match.expected_margin(), tally.mean_margin(), tally.se_margin());
  {
    const auto [m, se] = outcome_moment(tally, [](const OutcomeKey& k) { return k.sets_played; });
    mean("sets_played", match.expected_sets(), m, se);
  }
  {
    const auto [m, se] = outcome_moment(tally, [](const OutcomeKey& k) { return k.sets_started_by_a; });
    mean("sets_started_by_a", match.expected_sets_started_by_a(), m, se);
  }
  for (double line : lines) {
    prob("over_" + fmt_line(line), over_line_prob(match, line).value(), tally.over_line_frequency(line));
  }
  return out;
}

}  // namespace serve_order
