#include "serve_order/match.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

namespace serve_order {
namespace {

bool same_model(const SetModel& a, const SetModel& b) {
  return a.games.g_a == b.games.g_a && a.games.g_b == b.games.g_b &&
         a.tiebreak.a_serving_first == b.tiebreak.a_serving_first &&
         a.tiebreak.b_serving_first == b.tiebreak.b_serving_first;
}

struct ParityMass {
  double a_even = 0, a_odd = 0, b_even = 0, b_odd = 0;
};

ParityMass parity_mass(const SetScoreDistribution& dist) {
  ParityMass m;
  for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
    const SetScore score = kTerminalScores[i];
    const bool a_won = score.games_of(Player::A, dist.first_server()) > score.games_of(Player::B, dist.first_server());
    const bool even = score.total() % 2 == 0;
    double& slot = a_won ? (even ? m.a_even : m.a_odd) : (even ? m.b_even : m.b_odd);
    slot += dist.at(i);
  }
  return m;
}

}  // namespace

TransitionQuantities transition_quantities(const SetScoreDistribution& a_first, const SetScoreDistribution& b_first) {
  if (a_first.first_server() != Player::A || b_first.first_server() != Player::B) {
    throw std::invalid_argument("transition_quantities expects an A-opened and a B-opened set distribution");
  }
  if (!same_model(a_first.model(), b_first.model())) {
    throw std::invalid_argument("set distributions come from different parameters");
  }

  const ParityMass from_a = parity_mass(a_first);
  const ParityMass from_b = parity_mass(b_first);

  TransitionQuantities t;
  t.alpha_e = from_a.a_even;
  t.alpha_o = from_a.a_odd;
  t.beta_e = from_a.b_even;
  t.beta_o = from_a.b_odd;
  t.gamma_e = from_b.a_even;
  t.gamma_o = from_b.a_odd;
  t.delta_e = from_b.b_even;
  t.delta_o = from_b.b_odd;

  t.p_set = t.alpha_e + t.alpha_o;
  t.q_a = t.alpha_e + t.beta_e;
  t.q_b = t.gamma_o + t.delta_o;
  t.rho_a = 2 * t.alpha_e * t.beta_e + t.alpha_o * t.delta_o + t.beta_o * t.gamma_o;
  t.rho_b = t.gamma_e * t.delta_o + t.gamma_o * t.beta_e + t.delta_e * t.gamma_o + t.delta_o * t.alpha_e;
  t.x = t.alpha_e - t.gamma_o;
  t.y = t.beta_e - t.delta_o;
  return t;
}

ServeCounters& ServeCounters::operator+=(const ServeCounters& rhs) noexcept {
  serve_points += rhs.serve_points;
  serve_points_won += rhs.serve_points_won;
  service_games += rhs.service_games;
  service_games_lost += rhs.service_games_lost;
  break_points_faced += rhs.break_points_faced;
  break_points_saved += rhs.break_points_saved;
  return *this;
}

MatchOutcomeDistribution::MatchOutcomeDistribution(Player first_server, std::map<OutcomeKey, double> outcomes)
    : first_server_(first_server), outcomes_(std::move(outcomes)) {}

double MatchOutcomeDistribution::total_mass() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) s += p;
  return s;
}

double MatchOutcomeDistribution::expected_total() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) s += key.total_games * p;
  return s;
}

double MatchOutcomeDistribution::expected_margin() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) s += key.margin * p;
  return s;
}

double MatchOutcomeDistribution::expected_sets() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) s += key.sets_played * p;
  return s;
}

double MatchOutcomeDistribution::expected_sets_started_by_a() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) s += key.sets_started_by_a * p;
  return s;
}

double MatchOutcomeDistribution::win_prob_a() const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) {
    if (key.winner == Player::A) s += p;
  }
  return s;
}

double MatchOutcomeDistribution::total_games_pmf(int games) const noexcept {
  double s = 0;
  for (const auto& [key, p] : outcomes_) {
    if (key.total_games == games) s += p;
  }
  return s;
}

MatchOutcomeDistribution match_distribution(const SetModel& model, Player first_server) {
  const SetScoreDistribution by_server[2] = {set_score_distribution(model, Player::A),
                                             set_score_distribution(model, Player::B)};
  const auto dist_for = [&](Player p) -> const SetScoreDistribution& { return by_server[p == Player::A ? 0 : 1]; };

  std::map<OutcomeKey, double> outcomes;

  struct Partial {
    Player next_server;
    int sets_a = 0, sets_b = 0;
    int games = 0, margin = 0;
    int sets = 0, started_by_a = 0;
    double prob = 1.0;
  };

  // Depth-first over at most three sets; 14^3 leaves.
  const auto extend = [&](const auto& self, const Partial& state) -> void {
    if (state.sets_a == 2 || state.sets_b == 2) {
      const OutcomeKey key{state.sets_a == 2 ? Player::A : Player::B, state.games, state.margin, state.sets,
                           state.started_by_a};
      outcomes[key] += state.prob;
      return;
    }
    const SetScoreDistribution& dist = dist_for(state.next_server);
    for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
      const double p = dist.at(i);
      if (p == 0.0) continue;
      const PlayedSet set{kTerminalScores[i], state.next_server};
      Partial next = state;
      next.next_server = next_set_server(state.next_server, set.score.total());
      next.sets_a += set.winner() == Player::A;
      next.sets_b += set.winner() == Player::B;
      next.games += set.score.total();
      next.margin += set.a_games() - set.b_games();
      next.sets += 1;
      next.started_by_a += state.next_server == Player::A;
      next.prob *= p;
      self(self, next);
    }
  };
  extend(extend, Partial{first_server});

  return MatchOutcomeDistribution(first_server, std::move(outcomes));
}

MatchExpectations match_expectations(const SetModel& model) {
  const MatchOutcomeDistribution a = match_distribution(model, Player::A);
  const MatchOutcomeDistribution b = match_distribution(model, Player::B);
  return MatchExpectations{a.expected_total(), b.expected_total(), a.expected_margin(), b.expected_margin()};
}

Probability over_line_prob(const MatchOutcomeDistribution& dist, double line) {
  const double frac = line - std::floor(line);
  if (!std::isfinite(line) || std::abs(frac - 0.5) > 1e-9) {
    throw std::invalid_argument("totals line must be a half-integer, got " + std::to_string(line));
  }
  const int threshold = static_cast<int>(std::ceil(line));
  double s = 0;
  for (const auto& [key, p] : dist.outcomes()) {
    if (key.total_games >= threshold) s += p;
  }
  return Probability(std::clamp(s, 0.0, 1.0));
}

Probability match_win_prob(const SetModel& model) {
  const double p = set_summary(set_score_distribution(model, Player::A)).p_set_a;
  return Probability(std::clamp(p * p + 2 * p * p * (1 - p), 0.0, 1.0));
}

Probability match_win_prob(const ServeParams& params) { return match_win_prob(SetModel::from(params)); }

double shift_approx_error(const ServeParams& params) {
  constexpr double kCentre = 0.6;
  const double d = params.p_a.value() - params.p_b.value();
  const double exact = match_win_prob(params).value();
  const double up = match_win_prob(ServeParams(kCentre + d, kCentre)).value();
  const double down = match_win_prob(ServeParams(kCentre, kCentre - d)).value();
  return std::abs(exact - 0.5 * (up + down));
}

}  // namespace serve_order
