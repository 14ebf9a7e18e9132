#pragma once

#include <compare>
#include <map>
#include <vector>

#include "serve_order/analytic.hpp"
#include "serve_order/probability.hpp"

namespace serve_order {

/// Opening server of the next set. Games alternate serve, so a set with an
/// even number of games (tiebreak counted as one game) hands the next set to
/// the same player and an odd one to the other.
constexpr Player next_set_server(Player set_first_server, int set_games) noexcept {
  return set_games % 2 == 0 ? set_first_server : other(set_first_server);
}

/// Winner-by-parity probabilities of one set and the quantities that carry
/// serve order from set 1 into sets 2 and 3.
struct TransitionQuantities {
  // A opens the set
  double alpha_e = 0, alpha_o = 0;  // A wins, even / odd length
  double beta_e = 0, beta_o = 0;    // B wins
  // B opens the set
  double gamma_e = 0, gamma_o = 0;  // A wins
  double delta_e = 0, delta_o = 0;  // B wins

  double p_set = 0;  // probability A wins a set

  double q_a = 0, q_b = 0;      // P(S_2 = A | S_1 = A), P(S_2 = A | S_1 = B)
  double rho_a = 0, rho_b = 0;  // P(S_3 = A, N = 3 | S_1 = A), P(S_3 = A, N = 3 | S_1 = B)
  double x = 0, y = 0;          // alpha_e - gamma_o, beta_e - delta_o

  /// Expected number of sets opened by A: M_A given S_1 = A, M_B given S_1 = B.
  double m_a() const noexcept { return 1.0 + q_a + rho_a; }
  double m_b() const noexcept { return q_b + rho_b; }
};

/// Throws std::invalid_argument if the distributions are not A-opened and
/// B-opened sets of the same model.
TransitionQuantities transition_quantities(const SetScoreDistribution& a_first, const SetScoreDistribution& b_first);

struct PlayedSet {
  SetScore score;
  Player first_server = Player::A;

  int a_games() const noexcept { return score.games_of(Player::A, first_server); }
  int b_games() const noexcept { return score.games_of(Player::B, first_server); }
  Player winner() const noexcept { return score.server_won() ? first_server : other(first_server); }
};

/// Aggregation key of a completed best-of-three match.
struct OutcomeKey {
  Player winner = Player::A;
  int total_games = 0;
  int margin = 0;  // A games minus B games
  int sets_played = 0;
  int sets_started_by_a = 0;

  auto operator<=>(const OutcomeKey&) const = default;
};

/// Per-player serve counters collected by the simulator.
struct ServeCounters {
  long serve_points = 0;
  long serve_points_won = 0;
  long service_games = 0;  // tiebreaks excluded
  long service_games_lost = 0;
  long break_points_faced = 0;
  long break_points_saved = 0;

  ServeCounters& operator+=(const ServeCounters& rhs) noexcept;
};

struct MatchOutcome {
  Player winner = Player::A;
  std::vector<PlayedSet> sets;
  int total_games = 0;
  int margin = 0;
  int sets_played = 0;
  int sets_started_by_a = 0;
  ServeCounters stats_a;
  ServeCounters stats_b;

  OutcomeKey key() const noexcept { return {winner, total_games, margin, sets_played, sets_started_by_a}; }
};

/// Exact law of the match outcome given the server of the first game.
class MatchOutcomeDistribution {
 public:
  MatchOutcomeDistribution(Player first_server, std::map<OutcomeKey, double> outcomes);

  Player first_server() const noexcept { return first_server_; }
  const std::map<OutcomeKey, double>& outcomes() const noexcept { return outcomes_; }

  double total_mass() const noexcept;
  double expected_total() const noexcept;
  double expected_margin() const noexcept;
  double expected_sets() const noexcept;
  double expected_sets_started_by_a() const noexcept;
  double win_prob_a() const noexcept;

  /// Probability of exactly `games` games in the match.
  double total_games_pmf(int games) const noexcept;

 private:
  Player first_server_;
  std::map<OutcomeKey, double> outcomes_;
};

MatchOutcomeDistribution match_distribution(const SetModel& model, Player first_server);

struct MatchExpectations {
  double t_match_a = 0, t_match_b = 0;  // expected total games, A / B serving first
  double h_match_a = 0, h_match_b = 0;  // expected A-minus-B margin
  double totals_diff() const noexcept { return t_match_a - t_match_b; }
  double margin_diff() const noexcept { return h_match_a - h_match_b; }
};

MatchExpectations match_expectations(const SetModel& model);

/// P(total games > line). `line` must be k + 0.5; throws std::invalid_argument otherwise.
Probability over_line_prob(const MatchOutcomeDistribution& dist, double line);

/// Probability that A wins the match; independent of who serves first.
Probability match_win_prob(const SetModel& model);

/// Same, from serve-point probabilities.
Probability match_win_prob(const ServeParams& params);

/// |M(p_a, p_b) - (M(0.6 + d, 0.6) + M(0.6, 0.6 - d)) / 2| with d = p_a - p_b.
double shift_approx_error(const ServeParams& params);

}  // namespace serve_order
