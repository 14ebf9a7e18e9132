#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "serve_order/probability.hpp"

namespace serve_order {

/// Probability that the server holds a game when winning each point with
/// probability `p`. Defined on the closed interval [0, 1].
Probability game_win_prob(Probability p);

/// Probability that `first_server` wins a tiebreak that they open on serve.
/// Serve order: the opener serves point 1, then each player serves two points
/// in turn. Exact dynamic program; the 6-6 state is closed with the
/// two-point-exchange geometric series.
Probability tiebreak_win_prob(const ServeParams& params, Player first_server);

/// A terminal set score, oriented by the set's first server.
struct SetScore {
  int server_games = 0;
  int receiver_games = 0;

  constexpr int total() const noexcept { return server_games + receiver_games; }
  constexpr bool server_won() const noexcept { return server_games > receiver_games; }
  constexpr bool tiebreak() const noexcept { return total() == 13; }
  constexpr SetScore mirrored() const noexcept { return {receiver_games, server_games}; }

  /// Games won by `player` in a set opened by `first_server`.
  constexpr int games_of(Player player, Player first_server) const noexcept {
    return player == first_server ? server_games : receiver_games;
  }

  constexpr auto operator<=>(const SetScore&) const noexcept = default;
};

inline constexpr std::size_t kTerminalScoreCount = 14;

/// The 14 legal terminal scores: first-server wins in the first seven slots,
/// their mirrors in the same order in the last seven.
inline constexpr std::array<SetScore, kTerminalScoreCount> kTerminalScores{{
    {6, 0}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {7, 5}, {7, 6},
    {0, 6}, {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 7}, {6, 7},
}};

/// Slot of a terminal score in kTerminalScores, or nullopt when not terminal.
std::optional<std::size_t> terminal_index(SetScore score) noexcept;

bool is_terminal(SetScore score) noexcept;

/// Exact probabilities of the 14 terminal scores of a set opened by
/// `first_server`. Scores are keyed by (server games, receiver games).
class SetScoreDistribution {
 public:
  SetScoreDistribution(Player first_server, SetModel model, std::array<double, kTerminalScoreCount> probs);

  Player first_server() const noexcept { return first_server_; }
  const SetModel& model() const noexcept { return model_; }

  /// Throws std::out_of_range for non-terminal scores.
  double operator[](SetScore score) const;
  double at(std::size_t slot) const { return probs_.at(slot); }
  const std::array<double, kTerminalScoreCount>& probs() const noexcept { return probs_; }

  /// Probability of a score stated from A's point of view (A games, B games).
  double prob_for_a(int a_games, int b_games) const;

 private:
  Player first_server_;
  SetModel model_;
  std::array<double, kTerminalScoreCount> probs_;
};

/// Terminal score distribution of one set. Throws std::domain_error when the
/// hold probabilities are not strictly inside (0, 1).
SetScoreDistribution set_score_distribution(const SetModel& model, Player first_server);

struct SetSummary {
  Player first_server = Player::A;
  double p_set_a = 0.0;
  /// pi[n - 6] is the probability that the set lasts n games, n = 6..13.
  std::array<double, 8> pi{};
  double t_set = 0.0;  // expected games
  double h_set = 0.0;  // expected A-minus-B games

  double pi_of(int games) const { return pi.at(static_cast<std::size_t>(games - 6)); }
};

SetSummary set_summary(const SetScoreDistribution& dist);

}  // namespace serve_order
