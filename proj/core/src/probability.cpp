#include "serve_order/probability.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "serve_order/analytic.hpp"

namespace serve_order {

Player parse_player(std::string_view text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
    if (c == 'A') return Player::A;
    if (c == 'B') return Player::B;
  }
  throw std::invalid_argument("player must be A or B, got '" + std::string(text) + "'");
}

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability out of [0, 1]: " + std::to_string(value));
  }
}

void ServeParams::require_interior() const {
  if (!interior()) {
    throw std::domain_error("serve probabilities must lie strictly inside (0, 1)");
  }
}

SetModel SetModel::from(const ServeParams& params) {
  params.require_interior();
  return SetModel{
      GameProbs{game_win_prob(params.p_a), game_win_prob(params.p_b)},
      TiebreakProbs{tiebreak_win_prob(params, Player::A), tiebreak_win_prob(params, Player::B)},
  };
}

SetModel SetModel::from_games(GameProbs games, Probability tiebreak_a) {
  return SetModel{games, TiebreakProbs{tiebreak_a, tiebreak_a.complement()}};
}

void SetModel::require_interior() const {
  if (!games.g_a.interior() || !games.g_b.interior()) {
    throw std::domain_error("hold probabilities must lie strictly inside (0, 1)");
  }
}

}  // namespace serve_order
