#include <algorithm>
#include <stdexcept>
#include <string>

#include "serve_order/analytic.hpp"

namespace serve_order {
namespace {

// Set-score polynomials. x1 / x2: first server holds / is broken;
// y1 / y2: the receiver holds / is broken. Each counts the orderings of the
// set's games that end on the stated score with the last game won by the
// first server.
double s60(double x1, double y2) {
  const double t = x1 * y2;
  return t * t * t;
}

double pow_i(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double s61(double x1, double x2, double y1, double y2) {
  return 3 * pow_i(x1, 3) * x2 * pow_i(y2, 3) + 3 * pow_i(x1, 4) * y1 * pow_i(y2, 2);
}

double s62(double x1, double x2, double y1, double y2) {
  return 12 * pow_i(x1, 3) * x2 * y1 * pow_i(y2, 3) + 6 * pow_i(x1, 2) * pow_i(x2, 2) * pow_i(y2, 4) +
         3 * pow_i(x1, 4) * pow_i(y1, 2) * pow_i(y2, 2);
}

double s63(double x1, double x2, double y1, double y2) {
  return 24 * pow_i(x1, 3) * pow_i(x2, 2) * y1 * pow_i(y2, 3) + 24 * pow_i(x1, 4) * x2 * pow_i(y1, 2) * pow_i(y2, 2) +
         4 * pow_i(x1, 2) * pow_i(x2, 3) * pow_i(y2, 4) + 4 * pow_i(x1, 5) * pow_i(y1, 3) * y2;
}

double s64(double x1, double x2, double y1, double y2) {
  return 60 * pow_i(x1, 3) * pow_i(x2, 2) * pow_i(y1, 2) * pow_i(y2, 3) +
         40 * pow_i(x1, 2) * pow_i(x2, 3) * y1 * pow_i(y2, 4) + 20 * pow_i(x1, 4) * x2 * pow_i(y1, 3) * pow_i(y2, 2) +
         5 * x1 * pow_i(x2, 4) * pow_i(y2, 5) + pow_i(x1, 5) * pow_i(y1, 4) * y2;
}

double s75(double x1, double x2, double y1, double y2) {
  return 100 * pow_i(x1, 3) * pow_i(x2, 3) * pow_i(y1, 2) * pow_i(y2, 4) +
         100 * pow_i(x1, 4) * pow_i(x2, 2) * pow_i(y1, 3) * pow_i(y2, 3) +
         25 * pow_i(x1, 2) * pow_i(x2, 4) * y1 * pow_i(y2, 5) + 25 * pow_i(x1, 5) * x2 * pow_i(y1, 4) * pow_i(y2, 2) +
         x1 * pow_i(x2, 5) * pow_i(y2, 6) + pow_i(x1, 6) * pow_i(y1, 5) * y2;
}

using Poly = double (*)(double, double, double, double);

}  // namespace

std::optional<std::size_t> terminal_index(SetScore score) noexcept {
  for (std::size_t i = 0; i < kTerminalScores.size(); ++i) {
    if (kTerminalScores[i] == score) return i;
  }
  return std::nullopt;
}

bool is_terminal(SetScore score) noexcept { return terminal_index(score).has_value(); }

SetScoreDistribution::SetScoreDistribution(Player first_server, SetModel model,
                                           std::array<double, kTerminalScoreCount> probs)
    : first_server_(first_server), model_(model), probs_(probs) {}

double SetScoreDistribution::operator[](SetScore score) const {
  const auto slot = terminal_index(score);
  if (!slot) {
    throw std::out_of_range("not a terminal set score: " + std::to_string(score.server_games) + "-" +
                            std::to_string(score.receiver_games));
  }
  return probs_[*slot];
}

double SetScoreDistribution::prob_for_a(int a_games, int b_games) const {
  return first_server_ == Player::A ? (*this)[SetScore{a_games, b_games}] : (*this)[SetScore{b_games, a_games}];
}

SetScoreDistribution set_score_distribution(const SetModel& model, Player first_server) {
  model.require_interior();

  const double hold_first = model.games.hold(first_server).value();
  const double hold_second = model.games.hold(other(first_server)).value();
  const double x1 = hold_first, x2 = 1.0 - hold_first;
  const double y1 = hold_second, y2 = 1.0 - hold_second;

  std::array<double, kTerminalScoreCount> p{};
  // First server wins: arguments as stated. Receiver wins: the polynomial
  // with every game outcome flipped.
  p[0] = s60(x1, y2);
  p[7] = s60(x2, y1);
  constexpr Poly polys[] = {s61, s62, s63, s64, s75};
  for (std::size_t k = 0; k < 5; ++k) {
    p[1 + k] = polys[k](x1, x2, y1, y2);
    p[8 + k] = polys[k](x2, x1, y2, y1);
  }

  double decided = 0.0;
  for (std::size_t k = 0; k < 6; ++k) decided += p[k] + p[7 + k];
  const double six_all = std::max(0.0, 1.0 - decided);

  // The set's opener also opens the tiebreak.
  const double tb_server = first_server == Player::A ? model.tiebreak.a_serving_first.value()
                                                     : model.tiebreak.b_serving_first.value();
  p[6] = six_all * tb_server;
  p[13] = six_all * (1.0 - tb_server);

  return SetScoreDistribution(first_server, model, p);
}

SetSummary set_summary(const SetScoreDistribution& dist) {
  SetSummary s;
  s.first_server = dist.first_server();
  for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
    const SetScore score = kTerminalScores[i];
    const double prob = dist.at(i);
    const int a = score.games_of(Player::A, dist.first_server());
    const int b = score.games_of(Player::B, dist.first_server());
    s.pi[static_cast<std::size_t>(score.total() - 6)] += prob;
    s.h_set += (a - b) * prob;
    if (a > b) s.p_set_a += prob;
  }
  for (int n = 6; n <= 13; ++n) s.t_set += n * s.pi_of(n);
  return s;
}

}  // namespace serve_order
