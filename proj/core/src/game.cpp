#include <algorithm>
#include <array>

#include "serve_order/analytic.hpp"

namespace serve_order {

Probability game_win_prob(Probability point) {
  const double x = point.value();
  // 1 - 2x(1-x) >= 1/2, so the deuce term never divides by zero.
  const double deuce = 1.0 - 2.0 * x * (1.0 - x);
  const double g = x * x * x * x * (15.0 - 4.0 * x - 10.0 * x * x / deuce);
  return Probability(std::clamp(g, 0.0, 1.0));
}

Probability tiebreak_win_prob(const ServeParams& params, Player first_server) {
  const double p_first = params.serve(first_server).value();
  const double p_second = params.serve(other(first_server)).value();

  // Each two-point block past 6-6 has one serve per player.
  const double win_pair = p_first * (1.0 - p_second);
  const double lose_pair = (1.0 - p_first) * p_second;
  const double at_six_all = win_pair + lose_pair > 0.0 ? win_pair / (win_pair + lose_pair) : 0.5;

  // win[i][j]: first server has i points, opponent j; fill backwards from 6-6.
  std::array<std::array<double, 8>, 8> win{};
  for (int j = 0; j <= 5; ++j) win[7][j] = 1.0;
  for (int i = 0; i <= 5; ++i) win[i][7] = 0.0;
  win[6][6] = at_six_all;

  for (int i = 6; i >= 0; --i) {
    for (int j = 6; j >= 0; --j) {
      if (i == 6 && j == 6) continue;
      const int played = i + j;
      // Point k (0-based) is served by the opener when (k + 1) / 2 is even.
      const bool opener_serves = ((played + 1) / 2) % 2 == 0;
      const double p_point = opener_serves ? p_first : 1.0 - p_second;
      win[i][j] = p_point * win[i + 1][j] + (1.0 - p_point) * win[i][j + 1];
    }
  }
  return Probability(std::clamp(win[0][0], 0.0, 1.0));
}

}  // namespace serve_order
