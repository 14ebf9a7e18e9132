#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace serve_order {

enum class Player : std::uint8_t { A, B };

constexpr Player other(Player p) noexcept { return p == Player::A ? Player::B : Player::A; }

constexpr std::string_view to_string(Player p) noexcept { return p == Player::A ? "A" : "B"; }

/// Parses "A"/"B" (case-insensitive); throws std::invalid_argument otherwise.
Player parse_player(std::string_view text);

/// A real number in [0, 1]. Construction outside the interval (or NaN) throws
/// std::domain_error.
class Probability {
 public:
  constexpr Probability() noexcept = default;
  explicit Probability(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr Probability complement() const noexcept { return Probability(1.0 - value_, Unchecked{}); }

  /// True for values strictly inside (0, 1).
  constexpr bool interior() const noexcept { return value_ > 0.0 && value_ < 1.0; }

  constexpr auto operator<=>(const Probability&) const noexcept = default;

 private:
  struct Unchecked {};
  constexpr Probability(double value, Unchecked) noexcept : value_(value) {}

  double value_ = 0.0;
};

/// Serve-point win probabilities: p_a is A's chance of winning a point on A's
/// serve, p_b is B's chance on B's serve.
struct ServeParams {
  Probability p_a;
  Probability p_b;

  ServeParams() = default;
  ServeParams(Probability a, Probability b) : p_a(a), p_b(b) {}
  ServeParams(double a, double b) : p_a(a), p_b(b) {}

  constexpr Probability serve(Player server) const noexcept { return server == Player::A ? p_a : p_b; }
  constexpr bool interior() const noexcept { return p_a.interior() && p_b.interior(); }

  /// Throws std::domain_error unless both values are strictly inside (0, 1).
  void require_interior() const;
};

/// Hold probabilities of each player.
struct GameProbs {
  Probability g_a;
  Probability g_b;

  constexpr Probability hold(Player server) const noexcept { return server == Player::A ? g_a : g_b; }
};

/// Probability that each player wins a tiebreak they open on serve.
struct TiebreakProbs {
  Probability a_serving_first;
  Probability b_serving_first;

  /// Probability that A wins a tiebreak opened by `first_server`.
  constexpr double a_wins(Player first_server) const noexcept {
    return first_server == Player::A ? a_serving_first.value() : 1.0 - b_serving_first.value();
  }
};

/// Everything a set needs: game-level hold probabilities plus the tiebreak
/// resolution at 6-6.
struct SetModel {
  GameProbs games;
  TiebreakProbs tiebreak;

  /// Derives hold and tiebreak probabilities from serve-point probabilities.
  /// Requires both probabilities strictly inside (0, 1).
  static SetModel from(const ServeParams& params);

  /// A model defined directly at game level with a server-independent
  /// tiebreak: A wins any tiebreak with probability `tiebreak_a`.
  static SetModel from_games(GameProbs games, Probability tiebreak_a);

  /// Throws std::domain_error unless g_a and g_b lie strictly inside (0, 1).
  void require_interior() const;
};

}  // namespace serve_order
