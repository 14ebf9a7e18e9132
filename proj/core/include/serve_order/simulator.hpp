#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string_view>

#include "serve_order/analytic.hpp"
#include "serve_order/match.hpp"
#include "serve_order/probability.hpp"

namespace serve_order {

/// Seeded 64-bit generator. Stream `k` of seed `s` is a std::mt19937_64
/// initialised from std::seed_seq{lo32(s), hi32(s), lo32(k), hi32(k)}, so
/// partitions get independent, reproducible streams.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/seed_seq(seed_lo,seed_hi,stream_lo,stream_hi)";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Simulates one game point by point; returns true when the server holds.
bool simulate_game(Probability server_point_prob, Rng& rng, ServeCounters* server_stats = nullptr);

/// Simulates a tiebreak opened by `first_server`; returns the winner.
Player simulate_tiebreak(const ServeParams& params, Player first_server, Rng& rng);

/// Simulates one set; `sa` / `sb` receive the serve counters when non-null.
PlayedSet simulate_set(const ServeParams& params, Player first_server, Rng& rng, ServeCounters* sa = nullptr,
                       ServeCounters* sb = nullptr);

/// Simulates a best-of-three match point by point. Parameters may sit on the
/// boundary of [0, 1].
MatchOutcome simulate_match(const ServeParams& params, Player first_server, Rng& rng);

struct SimConfig {
  ServeParams params;
  Player first_server = Player::A;
  std::uint64_t n_matches = 0;
  std::uint64_t seed = 0;
  unsigned partitions = 1;

  /// Throws std::invalid_argument for n_matches == 0 or partitions == 0.
  void validate() const;
};

/// Aggregated simulation counts.
struct SimTally {
  std::uint64_t n_matches = 0;
  std::map<OutcomeKey, std::uint64_t> outcome_counts;
  /// First-set scores, keyed by slot in kTerminalScores (oriented by S_1).
  std::array<std::uint64_t, kTerminalScoreCount> first_set_counts{};
  /// Every set played, split by its opening server.
  std::array<std::array<std::uint64_t, kTerminalScoreCount>, 2> set_counts_by_server{};

  // Running sums for moment estimates.
  double sum_total = 0, sum_total_sq = 0;
  double sum_margin = 0, sum_margin_sq = 0;
  double sum_first_set_games = 0, sum_first_set_games_sq = 0;
  double sum_first_set_margin = 0, sum_first_set_margin_sq = 0;

  void add(const MatchOutcome& outcome);
  SimTally& merge(const SimTally& other);

  double frequency(std::uint64_t count) const noexcept;
  double first_set_frequency(SetScore score) const;
  double first_set_length_frequency(int games) const;
  double over_line_frequency(double line) const;
  double win_frequency_a() const;

  double mean_total() const noexcept;
  double mean_margin() const noexcept;
  double mean_first_set_games() const noexcept;
  double mean_first_set_margin() const noexcept;
  /// Standard errors of the means above (sample variance, n - 1).
  double se_total() const noexcept;
  double se_margin() const noexcept;
  double se_first_set_games() const noexcept;
  double se_first_set_margin() const noexcept;

  bool operator==(const SimTally&) const = default;
};

/// Standard error of a Bernoulli frequency with success probability `p` over `n` trials.
double proportion_se(double p, std::uint64_t n) noexcept;

/// Runs config.n_matches simulations split over config.partitions streams.
/// Output depends only on (params, first_server, n_matches, seed, partitions).
SimTally tally(const SimConfig& config);

}  // namespace serve_order
