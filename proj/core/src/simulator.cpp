#include "serve_order/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace serve_order {
namespace {

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(stream), hi32(stream)};
  return std::mt19937_64(seq);
}

std::size_t player_index(Player p) { return p == Player::A ? 0 : 1; }

Player simulate_tiebreak_counted(const ServeParams& params, Player opener, Rng& rng, ServeCounters* stats[2]) {
  int opener_points = 0, other_points = 0;
  for (int k = 0;; ++k) {
    const Player server = ((k + 1) / 2) % 2 == 0 ? opener : other(opener);
    const bool server_won = rng.bernoulli(params.serve(server).value());
    if (ServeCounters* s = stats[player_index(server)]) {
      ++s->serve_points;
      s->serve_points_won += server_won;
    }
    const bool opener_won = (server == opener) == server_won;
    (opener_won ? opener_points : other_points) += 1;
    if (opener_points >= 7 && opener_points - other_points >= 2) return opener;
    if (other_points >= 7 && other_points - opener_points >= 2) return other(opener);
  }
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seeded_engine(seed, stream)) {}

bool simulate_game(Probability server_point_prob, Rng& rng, ServeCounters* server_stats) {
  const double p = server_point_prob.value();
  int server = 0, receiver = 0;
  for (;;) {
    const bool break_point = receiver >= 3 && receiver > server;
    const bool won = rng.bernoulli(p);
    if (server_stats) {
      ++server_stats->serve_points;
      server_stats->serve_points_won += won;
      if (break_point) {
        ++server_stats->break_points_faced;
        server_stats->break_points_saved += won;
      }
    }
    (won ? server : receiver) += 1;
    if (server >= 4 && server - receiver >= 2) break;
    if (receiver >= 4 && receiver - server >= 2) break;
  }
  const bool held = server > receiver;
  if (server_stats) {
    ++server_stats->service_games;
    server_stats->service_games_lost += !held;
  }
  return held;
}

Player simulate_tiebreak(const ServeParams& params, Player first_server, Rng& rng) {
  ServeCounters* none[2] = {nullptr, nullptr};
  return simulate_tiebreak_counted(params, first_server, rng, none);
}

PlayedSet simulate_set(const ServeParams& params, Player first_server, Rng& rng, ServeCounters* sa,
                       ServeCounters* sb) {
  ServeCounters* stats[2] = {sa, sb};
  int opener_games = 0, other_games = 0;
  for (int game = 0;; ++game) {
    if (opener_games == 6 && other_games == 6) {
      const Player tb_winner = simulate_tiebreak_counted(params, first_server, rng, stats);
      (tb_winner == first_server ? opener_games : other_games) += 1;
      break;
    }
    const Player server = game % 2 == 0 ? first_server : other(first_server);
    const bool held = simulate_game(params.serve(server), rng, stats[player_index(server)]);
    const bool opener_won = (server == first_server) == held;
    (opener_won ? opener_games : other_games) += 1;
    const int hi = std::max(opener_games, other_games);
    const int lo = std::min(opener_games, other_games);
    if ((hi == 6 && lo <= 4) || hi == 7) break;
  }
  return PlayedSet{SetScore{opener_games, other_games}, first_server};
}

MatchOutcome simulate_match(const ServeParams& params, Player first_server, Rng& rng) {
  MatchOutcome out;
  int sets_a = 0, sets_b = 0;
  long games_so_far = 0;  // tiebreak counted as one game
  Player opener = first_server;
  while (sets_a < 2 && sets_b < 2) {
    // Serve alternates game by game across set boundaries.
    const Player by_alternation = games_so_far % 2 == 0 ? first_server : other(first_server);
    if (by_alternation != opener) {
      throw std::logic_error("set opener disagrees with game-by-game serve alternation");
    }
    const PlayedSet set = simulate_set(params, opener, rng, &out.stats_a, &out.stats_b);
    out.sets.push_back(set);
    out.sets_started_by_a += opener == Player::A;
    out.total_games += set.score.total();
    out.margin += set.a_games() - set.b_games();
    (set.winner() == Player::A ? sets_a : sets_b) += 1;
    games_so_far += set.score.total();
    opener = next_set_server(opener, set.score.total());
  }
  out.winner = sets_a == 2 ? Player::A : Player::B;
  out.sets_played = static_cast<int>(out.sets.size());
  return out;
}

void SimConfig::validate() const {
  if (n_matches == 0) throw std::invalid_argument("n_matches must be at least 1");
  if (partitions == 0) throw std::invalid_argument("partitions must be at least 1");
}

void SimTally::add(const MatchOutcome& outcome) {
  ++n_matches;
  ++outcome_counts[outcome.key()];
  const PlayedSet& first = outcome.sets.front();
  ++first_set_counts[*terminal_index(first.score)];
  for (const PlayedSet& s : outcome.sets) {
    ++set_counts_by_server[player_index(s.first_server)][*terminal_index(s.score)];
  }
  const double t = outcome.total_games, h = outcome.margin;
  const double t1 = first.score.total(), h1 = first.a_games() - first.b_games();
  sum_total += t;
  sum_total_sq += t * t;
  sum_margin += h;
  sum_margin_sq += h * h;
  sum_first_set_games += t1;
  sum_first_set_games_sq += t1 * t1;
  sum_first_set_margin += h1;
  sum_first_set_margin_sq += h1 * h1;
}

SimTally& SimTally::merge(const SimTally& rhs) {
  n_matches += rhs.n_matches;
  for (const auto& [key, count] : rhs.outcome_counts) outcome_counts[key] += count;
  for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
    first_set_counts[i] += rhs.first_set_counts[i];
    set_counts_by_server[0][i] += rhs.set_counts_by_server[0][i];
    set_counts_by_server[1][i] += rhs.set_counts_by_server[1][i];
  }
  sum_total += rhs.sum_total;
  sum_total_sq += rhs.sum_total_sq;
  sum_margin += rhs.sum_margin;
  sum_margin_sq += rhs.sum_margin_sq;
  sum_first_set_games += rhs.sum_first_set_games;
  sum_first_set_games_sq += rhs.sum_first_set_games_sq;
  sum_first_set_margin += rhs.sum_first_set_margin;
  sum_first_set_margin_sq += rhs.sum_first_set_margin_sq;
  return *this;
}

double SimTally::frequency(std::uint64_t count) const noexcept {
  return n_matches == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n_matches);
}

double SimTally::first_set_frequency(SetScore score) const {
  const auto slot = terminal_index(score);
  if (!slot) throw std::out_of_range("not a terminal set score");
  return frequency(first_set_counts[*slot]);
}

double SimTally::first_set_length_frequency(int games) const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < kTerminalScoreCount; ++i) {
    if (kTerminalScores[i].total() == games) c += first_set_counts[i];
  }
  return frequency(c);
}

double SimTally::over_line_frequency(double line) const {
  std::uint64_t c = 0;
  for (const auto& [key, count] : outcome_counts) {
    if (key.total_games > line) c += count;
  }
  return frequency(c);
}

double SimTally::win_frequency_a() const {
  std::uint64_t c = 0;
  for (const auto& [key, count] : outcome_counts) {
    if (key.winner == Player::A) c += count;
  }
  return frequency(c);
}

namespace {

double mean_of(double sum, std::uint64_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); }

double se_of(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
  return std::sqrt(var / dn);
}

}  // namespace

double SimTally::mean_total() const noexcept { return mean_of(sum_total, n_matches); }
double SimTally::mean_margin() const noexcept { return mean_of(sum_margin, n_matches); }
double SimTally::mean_first_set_games() const noexcept { return mean_of(sum_first_set_games, n_matches); }
double SimTally::mean_first_set_margin() const noexcept { return mean_of(sum_first_set_margin, n_matches); }
double SimTally::se_total() const noexcept { return se_of(sum_total, sum_total_sq, n_matches); }
double SimTally::se_margin() const noexcept { return se_of(sum_margin, sum_margin_sq, n_matches); }
double SimTally::se_first_set_games() const noexcept {
  return se_of(sum_first_set_games, sum_first_set_games_sq, n_matches);
}
double SimTally::se_first_set_margin() const noexcept {
  return se_of(sum_first_set_margin, sum_first_set_margin_sq, n_matches);
}

double proportion_se(double p, std::uint64_t n) noexcept {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

SimTally tally(const SimConfig& config) {
  config.validate();
  const unsigned parts = config.partitions;
  std::vector<SimTally> partial(parts);

  const auto run = [&](unsigned part) {
    const std::uint64_t share = config.n_matches / parts + (part < config.n_matches % parts ? 1 : 0);
    Rng rng(config.seed, part);
    SimTally& t = partial[part];
    for (std::uint64_t i = 0; i < share; ++i) t.add(simulate_match(config.params, config.first_server, rng));
  };

  if (parts == 1) {
    run(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(parts);
    for (unsigned p = 0; p < parts; ++p) workers.emplace_back(run, p);
  }

  SimTally total;
  for (const SimTally& t : partial) total.merge(t);
  return total;
}

}  // namespace serve_order
