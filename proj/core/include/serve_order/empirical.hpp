#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "serve_order/probability.hpp"

namespace serve_order {

enum class Tour { ATP, WTA };

std::string_view to_string(Tour tour) noexcept;
/// Case-insensitive "ATP" / "WTA"; throws std::invalid_argument otherwise.
Tour parse_tour(std::string_view text);

/// Why a record was dropped during ingestion.
enum class Rejection {
  Unparseable,        // score token is not "a-b" / "a-b(t)"
  Retired,            // RET / W/O / DEF / ABN markers
  WrongFormat,        // best_of != 3
  SuperTiebreak,      // match-tiebreak deciding set
  Incomplete,         // illegal set score or set sequence
  MissingStats,       // serve or break counts absent or zero serve points
  InconsistentStats,  // won > played, saved > faced, negative counts
  DegenerateServe,    // estimated serve probability of exactly 0 or 1
  OutOfRange,         // excluded by the season filter
};

inline constexpr Rejection kAllRejections[] = {
    Rejection::Unparseable,  Rejection::Retired,           Rejection::WrongFormat,
    Rejection::SuperTiebreak, Rejection::Incomplete,       Rejection::MissingStats,
    Rejection::InconsistentStats, Rejection::DegenerateServe, Rejection::OutOfRange,
};

std::string_view to_string(Rejection reason) noexcept;

/// One set of a score line, from the match winner's point of view.
struct ParsedSet {
  int winner_games = 0;
  int loser_games = 0;
  bool tiebreak = false;

  int games() const noexcept { return winner_games + loser_games; }
  bool won_by_winner() const noexcept { return winner_games > loser_games; }
  bool operator==(const ParsedSet&) const = default;
};

template <class T>
using Checked = std::variant<T, Rejection>;

/// Parses a completed best-of-three score line such as "7-6(5) 3-6 6-3".
Checked<std::vector<ParsedSet>> parse_score(std::string_view score, int best_of);

struct PlayerServeStats {
  std::optional<long> serve_points;
  std::optional<long> first_in;
  std::optional<long> first_won;
  std::optional<long> second_won;
  std::optional<long> break_points_faced;
  std::optional<long> break_points_saved;
};

struct MatchRecord {
  Tour tour = Tour::ATP;
  std::string match_id;
  std::string score;
  int best_of = 3;
  std::optional<int> year;
  PlayerServeStats winner;
  PlayerServeStats loser;

  // Filled by `complete_record`.
  std::vector<ParsedSet> sets;
  int g_w = 0, g_l = 0;
  int tiebreaks_w = 0, tiebreaks_l = 0;
  int breaks_w = 0;  // breaks of serve achieved by the winner
  int breaks_l = 0;  // breaks of serve achieved by the loser

  int total_games() const noexcept { return g_w + g_l; }
  int tiebreak_sets() const noexcept { return tiebreaks_w + tiebreaks_l; }
};

/// Parses the score and derives game and break totals. On success the
/// derived fields of `record` are filled.
std::optional<Rejection> complete_record(MatchRecord& record);

struct ServeEstimate {
  Probability p_w;
  Probability p_l;
};

/// (first-serve points won + second-serve points won) / serve points, per player.
Checked<ServeEstimate> estimate_serve_probs(const MatchRecord& record);

enum class FirstServer { Winner, Loser };

std::string_view to_string(FirstServer s) noexcept;

struct ServiceGameSplit {
  int winner = 0;
  int loser = 0;
  bool operator==(const ServiceGameSplit&) const = default;
};

/// Service games each player holds serve for, if `first` opened set 1.
/// Serve order follows the set-parity rule; a tiebreak is not a service game.
ServiceGameSplit implied_service_games(const std::vector<ParsedSet>& sets, FirstServer first);

struct ServerInference {
  enum class Verdict { Determined, Indeterminate };
  enum class Reason { None, SymmetricSplit, NoHypothesisMatches };

  Verdict verdict = Verdict::Indeterminate;
  Reason reason = Reason::SymmetricSplit;
  std::optional<FirstServer> first_server;
  int sg_w_if_winner_first = 0;
  int sg_w_if_loser_first = 0;
  int observed_sg_w = 0;

  bool determined() const noexcept { return verdict == Verdict::Determined; }
};

std::string_view to_string(ServerInference::Reason r) noexcept;

/// Observed winner service games: non-tiebreak games won, minus breaks the
/// winner achieved, plus breaks the loser achieved.
int observed_winner_service_games(const MatchRecord& record) noexcept;

/// Requires a record completed by `complete_record`.
ServerInference infer_first_server(const MatchRecord& record);

struct ResidualRow {
  Tour tour = Tour::ATP;
  FirstServer first_server = FirstServer::Winner;
  double residual = 0;
  double observed_total = 0;
  double expected_total = 0;
  double p_w = 0;
  double p_l = 0;
};

/// Expected total games with the winner as player A.
double expected_total_games(const ServeEstimate& estimate, FirstServer first);

/// Observed total minus the model's expected total given the first server.
ResidualRow make_residual_row(const MatchRecord& record, const ServeEstimate& estimate, FirstServer first);

/// Linear interpolation between order statistics (position (n - 1) * q).
/// Throws std::invalid_argument for an empty sample or q outside [0, 1].
double quantile(std::vector<double> sample, double q);

struct ResidualGroupStats {
  Tour tour = Tour::ATP;
  FirstServer first_server = FirstServer::Winner;
  std::size_t n = 0;
  double mean = 0;
  std::optional<double> std_dev;  // absent for n < 2
  std::optional<double> std_error;
  double median = 0;
  double q25 = 0;
  double q75 = 0;
};

struct ResidualTourStats {
  Tour tour = Tour::ATP;
  std::size_t n = 0;
  double mean = 0;
  std::optional<double> std_error;
};

struct ResidualTables {
  std::vector<ResidualGroupStats> by_server;  // sorted by (tour, server L before W)
  std::vector<ResidualTourStats> overall;     // sorted by tour
};

/// Groups by (tour, first server). Empty groups are omitted.
ResidualTables residual_table(const std::vector<ResidualRow>& rows);

}  // namespace serve_order
