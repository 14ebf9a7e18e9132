#pragma once

// Turns simulated matches into dataset-style records with exact serve and
// break counts, and computes the parity-symmetry ground truth directly from
// the simulated set servers.

#include <string>

#include "serve_order/empirical.hpp"
#include "serve_order/match.hpp"

namespace synthetic {

struct LabelledRecord {
  serve_order::MatchRecord record;
  serve_order::FirstServer truth = serve_order::FirstServer::Winner;
  bool parity_symmetric = false;
};

inline serve_order::PlayerServeStats stats_of(const serve_order::ServeCounters& c) {
  serve_order::PlayerServeStats s;
  s.serve_points = c.serve_points;
  s.first_won = c.serve_points_won;  // no first/second split in the simulator
  s.second_won = 0;
  s.break_points_faced = c.break_points_faced;
  s.break_points_saved = c.break_points_saved;
  return s;
}

inline LabelledRecord to_record(const serve_order::MatchOutcome& m, serve_order::Tour tour, long id) {
  using serve_order::Player;
  const Player w = m.winner;
  LabelledRecord out;
  out.record.tour = tour;
  out.record.match_id = "sim-" + std::to_string(id);
  out.record.best_of = 3;
  out.record.winner = stats_of(w == Player::A ? m.stats_a : m.stats_b);
  out.record.loser = stats_of(w == Player::A ? m.stats_b : m.stats_a);

  int imbalance = 0;
  for (const serve_order::PlayedSet& s : m.sets) {
    const int wg = s.score.games_of(w, s.first_server);
    const int lg = s.score.games_of(serve_order::other(w), s.first_server);
    if (!out.record.score.empty()) out.record.score += ' ';
    out.record.score += std::to_string(wg) + "-" + std::to_string(lg);
    if (s.score.tiebreak()) out.record.score += "(5)";
    // Odd sets without a tiebreak give their opener one extra service game.
    if (s.score.total() % 2 == 1 && !s.score.tiebreak()) imbalance += s.first_server == w ? 1 : -1;
  }
  out.truth = m.sets.front().first_server == w ? serve_order::FirstServer::Winner : serve_order::FirstServer::Loser;
  out.parity_symmetric = imbalance == 0;
  return out;
}

}  // namespace synthetic
