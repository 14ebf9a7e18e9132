#include "serve_order/empirical.hpp"
#include "serve_order/match.hpp"

namespace serve_order {

std::string_view to_string(FirstServer s) noexcept { return s == FirstServer::Winner ? "W" : "L"; }

std::string_view to_string(ServerInference::Reason r) noexcept {
  switch (r) {
    case ServerInference::Reason::None: return "none";
    case ServerInference::Reason::SymmetricSplit: return "symmetric_split";
    case ServerInference::Reason::NoHypothesisMatches: return "no_hypothesis_matches";
  }
  return "unknown";
}

ServiceGameSplit implied_service_games(const std::vector<ParsedSet>& sets, FirstServer first) {
  // Winner plays the role of A for the shared parity rule.
  Player opener = first == FirstServer::Winner ? Player::A : Player::B;
  ServiceGameSplit split;
  for (const ParsedSet& s : sets) {
    const int n = s.games();
    // The tiebreak is the 13th "game" for alternation but nobody's service game.
    const int served = s.tiebreak ? 12 : n;
    const int opener_games = (served + 1) / 2;
    const int other_games = served / 2;
    if (opener == Player::A) {
      split.winner += opener_games;
      split.loser += other_games;
    } else {
      split.winner += other_games;
      split.loser += opener_games;
    }
    opener = next_set_server(opener, n);
  }
  return split;
}

int observed_winner_service_games(const MatchRecord& record) noexcept {
  // Games won on serve plus games lost on serve.
  return (record.g_w - record.tiebreaks_w) - record.breaks_w + record.breaks_l;
}

ServerInference infer_first_server(const MatchRecord& record) {
  ServerInference inf;
  inf.sg_w_if_winner_first = implied_service_games(record.sets, FirstServer::Winner).winner;
  inf.sg_w_if_loser_first = implied_service_games(record.sets, FirstServer::Loser).winner;
  inf.observed_sg_w = observed_winner_service_games(record);

  if (inf.sg_w_if_winner_first == inf.sg_w_if_loser_first) {
    inf.reason = ServerInference::Reason::SymmetricSplit;
    return inf;
  }
  if (inf.observed_sg_w == inf.sg_w_if_winner_first) {
    inf.first_server = FirstServer::Winner;
  } else if (inf.observed_sg_w == inf.sg_w_if_loser_first) {
    inf.first_server = FirstServer::Loser;
  } else {
    inf.reason = ServerInference::Reason::NoHypothesisMatches;
    return inf;
  }
  inf.verdict = ServerInference::Verdict::Determined;
  inf.reason = ServerInference::Reason::None;
  return inf;
}

}  // namespace serve_order
