#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

#include "serve_order/analytic.hpp"
#include "serve_order/empirical.hpp"

namespace serve_order {

std::string_view to_string(Tour tour) noexcept { return tour == Tour::ATP ? "ATP" : "WTA"; }

Tour parse_tour(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "ATP") return Tour::ATP;
  if (upper == "WTA") return Tour::WTA;
  throw std::invalid_argument("tour must be ATP or WTA, got '" + std::string(text) + "'");
}

std::string_view to_string(Rejection reason) noexcept {
  switch (reason) {
    case Rejection::Unparseable: return "unparseable";
    case Rejection::Retired: return "retired";
    case Rejection::WrongFormat: return "wrong_format";
    case Rejection::SuperTiebreak: return "super_tiebreak";
    case Rejection::Incomplete: return "incomplete";
    case Rejection::MissingStats: return "missing_stats";
    case Rejection::InconsistentStats: return "inconsistent_stats";
    case Rejection::DegenerateServe: return "degenerate_serve";
    case Rejection::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool is_completion_marker(std::string_view token) {
  std::string upper(token);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (std::string_view m : {"RET", "W/O", "WALKOVER", "DEF", "ABN", "ABD", "UNFINISHED"}) {
    if (upper.find(m) != std::string::npos) return true;
  }
  return false;
}

bool read_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct Token {
  int a = 0, b = 0;
  bool has_tiebreak_points = false;
};

// "a-b" or "a-b(t)"
std::optional<Token> read_token(std::string_view tok) {
  Token t;
  if (const auto open = tok.find('('); open != std::string_view::npos) {
    if (tok.back() != ')') return std::nullopt;
    int points = 0;
    if (!read_int(tok.substr(open + 1, tok.size() - open - 2), points)) return std::nullopt;
    t.has_tiebreak_points = true;
    tok = tok.substr(0, open);
  }
  const auto dash = tok.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  if (!read_int(tok.substr(0, dash), t.a) || !read_int(tok.substr(dash + 1), t.b)) return std::nullopt;
  if (t.a < 0 || t.b < 0) return std::nullopt;
  return t;
}

}  // namespace

Checked<std::vector<ParsedSet>> parse_score(std::string_view score, int best_of) {
  const auto tokens = split_ws(score);
  if (tokens.empty()) return Rejection::Unparseable;
  for (std::string_view tok : tokens) {
    if (is_completion_marker(tok)) return Rejection::Retired;
  }
  if (best_of != 3) return Rejection::WrongFormat;

  std::vector<ParsedSet> sets;
  int won = 0, lost = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string_view tok = tokens[i];
    if (tok.find('[') != std::string_view::npos) return Rejection::SuperTiebreak;
    const auto t = read_token(tok);
    if (!t) return Rejection::Unparseable;
    const int hi = std::max(t->a, t->b), lo = std::min(t->a, t->b);
    if (i == 2 && hi == 1 && lo == 0) return Rejection::SuperTiebreak;
    if (!is_terminal(SetScore{hi, lo})) return Rejection::Incomplete;
    const bool tiebreak = hi + lo == 13;
    if (t->has_tiebreak_points && !tiebreak) return Rejection::Unparseable;
    if (won == 2 || lost == 2) return Rejection::Incomplete;  // set after the match ended
    sets.push_back(ParsedSet{t->a, t->b, tiebreak});
    (t->a > t->b ? won : lost) += 1;
  }
  if (won != 2 || lost > 1 || !sets.back().won_by_winner()) return Rejection::Incomplete;
  return sets;
}

std::optional<Rejection> complete_record(MatchRecord& record) {
  auto parsed = parse_score(record.score, record.best_of);
  if (const auto* r = std::get_if<Rejection>(&parsed)) return *r;

  const auto& w = record.winner;
  const auto& l = record.loser;
  if (!w.break_points_faced || !w.break_points_saved || !l.break_points_faced || !l.break_points_saved) {
    return Rejection::MissingStats;
  }
  if (*w.break_points_saved < 0 || *l.break_points_saved < 0 || *w.break_points_saved > *w.break_points_faced ||
      *l.break_points_saved > *l.break_points_faced) {
    return Rejection::InconsistentStats;
  }

  record.sets = std::move(std::get<std::vector<ParsedSet>>(parsed));
  record.g_w = record.g_l = record.tiebreaks_w = record.tiebreaks_l = 0;
  for (const ParsedSet& s : record.sets) {
    record.g_w += s.winner_games;
    record.g_l += s.loser_games;
    if (s.tiebreak) (s.won_by_winner() ? record.tiebreaks_w : record.tiebreaks_l) += 1;
  }
  record.breaks_w = static_cast<int>(*l.break_points_faced - *l.break_points_saved);
  record.breaks_l = static_cast<int>(*w.break_points_faced - *w.break_points_saved);
  return std::nullopt;
}

namespace {

Checked<Probability> serve_prob(const PlayerServeStats& s) {
  if (!s.serve_points || !s.first_won || !s.second_won || *s.serve_points <= 0) return Rejection::MissingStats;
  if (*s.first_won < 0 || *s.second_won < 0 || *s.first_won + *s.second_won > *s.serve_points) {
    return Rejection::InconsistentStats;
  }
  if (s.first_in && (*s.first_in < *s.first_won || *s.first_in > *s.serve_points ||
                     *s.second_won > *s.serve_points - *s.first_in)) {
    return Rejection::InconsistentStats;
  }
  const double p = static_cast<double>(*s.first_won + *s.second_won) / static_cast<double>(*s.serve_points);
  if (p <= 0.0 || p >= 1.0) return Rejection::DegenerateServe;
  return Probability(p);
}

}  // namespace

Checked<ServeEstimate> estimate_serve_probs(const MatchRecord& record) {
  const auto pw = serve_prob(record.winner);
  if (const auto* r = std::get_if<Rejection>(&pw)) return *r;
  const auto pl = serve_prob(record.loser);
  if (const auto* r = std::get_if<Rejection>(&pl)) return *r;
  return ServeEstimate{std::get<Probability>(pw), std::get<Probability>(pl)};
}

}  // namespace serve_order
