#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "serve_order/analytic.hpp"
#include "serve_order/match.hpp"

namespace cli {

using namespace serve_order;

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

}  // namespace

void add_point(CLI::App& app, PointOptions& o) {
  auto* sub = app.add_subcommand("point", "Exact quantities at one (pa, pb) for both first servers");
  sub->add_option("--pa", o.pa, "Probability A wins a point on serve")->required();
  sub->add_option("--pb", o.pb, "Probability B wins a point on serve")->required();
  sub->add_option("--server", o.server, "Orientation of the diff column: <server>-first minus the other")
      ->capture_default_str()
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  sub->add_option("--lines", o.lines, "Totals lines (half-integers)")->delimiter(',')->capture_default_str();
  sub->add_option("--format", o.format, "csv or jsonl")->capture_default_str()->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--out", o.out, "Output file (default stdout)");
}

int run_point(const PointOptions& o) {
  const ServeParams params(o.pa, o.pb);
  const SetModel model = SetModel::from(params);
  const Player selected = parse_player(o.server);

  const auto sa = set_summary(set_score_distribution(model, Player::A));
  const auto sb = set_summary(set_score_distribution(model, Player::B));
  const auto ma = match_distribution(model, Player::A);
  const auto mb = match_distribution(model, Player::B);

  std::vector<std::vector<Cell>> rows;
  const auto add = [&](std::string name, double a_first, double b_first) {
    const double diff = selected == Player::A ? a_first - b_first : b_first - a_first;
    rows.push_back({std::move(name), a_first, b_first, diff});
  };

  add("hold_a", model.games.g_a.value(), model.games.g_a.value());
  add("hold_b", model.games.g_b.value(), model.games.g_b.value());
  add("tiebreak_win_a", model.tiebreak.a_serving_first.value(), 1.0 - model.tiebreak.b_serving_first.value());
  add("set_win_a", sa.p_set_a, sb.p_set_a);
  add("set_games", sa.t_set, sb.t_set);
  add("set_margin", sa.h_set, sb.h_set);
  for (int n = 6; n <= 13; ++n) add("set_length_" + std::to_string(n), sa.pi_of(n), sb.pi_of(n));
  add("match_win_a", ma.win_prob_a(), mb.win_prob_a());
  add("match_games", ma.expected_total(), mb.expected_total());
  add("match_margin", ma.expected_margin(), mb.expected_margin());
  add("sets_played", ma.expected_sets(), mb.expected_sets());
  add("sets_started_by_a", ma.expected_sets_started_by_a(), mb.expected_sets_started_by_a());
  for (double line : o.lines) {
    add("over_" + num(line), over_line_prob(ma, line).value(), over_line_prob(mb, line).value());
  }

  const Meta meta{{"command", "point"},
                  {"pa", num(o.pa)},
                  {"pb", num(o.pb)},
                  {"diff", std::string(to_string(selected)) + "_first_minus_" + std::string(to_string(other(selected))) +
                               "_first"},
                  {"lines", join(o.lines)}};
  write_table(o.out, parse_format(o.format), meta, {"quantity", "a_first", "b_first", "diff"}, rows);
  return kOk;
}

}  // namespace cli
