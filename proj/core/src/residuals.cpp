#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "serve_order/empirical.hpp"
#include "serve_order/match.hpp"

namespace serve_order {

double expected_total_games(const ServeEstimate& estimate, FirstServer first) {
  const SetModel model = SetModel::from(ServeParams(estimate.p_w, estimate.p_l));
  return match_distribution(model, first == FirstServer::Winner ? Player::A : Player::B).expected_total();
}

ResidualRow make_residual_row(const MatchRecord& record, const ServeEstimate& estimate, FirstServer first) {
  ResidualRow row;
  row.tour = record.tour;
  row.first_server = first;
  row.observed_total = record.total_games();
  row.expected_total = expected_total_games(estimate, first);
  row.residual = row.observed_total - row.expected_total;
  row.p_w = estimate.p_w.value();
  row.p_l = estimate.p_l.value();
  return row;
}

double quantile(std::vector<double> sample, double q) {
  if (sample.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  std::sort(sample.begin(), sample.end());
  const double h = (static_cast<double>(sample.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

namespace {

struct Moments {
  double mean = 0;
  std::optional<double> sd;
  std::optional<double> se;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() >= 2) {
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / (n - 1.0));
    m.se = *m.sd / std::sqrt(n);
  }
  return m;
}

// Loser-first rows sort ahead of winner-first rows.
int server_rank(FirstServer s) { return s == FirstServer::Loser ? 0 : 1; }

}  // namespace

ResidualTables residual_table(const std::vector<ResidualRow>& rows) {
  std::map<std::pair<Tour, int>, std::vector<double>> groups;
  std::map<Tour, std::vector<double>> tours;
  for (const ResidualRow& r : rows) {
    groups[{r.tour, server_rank(r.first_server)}].push_back(r.residual);
    tours[r.tour].push_back(r.residual);
  }

  ResidualTables out;
  for (const auto& [key, values] : groups) {
    const Moments m = moments(values);
    ResidualGroupStats g;
    g.tour = key.first;
    g.first_server = key.second == 0 ? FirstServer::Loser : FirstServer::Winner;
    g.n = values.size();
    g.mean = m.mean;
    g.std_dev = m.sd;
    g.std_error = m.se;
    g.median = quantile(values, 0.5);
    g.q25 = quantile(values, 0.25);
    g.q75 = quantile(values, 0.75);
    out.by_server.push_back(g);
  }
  for (const auto& [tour, values] : tours) {
    const Moments m = moments(values);
    out.overall.push_back(ResidualTourStats{tour, values.size(), m.mean, m.se});
  }
  return out;
}

}  // namespace serve_order
