#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>

#include "commands.hpp"
#include "output.hpp"
#include "serve_order/empirical.hpp"
#include "serve_order/ingest.hpp"
#include "serve_order/logit.hpp"

namespace cli {

using namespace serve_order;

namespace {

struct Published {
  Tour tour;
  const char* quantity;
  double value;
};

// Published reference values for the 2010-2024 tour-level data.
constexpr Published kPublished[] = {
    {Tour::ATP, "total_matches", 32059},       {Tour::WTA, "total_matches", 38409},
    {Tour::ATP, "determined", 14324},          {Tour::WTA, "determined", 16161},
    {Tour::ATP, "determined_pct", 44.68},      {Tour::WTA, "determined_pct", 42.08},
    {Tour::ATP, "residual_mean_L", 1.847},     {Tour::ATP, "residual_mean_W", 0.201},
    {Tour::WTA, "residual_mean_L", 1.332},     {Tour::WTA, "residual_mean_W", 0.582},
    {Tour::ATP, "residual_mean_overall", 0.792}, {Tour::WTA, "residual_mean_overall", 0.892},
    {Tour::ATP, "beta1", 2.027},               {Tour::WTA, "beta1", 0.587},
    {Tour::ATP, "se_beta1", 0.196},            {Tour::WTA, "se_beta1", 0.170},
    {Tour::ATP, "odds_ratio", 7.591},          {Tour::WTA, "odds_ratio", 1.798},
    {Tour::ATP, "ci_low", 5.168},              {Tour::WTA, "ci_low", 1.289},
    {Tour::ATP, "ci_high", 11.152},            {Tour::WTA, "ci_high", 2.507},
    {Tour::ATP, "p_value", 5.16e-25},          {Tour::WTA, "p_value", 5.42e-4},
};

Cell published(Tour tour, std::string_view quantity) {
  for (const auto& p : kPublished) {
    if (p.tour == tour && p.quantity == quantity) return p.value;
  }
  return Missing{};
}

struct Source {
  std::string name;
  Tour tour;
  std::size_t rows_read = 0;
  std::size_t accepted = 0;
  RejectionCounts rejections;
};

struct Row {
  AcceptedMatch match;
  std::optional<ServerInference> inference;
  std::optional<ResidualRow> residual;
  bool averaged = false;  // indeterminate match, residual from the mean of both hypotheses
};

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(Missing{}); }

double rounded(double v) { return std::stod(num(v)); }

nlohmann::ordered_json record_json(const Row& r) {
  const MatchRecord& m = r.match.record;
  nlohmann::ordered_json j;
  j["tour"] = std::string(to_string(m.tour));
  j["match_id"] = m.match_id;
  j["year"] = m.year ? nlohmann::ordered_json(*m.year) : nlohmann::ordered_json(nullptr);
  j["score"] = m.score;
  auto sets = nlohmann::ordered_json::array();
  for (const ParsedSet& s : m.sets) {
    sets.push_back({{"w", s.winner_games}, {"l", s.loser_games}, {"tiebreak", s.tiebreak}});
  }
  j["sets"] = sets;
  j["g_w"] = m.g_w;
  j["g_l"] = m.g_l;
  j["tiebreaks_w"] = m.tiebreaks_w;
  j["tiebreaks_l"] = m.tiebreaks_l;
  j["breaks_w"] = m.breaks_w;
  j["breaks_l"] = m.breaks_l;
  j["p_w"] = rounded(r.match.estimate.p_w.value());
  j["p_l"] = rounded(r.match.estimate.p_l.value());
  if (r.inference) {
    const ServerInference& inf = *r.inference;
    j["verdict"] = inf.determined() ? "determined" : "indeterminate";
    j["first_server"] = inf.first_server ? nlohmann::ordered_json(std::string(to_string(*inf.first_server)))
                                         : nlohmann::ordered_json(nullptr);
    j["reason"] = std::string(to_string(inf.reason));
    j["sg_w_observed"] = inf.observed_sg_w;
    j["sg_w_if_winner_first"] = inf.sg_w_if_winner_first;
    j["sg_w_if_loser_first"] = inf.sg_w_if_loser_first;
  }
  if (r.residual) {
    j["expected_total"] = rounded(r.residual->expected_total);
    j["residual"] = rounded(r.residual->residual);
    j["residual_basis"] = r.averaged ? "average" : "inferred_server";
  }
  return j;
}

std::string basename(const std::string& path) { return std::filesystem::path(path).filename().string(); }

}  // namespace

void add_pipeline(CLI::App& app, const std::string& name, Stage stage, PipelineOptions& o) {
  static const char* help[] = {
      "Parse match files, estimate serve probabilities, audit rejections",
      "Ingest, then infer the first server from set parity and break counts",
      "Infer, then tabulate total-games residuals by first server",
      "Infer, then fit the logistic regression of first server on serve superiority",
  };
  auto* sub = app.add_subcommand(name, help[static_cast<int>(stage)]);
  o.stage = stage;
  sub->add_option("--input", o.inputs, "Match CSV file(s)")->required();
  sub->add_option("--tour", o.tour, "ATP or WTA (default: from each file name)");
  sub->add_option("--columns", o.columns, "Column overrides, e.g. score=result,w_svpt=w_serve_points");
  sub->add_option("--years", o.years, "Season filter, e.g. 2010-2024");
  if (stage == Stage::Residuals) {
    sub->add_option("--indeterminate", o.indeterminate,
                    "exclude: drop matches without a verdict; average: use the mean of both hypotheses "
                    "(overall table only)")
        ->capture_default_str()
        ->check(CLI::IsMember({"exclude", "average"}));
  }
  sub->add_option("--format", o.format, "Table format: csv or jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--out", o.out, "Output directory")->required();
}

int run_pipeline(const PipelineOptions& o) {
  IngestOptions ingest;
  if (!o.columns.empty()) ingest.columns.apply_overrides(o.columns);
  if (!o.years.empty()) ingest.years = YearRange::parse(o.years);
  const std::optional<Tour> forced = o.tour.empty() ? std::nullopt : std::optional<Tour>(parse_tour(o.tour));

  std::vector<Source> sources;
  std::vector<Row> rows;
  std::set<Tour> tours;
  for (const std::string& path : o.inputs) {
    const std::optional<Tour> tour = forced ? forced : tour_from_filename(path);
    if (!tour) throw std::invalid_argument("cannot tell the tour of '" + path + "'; pass --tour");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    IngestResult result;
    try {
      result = ingest_csv(in, *tour, ingest);
    } catch (const MissingColumnError& e) {
      throw MissingColumnError(path + ": " + e.what());
    }
    if (in.bad()) throw IoError("read error on '" + path + "'");
    tours.insert(*tour);
    sources.push_back(Source{basename(path), *tour, result.rows_read, result.accepted.size(), result.rejections});
    for (AcceptedMatch& m : result.accepted) rows.push_back(Row{std::move(m), std::nullopt, std::nullopt, false});
  }

  std::string inputs;
  for (const auto& s : sources) inputs += (inputs.empty() ? "" : ";") + s.name;
  Meta meta{{"command", o.stage == Stage::Ingest      ? "ingest"
                        : o.stage == Stage::Infer     ? "infer"
                        : o.stage == Stage::Residuals ? "residuals"
                                                      : "logit"},
            {"inputs", inputs},
            {"years", o.years.empty() ? "all" : o.years},
            {"columns", o.columns.empty() ? "default" : o.columns},
            {"filters", "best_of_3+completed+positive_serve_points"}};
  const Format format = parse_format(o.format);
  const std::string ext(extension(format));

  std::vector<std::vector<Cell>> summary, audit;
  for (const Source& s : sources) {
    summary.push_back({std::string(to_string(s.tour)), s.name, static_cast<long long>(s.rows_read),
                       static_cast<long long>(s.accepted), static_cast<long long>(s.rejections.total())});
    for (Rejection r : kAllRejections) {
      const auto it = s.rejections.counts.find(r);
      audit.push_back({std::string(to_string(s.tour)), s.name, std::string(to_string(r)),
                       static_cast<long long>(it == s.rejections.counts.end() ? 0 : it->second)});
    }
  }
  write_table(output_path(o.out, "ingest_summary" + ext), format, meta,
              {"tour", "source", "rows_read", "accepted", "rejected"}, summary);
  write_table(output_path(o.out, "rejections" + ext), format, meta, {"tour", "source", "reason", "count"}, audit);

  std::vector<std::vector<Cell>> reference;
  const auto compare = [&](Tour tour, const std::string& quantity, Cell computed) {
    reference.push_back({std::string(to_string(tour)), quantity, computed, published(tour, quantity)});
  };

  if (o.stage >= Stage::Infer) {
    for (Row& r : rows) r.inference = infer_first_server(r.match.record);
    std::vector<std::vector<Cell>> table;
    for (Tour tour : tours) {
      long long total = 0, determined = 0;
      for (const Row& r : rows) {
        if (r.match.record.tour != tour) continue;
        ++total;
        determined += r.inference->determined();
      }
      const Cell pct = total ? Cell(100.0 * static_cast<double>(determined) / static_cast<double>(total)) : Missing{};
      table.push_back({std::string(to_string(tour)), total, determined, total - determined, pct});
      compare(tour, "total_matches", static_cast<double>(total));
      compare(tour, "determined", static_cast<double>(determined));
      compare(tour, "determined_pct", pct);
    }
    write_table(output_path(o.out, "first_server_inference" + ext), format, meta,
                {"Tour", "Total Matches", "Determined", "Indeterminate", "Determined (%)"}, table);
  }

  if (o.stage == Stage::Residuals) {
    const bool average = o.indeterminate == "average";
    meta.emplace_back("indeterminate", o.indeterminate);
    meta.emplace_back("orientation", "winner_as_A");
    std::vector<ResidualRow> determined_rows, all_rows;
    for (Row& r : rows) {
      const MatchRecord& m = r.match.record;
      if (r.inference->determined()) {
        r.residual = make_residual_row(m, r.match.estimate, *r.inference->first_server);
        determined_rows.push_back(*r.residual);
        all_rows.push_back(*r.residual);
      } else if (average) {
        ResidualRow row = make_residual_row(m, r.match.estimate, FirstServer::Winner);
        row.expected_total = 0.5 * (row.expected_total + expected_total_games(r.match.estimate, FirstServer::Loser));
        row.residual = row.observed_total - row.expected_total;
        r.residual = row;
        r.averaged = true;
        all_rows.push_back(row);
      }
    }
    const ResidualTables by_server = residual_table(determined_rows);
    const ResidualTables overall = residual_table(all_rows);

    std::vector<std::vector<Cell>> t2, t3;
    for (const auto& g : by_server.by_server) {
      const std::string fs(to_string(g.first_server));
      t2.push_back({std::string(to_string(g.tour)), fs, static_cast<long long>(g.n), g.mean, opt(g.std_dev),
                    opt(g.std_error), g.median, g.q25, g.q75});
      compare(g.tour, "residual_mean_" + fs, g.mean);
    }
    for (const auto& g : overall.overall) {
      t3.push_back({std::string(to_string(g.tour)), g.mean, opt(g.std_error)});
      compare(g.tour, "residual_mean_overall", g.mean);
    }
    for (Tour tour : tours) {
      bool any = false;
      for (const auto& g : by_server.by_server) any = any || g.tour == tour;
      if (!any) std::cerr << "serve_order: no determined matches for " << to_string(tour) << "; residual groups omitted\n";
    }
    write_table(output_path(o.out, "residuals_by_server" + ext), format, meta,
                {"Tour", "First Server", "n", "Mean", "Std", "SE", "Median", "Q25", "Q75"}, t2);
    write_table(output_path(o.out, "residuals_overall" + ext), format, meta, {"Tour", "Mean Residual", "SE"}, t3);
  }

  if (o.stage == Stage::Logit) {
    meta.emplace_back("response", "winner_served_first");
    meta.emplace_back("covariate", "p_w_minus_p_l");
    meta.emplace_back("inference", "wald_95");
    std::vector<std::vector<Cell>> table, detail;
    for (Tour tour : tours) {
      std::vector<LogitObservation> data;
      for (const Row& r : rows) {
        if (r.match.record.tour != tour || !r.inference->determined()) continue;
        data.push_back({*r.inference->first_server == FirstServer::Winner ? 1 : 0,
                        r.match.estimate.p_w.value() - r.match.estimate.p_l.value()});
      }
      const std::string t(to_string(tour));
      try {
        const LogitFit f = fit_logit(data);
        table.push_back({t, f.beta1, f.se1, f.odds_ratio, f.ci_low, f.ci_high, f.p_value});
        detail.push_back({t, static_cast<long long>(f.n), f.beta0, f.se0, f.beta1, f.se1,
                          static_cast<long long>(f.iterations), std::string(f.converged ? "yes" : "no")});
        compare(tour, "beta1", f.beta1);
        compare(tour, "se_beta1", f.se1);
        compare(tour, "odds_ratio", f.odds_ratio);
        compare(tour, "ci_low", f.ci_low);
        compare(tour, "ci_high", f.ci_high);
        compare(tour, "p_value", f.p_value);
      } catch (const std::exception& e) {
        // Too few determined matches, one class only, or separation.
        std::cerr << "serve_order: " << t << " logistic fit skipped: " << e.what() << '\n';
        table.push_back({t, Missing{}, Missing{}, Missing{}, Missing{}, Missing{}, Missing{}});
        detail.push_back({t, static_cast<long long>(data.size()), Missing{}, Missing{}, Missing{}, Missing{},
                          Missing{}, std::string("no")});
        for (const char* q : {"beta1", "se_beta1", "odds_ratio", "ci_low", "ci_high", "p_value"}) {
          compare(tour, q, Missing{});
        }
      }
    }
    write_table(output_path(o.out, "logit" + ext), format, meta,
                {"Tour", "beta1", "SE", "Odds Ratio", "95% CI Lower", "95% CI Upper", "p-value"}, table);
    write_table(output_path(o.out, "logit_detail" + ext), format, meta,
                {"Tour", "n", "beta0", "se_beta0", "beta1", "se_beta1", "iterations", "converged"}, detail);
  }

  if (o.stage >= Stage::Infer) {
    write_table(output_path(o.out, "reference_comparison" + ext), format, meta,
                {"tour", "quantity", "computed", "published"}, reference);
  }

  Sink records(output_path(o.out, "records.jsonl"));
  for (const Row& r : rows) records.out() << record_json(r).dump() << '\n';
  records.finish();
  return kOk;
}

}  // namespace cli
