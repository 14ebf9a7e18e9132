#include <filesystem>

#include "commands.hpp"
#include "output.hpp"
#include "serve_order/scan.hpp"

namespace cli {

using namespace serve_order;

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

// "out/grid.csv" -> "out/grid.summary.csv"
std::string summary_path(const std::string& out, Format f) {
  if (out.empty() || out == "-") return out;
  std::filesystem::path p(out);
  p.replace_extension();
  return p.string() + ".summary" + std::string(extension(f));
}

}  // namespace

void add_scan(CLI::App& app, ScanOptions& o) {
  auto* sub = app.add_subcommand("scan", "Grid scan over grid-min <= pb <= pa <= grid-max");
  sub->add_option("--quantity", o.quantity, "What to emit")
      ->required()
      ->check(CLI::IsMember({"totals-diff", "margin-diff", "set-vs-match-diff", "overline-diff", "shift-approx"}));
  sub->add_option("--grid-min", o.grid_min, "Lower grid bound")->capture_default_str();
  sub->add_option("--grid-max", o.grid_max, "Upper grid bound")->capture_default_str();
  sub->add_option("--step", o.step, "Grid step (default 0.01 for overline-diff, else 0.005)");
  sub->add_option("--lines", o.lines, "Totals lines for overline-diff")->delimiter(',')->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads; output does not depend on it")->capture_default_str();
  sub->add_option("--format", o.format, "csv or jsonl")->capture_default_str()->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--out", o.out, "Output file (default stdout)");
}

int run_scan(const ScanOptions& o) {
  ScanSpec spec;
  spec.p_min = o.grid_min;
  spec.p_max = o.grid_max;
  spec.step = o.step > 0 ? o.step : (o.quantity == "overline-diff" ? 0.01 : 0.005);
  spec.lines = o.lines;
  spec.threads = o.threads;
  spec.validate();

  const Format format = parse_format(o.format);
  Meta meta{{"command", "scan"},
            {"quantity", o.quantity},
            {"grid_min", num(spec.p_min)},
            {"grid_max", num(spec.p_max)},
            {"step", num(spec.step)},
            {"sign", "A_first_minus_B_first"}};

  std::vector<std::vector<Cell>> rows;
  if (o.quantity == "totals-diff") {
    for (const auto& r : scan_expectations(spec)) {
      rows.push_back({r.at.p_a, r.at.p_b, r.t_match_a, r.t_match_b, r.match_totals_diff()});
    }
    write_table(o.out, format, meta, {"p_a", "p_b", "t_match_a", "t_match_b", "totals_diff"}, rows);
  } else if (o.quantity == "margin-diff") {
    for (const auto& r : scan_expectations(spec)) {
      rows.push_back({r.at.p_a, r.at.p_b, r.h_match_a, r.h_match_b, r.match_margin_diff()});
    }
    write_table(o.out, format, meta, {"p_a", "p_b", "h_match_a", "h_match_b", "margin_diff"}, rows);
  } else if (o.quantity == "set-vs-match-diff") {
    for (const auto& r : scan_expectations(spec)) {
      rows.push_back({r.at.p_a, r.at.p_b, r.set_totals_diff(), r.match_totals_diff(),
                      r.match_totals_diff() - r.set_totals_diff(), r.set_margin_diff(), r.match_margin_diff(),
                      r.match_margin_diff() - r.set_margin_diff()});
    }
    write_table(o.out, format, meta,
                {"p_a", "p_b", "set_totals_diff", "match_totals_diff", "totals_adjustment", "set_margin_diff",
                 "match_margin_diff", "margin_adjustment"},
                rows);
  } else if (o.quantity == "overline-diff") {
    meta.emplace_back("lines", join(spec.lines));
    const OverlineScan scan = scan_overline(spec);
    for (const auto& r : scan.rows) {
      for (std::size_t k = 0; k < spec.lines.size(); ++k) {
        rows.push_back({r.at.p_a, r.at.p_b, spec.lines[k], r.over_a[k], r.over_b[k], r.diff(k)});
      }
    }
    std::vector<std::vector<Cell>> summary;
    for (const auto& s : scan.summary) {
      summary.push_back({s.line, s.mean_diff, s.max_abs_diff, s.argmax.p_a, s.argmax.p_b, s.diff_at_argmax});
    }
    const std::vector<std::string> summary_cols{"line",       "mean_diff",  "max_abs_diff",
                                                "argmax_p_a", "argmax_p_b", "diff_at_argmax"};
    if (o.out.empty() || o.out == "-") {
      // One stream: grid block, then the summary block.
      Sink sink(o.out);
      {
        TableWriter w(sink.out(), format, meta, {"p_a", "p_b", "line", "over_a", "over_b", "diff"});
        for (const auto& r : rows) w.row(r);
      }
      Meta smeta = meta;
      smeta.emplace_back("block", "summary");
      TableWriter w(sink.out(), format, smeta, summary_cols);
      for (const auto& r : summary) w.row(r);
      sink.finish();
    } else {
      write_table(o.out, format, meta, {"p_a", "p_b", "line", "over_a", "over_b", "diff"}, rows);
      write_table(summary_path(o.out, format), format, meta, summary_cols, summary);
    }
  } else {
    meta.emplace_back("centre", "0.6");
    for (const auto& r : scan_shift_approx(spec)) {
      rows.push_back({r.at.p_a, r.at.p_b, r.at.p_a - r.at.p_b, r.exact, r.approx, r.error});
    }
    write_table(o.out, format, meta, {"p_a", "p_b", "delta", "exact", "approx", "error"}, rows);
  }
  return kOk;
}

}  // namespace cli
