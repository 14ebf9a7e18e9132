#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "serve_order/analytic.hpp"
#include "serve_order/ingest.hpp"
#include "serve_order/match.hpp"

using namespace serve_order;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SERVE_ORDER_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

using Row = std::map<std::string, std::string>;

// Rows of the first CSV block in `text`; '#' lines are metadata.
std::vector<Row> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (!header.empty()) break;
      continue;
    }
    if (line.front() == '#') {
      if (!header.empty()) break;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (header.empty()) {
      header = fields;
      continue;
    }
    Row row;
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("serve_order_cli_" + name);
  fs::remove_all(p);
  return p;
}

double num(const Row& row, const std::string& col) { return std::stod(row.at(col)); }

const Row& find_quantity(const std::vector<Row>& rows, const std::string& q) {
  for (const Row& r : rows) {
    if (r.at("quantity") == q) return r;
  }
  FAIL("missing quantity " << q);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("point") {
  TEST_CASE("equal serve probabilities: totals differences vanish") {
    const Run r = run("point --pa 0.6 --pb 0.6");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(std::abs(num(find_quantity(rows, "set_games"), "diff")) < 1e-12);
    CHECK(std::abs(num(find_quantity(rows, "match_games"), "diff")) < 1e-12);
  }

  TEST_CASE("values agree with the engine") {
    const Run r = run("point --pa 0.7 --pb 0.6");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    const SetModel model = SetModel::from(ServeParams(0.7, 0.6));
    const auto m = match_expectations(model);
    const auto& games = find_quantity(rows, "match_games");
    CHECK(num(games, "a_first") == doctest::Approx(m.t_match_a).epsilon(1e-10));
    CHECK(num(games, "b_first") == doctest::Approx(m.t_match_b).epsilon(1e-10));
    const double over_a = over_line_prob(match_distribution(model, Player::A), 19.5).value();
    const double over_b = over_line_prob(match_distribution(model, Player::B), 19.5).value();
    const auto& over = find_quantity(rows, "over_19.5");
    CHECK(num(over, "diff") == doctest::Approx(over_a - over_b).epsilon(1e-10));
    CHECK(std::abs(num(over, "diff")) == doctest::Approx(0.09).epsilon(0.12));
  }

  TEST_CASE("--server B flips the diff column") {
    const auto a = parse_csv(run("point --pa 0.7 --pb 0.6").out);
    const auto b = parse_csv(run("point --pa 0.7 --pb 0.6 --server B").out);
    CHECK(num(find_quantity(a, "match_games"), "diff") == doctest::Approx(-num(find_quantity(b, "match_games"), "diff")));
  }

  TEST_CASE("jsonl output") {
    const Run r = run("point --pa 0.7 --pb 0.6 --format jsonl");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("{\"_meta\":", 0) == 0);
    CHECK(r.out.find("\"quantity\":\"over_19.5\"") != std::string::npos);
  }
}

TEST_SUITE("scan") {
  TEST_CASE("totals differences vanish on the diagonal") {
    const Run r = run("scan --quantity totals-diff --grid-max 0.6");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() == 21 * 22 / 2);
    int diagonal = 0;
    for (const Row& row : rows) {
      if (row.at("p_a") != row.at("p_b")) continue;
      ++diagonal;
      CHECK(std::abs(num(row, "totals_diff")) < 1e-9);
    }
    CHECK(diagonal == 21);
  }

  TEST_CASE("thread count does not change the output") {
    CHECK(run("scan --quantity margin-diff --grid-max 0.6 --threads 4").out ==
          run("scan --quantity margin-diff --grid-max 0.6").out);
  }

  TEST_CASE("overline scan writes a summary next to the rows") {
    const fs::path dir = scratch("scan");
    const Run r = run("scan --quantity overline-diff --out " + (dir / "nested" / "ol.csv").string());
    REQUIRE(r.exit_code == 0);
    const auto summary = parse_csv(slurp(dir / "nested" / "ol.summary.csv"));
    REQUIRE(summary.size() == 5);
    CHECK(summary[1].at("line") == "19.5");
    CHECK(num(summary[1], "max_abs_diff") == doctest::Approx(0.0884405481136).epsilon(1e-9));
    CHECK(!parse_csv(slurp(dir / "nested" / "ol.csv")).empty());
    fs::remove_all(dir);
  }
}

TEST_SUITE("simulate") {
  TEST_CASE("fixed seed gives byte-identical output") {
    const Run a = run("simulate --n 20000 --seed 11 --partitions 3");
    const Run b = run("simulate --n 20000 --seed 11 --partitions 3");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != run("simulate --n 20000 --seed 12 --partitions 3").out);
  }

  TEST_CASE("simulated quantities sit within four standard errors") {
    const Run r = run("simulate --n 200000 --seed 5 --partitions 4");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() > 30);
    for (const Row& row : rows) {
      INFO(row.at("quantity"));
      CHECK(std::abs(num(row, "z")) <= 4.0);
    }
  }

  TEST_CASE("degenerate parameters give a single outcome") {
    const fs::path dir = scratch("sim");
    const Run r = run("simulate --pa 1 --pb 0 --n 50 --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    const auto tally = parse_csv(slurp(dir / "tally.csv"));
    REQUIRE(tally.size() == 1);
    CHECK(tally[0].at("count") == "50");
    CHECK(tally[0].at("total_games") == "12");
    fs::remove_all(dir);
  }
}

TEST_SUITE("pipeline") {
  const std::string fixture = std::string(SERVE_ORDER_TEST_DATA) + "/fixture_six.csv";

  TEST_CASE("fixture verdicts and residual tables") {
    const fs::path dir = scratch("pipe");
    REQUIRE(run("residuals --tour ATP --input " + fixture + " --out " + dir.string()).exit_code == 0);
    const auto inference = parse_csv(slurp(dir / "first_server_inference.csv"));
    REQUIRE(inference.size() == 1);
    CHECK(inference[0].at("Determined") == "4");
    CHECK(inference[0].at("Indeterminate") == "2");
    const auto groups = parse_csv(slurp(dir / "residuals_by_server.csv"));
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].at("First Server") == "L");
    CHECK(num(groups[0], "Mean") == doctest::Approx(-1.349149165244965).epsilon(1e-10));
    CHECK(num(groups[1], "Mean") == doctest::Approx(0.16411634650827622).epsilon(1e-10));
    CHECK(num(groups[1], "SE") == doctest::Approx(5.654319062824025).epsilon(1e-10));
    const auto overall = parse_csv(slurp(dir / "residuals_overall.csv"));
    REQUIRE(overall.size() == 1);
    CHECK(num(overall[0], "Mean Residual") == doctest::Approx(-0.5925164093683444).epsilon(1e-10));
    fs::remove_all(dir);
  }

  TEST_CASE("empty input succeeds with empty tables") {
    const fs::path dir = scratch("empty");
    fs::create_directories(dir);
    { std::ofstream(dir / "atp_empty.csv"); }
    REQUIRE(run("infer --input " + (dir / "atp_empty.csv").string() + " --out " + (dir / "out").string()).exit_code ==
            0);
    CHECK(fs::exists(dir / "out" / "first_server_inference.csv"));
    fs::remove_all(dir);
  }
}

TEST_SUITE("exit codes") {
  TEST_CASE("usage errors") {
    CHECK(run("").exit_code == 1);
    CHECK(run("point --pa 0.6").exit_code == 1);
    CHECK(run("scan --quantity nonsense").exit_code == 1);
  }

  TEST_CASE("io errors") {
    CHECK(run("ingest --tour ATP --input /nonexistent/atp.csv --out /tmp/serve_order_cli_io").exit_code == 2);
  }

  TEST_CASE("validation errors") {
    CHECK(run("point --pa 2 --pb 0.5").exit_code == 3);
    CHECK(run("point --pa 0.7 --pb 0.6 --lines 19").exit_code == 3);
    CHECK(run("scan --quantity totals-diff --grid-min 0.7 --grid-max 0.6").exit_code == 3);
    CHECK(run("infer --tour XYZ --input " + std::string(SERVE_ORDER_TEST_DATA) + "/fixture_six.csv --out /tmp/x")
              .exit_code == 3);
  }

  TEST_CASE("version") {
    const Run r = run("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(SERVE_ORDER_VERSION) != std::string::npos);
  }
}
