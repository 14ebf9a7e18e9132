#include <doctest.h>

#include <sstream>

#include "serve_order/ingest.hpp"

using namespace serve_order;

namespace {

const char* kHeader =
    "tourney_id,tourney_date,match_num,score,best_of,w_svpt,w_1stIn,w_1stWon,w_2ndWon,w_bpSaved,w_bpFaced,"
    "l_svpt,l_1stIn,l_1stWon,l_2ndWon,l_bpSaved,l_bpFaced\n";

IngestResult run(const std::string& body, IngestOptions options = {}) {
  std::istringstream in(body);
  return ingest_csv(in, Tour::ATP, options);
}

}  // namespace

TEST_CASE("csv splitting honours quotes") {
  const auto f = split_csv_line(R"(a,"b,c","d ""e""",,f)");
  REQUIRE(f.size() == 5);
  CHECK(f[1] == "b,c");
  CHECK(f[2] == "d \"e\"");
  CHECK(f[3].empty());
}

TEST_CASE("empty input gives an empty result") {
  const auto r = run("");
  CHECK(r.rows_read == 0);
  CHECK(r.accepted.empty());
  CHECK(r.rejections.total() == 0);
  CHECK(run(kHeader).rows_read == 0);
}

TEST_CASE("accepts and rejects rows") {
  std::string body = kHeader;
  body += "2019-0001,20190107,1,6-4 6-4,3,80,50,40,20,2,2,70,45,30,10,1,3\n";
  body += "2019-0001,20190107,2,6-3 4-1 RET,3,40,25,20,8,0,0,38,20,15,8,1,2\n";
  body += "2019-0001,20190107,3,6-4 6-4 6-4,5,80,50,40,20,2,2,70,45,30,10,1,3\n";
  body += "2019-0001,20190107,4,6-4 6-4,3,,50,40,20,2,2,70,45,30,10,1,3\n";
  body += "2019-0001,20190107,5,6-4 3-6 [10-8],3,80,50,40,20,2,2,70,45,30,10,1,3\n";
  body += "2019-0001,20190107,6,6-4 6-4,3,80.0,50.0,40.0,20.0,2.0,2.0,70.0,45.0,30.0,10.0,1.0,3.0\n";
  const auto r = run(body);
  CHECK(r.rows_read == 6);
  REQUIRE(r.accepted.size() == 2);
  CHECK(r.accepted[0].record.match_id == "2019-0001-1");
  CHECK(r.accepted[0].record.year == 2019);
  CHECK(r.accepted[0].estimate.p_w.value() == doctest::Approx(0.75));
  CHECK(r.accepted[1].record.breaks_w == 2);
  CHECK(r.rejections.counts.at(Rejection::Retired) == 1);
  CHECK(r.rejections.counts.at(Rejection::WrongFormat) == 1);
  CHECK(r.rejections.counts.at(Rejection::MissingStats) == 1);
  CHECK(r.rejections.counts.at(Rejection::SuperTiebreak) == 1);
  CHECK(r.rejections.total() == 4);
}

TEST_CASE("year filter") {
  std::string body = kHeader;
  body += "2009-1,20090105,1,6-4 6-4,3,80,50,40,20,2,2,70,45,30,10,1,3\n";
  body += "2015-1,20150105,1,6-4 6-4,3,80,50,40,20,2,2,70,45,30,10,1,3\n";
  IngestOptions opt;
  opt.years = YearRange::parse("2010-2024");
  const auto r = run(body, opt);
  CHECK(r.accepted.size() == 1);
  CHECK(r.rejections.counts.at(Rejection::OutOfRange) == 1);
}

TEST_CASE("missing required column is fatal") {
  CHECK_THROWS_AS(run("score,best_of\n6-4 6-4,3\n"), MissingColumnError);
}

TEST_CASE("column overrides") {
  IngestOptions opt;
  opt.columns.apply_overrides("score=result, best_of = sets");
  CHECK(opt.columns.column("score") == "result");
  CHECK(opt.columns.column("best_of") == "sets");
  std::string header = kHeader;
  header.replace(header.find("score"), 5, "result");
  header.replace(header.find("best_of"), 7, "sets");
  const auto r = run(header + "x,20190107,1,6-4 6-4,3,80,50,40,20,2,2,70,45,30,10,1,3\n", opt);
  CHECK(r.accepted.size() == 1);
  CHECK_THROWS_AS(opt.columns.apply_overrides("nonsense=x"), std::invalid_argument);
  CHECK_THROWS_AS(opt.columns.apply_overrides("score"), std::invalid_argument);
}

TEST_CASE("year ranges") {
  CHECK(YearRange::parse("2019").contains(2019));
  CHECK_FALSE(YearRange::parse("2019").contains(2020));
  CHECK(YearRange::parse("2010-2024").contains(2010));
  CHECK_THROWS_AS(YearRange::parse("2024-2010"), std::invalid_argument);
  CHECK_THROWS_AS(YearRange::parse("20x0"), std::invalid_argument);
}

TEST_CASE("tour from file name") {
  CHECK(tour_from_filename("data/wta_matches_2019.csv") == Tour::WTA);
  CHECK(tour_from_filename("ATP_2020.csv") == Tour::ATP);
  CHECK_FALSE(tour_from_filename("matches.csv").has_value());
}
