#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "doctest.h"

#include "clockgap/cli.hpp"
#include "clockgap/report.hpp"

using namespace clockgap;
using namespace clockgap::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"clockgap"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("argument parsers") {
  CHECK(parse_d_range("7").first == 7);
  CHECK(parse_d_range("7").last == 7);
  const auto r = parse_d_range("2..64");
  CHECK(r.first == 2);
  CHECK(r.last == 64);
  CHECK_THROWS_AS(parse_d_range("1"), ParameterError);
  CHECK_THROWS_AS(parse_d_range("9..3"), ParameterError);
  CHECK_THROWS_AS(parse_d_range("abc"), ParameterError);
  CHECK_THROWS_AS(parse_d_range("2..x"), ParameterError);

  CHECK(*parse_s_spec("0.25").value == 0.25);
  CHECK(parse_s_spec("steps=11").steps == 11);
  CHECK(parse_s_spec("steps=11").points().size() == 11);
  CHECK_THROWS_AS(parse_s_spec("steps=1"), ParameterError);
  CHECK_THROWS_AS(parse_s_spec("1.5"), ParameterError);
  CHECK_THROWS_AS(parse_s_spec("half"), ParameterError);

  const auto b = parse_blocks("1,2,7");
  REQUIRE(b.size() == 3);
  CHECK(b[2].b == 7.0);
  const auto m = parse_blocks("1x2, 3\xC3\x97" "4;5*2");
  REQUIRE(m.size() == 3);
  CHECK(m[0] == ClockBlock<double>{1.0, 2});
  CHECK(m[1] == ClockBlock<double>{3.0, 4});
  CHECK(m[2] == ClockBlock<double>{5.0, 2});
  CHECK_THROWS_AS(parse_blocks("0.5"), ParameterError);
  CHECK_THROWS_AS(parse_blocks("1,,2"), ParameterError);
  CHECK_THROWS_AS(parse_blocks("1x0"), ParameterError);
}

TEST_CASE("spectrum command") {
  SUBCASE("lemma case prints closed-form deltas") {
    const auto r = invoke({"spectrum", "--d", "2", "--s", "1", "--b", "0.5", "--k", "2"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(std::stod(rows[1][1]) - 0.19098300562505258) <= 1e-12);
    CHECK(std::abs(std::stod(rows[2][1]) - 1.3090169943749475) <= 1e-12);
    CHECK(std::abs(std::stod(rows[1][7])) <= 1e-12);
    CHECK(std::abs(std::stod(rows[2][7])) <= 1e-12);
  }
  SUBCASE("diagonal case") {
    const auto r = invoke({"spectrum", "--d", "4", "--s", "0", "--k", "4"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 5);
    const double expected[] = {0, 1, 1, 1};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(std::stod(rows[i + 1][1]) - expected[i]) <= 1e-12);
    CHECK(rows[1][6].empty());
  }
  SUBCASE("Neumann d = 3 in JSON") {
    const auto r = invoke({"spectrum", "--d", "3", "--s", "1", "--k", "3", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    const double expected[] = {0.0, 0.5, 1.5};
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(j["eigenpairs"][i]["lambda"].get<double>() - expected[i]) <= 1e-12);
      CHECK(j["eigenpairs"][i]["operator_residual"].get<double>() <= 1e-9);
    }
  }
  SUBCASE("bad arguments") {
    CHECK(invoke({"spectrum", "--d", "3", "--k", "4"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--d", "2..4"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--d", "3", "--s", "steps=3"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--d", "3", "--b", "-1"}).code == kExitUsage);
    CHECK(invoke({"spectrum", "--d", "3", "--tol", "0"}).code == kExitUsage);
  }
}

TEST_CASE("bounds command") {
  const auto r = invoke({"bounds", "--d", "10", "--s", "0.5"});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][7] == "lambda2_lower");
  CHECK(std::abs(std::stod(rows[1][7]) - 0.50558458688743572747) <= 1e-15);

  const auto g = invoke({"bounds", "--d", "3..5", "--s", "steps=4", "--format", "json"});
  REQUIRE(g.code == kExitOk);
  CHECK(nlohmann::json::parse(g.out).size() == 12);
}

TEST_CASE("sweep command") {
  SUBCASE("single d") {
    const auto r = invoke({"sweep", "--d", "10", "--s", "steps=11", "--format", "csv"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(r.out.substr(0, r.out.find('\n')) == kSweepCsvHeader);
    CHECK(std::abs(std::stod(rows[1][4]) - 1.0) <= 2e-12);
    CHECK(rows[1][5].empty());
  }
  SUBCASE("family columns") {
    const auto r = invoke({"sweep", "--d", "10", "--blocks", "1,2,7", "--s", "steps=11"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].size() == 13);
      CHECK(std::abs(std::stod(rows[i][5]) - std::stod(rows[i][2])) <= 1e-10);
    }
  }
  SUBCASE("d range is cartesian, ordered by (d, s)") {
    const auto r = invoke({"sweep", "--d", "2..4", "--s", "steps=3"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 10);
    const char* d_expected[] = {"2", "2", "2", "3", "3", "3", "4", "4", "4"};
    const char* s_expected[] = {"0", "0.5", "1", "0", "0.5", "1", "0", "0.5", "1"};
    for (int i = 0; i < 9; ++i) {
      CHECK(rows[i + 1][0] == d_expected[i]);
      CHECK(rows[i + 1][1] == s_expected[i]);
    }
  }
  SUBCASE("single s is rejected") {
    CHECK(invoke({"sweep", "--d", "4", "--s", "0.5"}).code == kExitUsage);
  }
}

TEST_CASE("certify command") {
  SUBCASE("Theorem range without and with a family") {
    const auto r = invoke({"certify", "--d", "2..64"});
    CHECK(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 64);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][10] == "true");
    CHECK(invoke({"certify", "--d", "2..64", "--blocks", "1"}).code == kExitOk);
  }
  SUBCASE("d = 2 lower verdict is not applicable") {
    const auto r = invoke({"certify", "--d", "2", "--tol", "1e-12", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["verdict_lower"] == "not-applicable");
    CHECK(j[0]["verdict_floor"] == true);
    CHECK(certificate_from_json(j[0]).d == 2);
  }
  SUBCASE("output file") {
    const std::string path = "test_cli_certify.json";
    const auto r = invoke({"certify", "--d", "5", "--s", "steps=51", "--format", "json", "--out",
                           path.c_str()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j[0]["grid_size"] == 51);
    CHECK(j[0]["low_resolution"] == true);
    std::remove(path.c_str());
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"certify"}).code == kExitUsage);
  CHECK(invoke({"certify", "--d", "2..4", "--bogus"}).code == kExitUsage);
  CHECK(invoke({"certify", "--d", "x..4"}).code == kExitUsage);
  CHECK(invoke({"certify", "--d", "4", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"certify", "--d", "4", "--blocks", "0.5"}).code == kExitUsage);
  CHECK(invoke({"certify", "--d", "4", "--out", "/nonexistent/dir/file"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("selftest command") {
  const auto ok = invoke({"selftest"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const auto loose = invoke({"selftest", "--tol", "1e-6"});
  CHECK(loose.code == kExitOk);

  const auto corrupted = invoke({"selftest", "--inject-mu0-scale", "1.1"});
  CHECK(corrupted.code == kExitCertificationFailed);
  CHECK(corrupted.out.find("mu0_vs_solver") != std::string::npos);
  CHECK(corrupted.out.find("FAIL") != std::string::npos);

  // hidden flag stays out of the help text
  CHECK(invoke({"selftest", "--help"}).out.find("inject") == std::string::npos);
}
