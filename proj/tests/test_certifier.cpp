#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"

#include "clockgap/certifier.hpp"
#include "dense_oracle.hpp"

using namespace clockgap;

namespace {

const double pi = std::numbers::pi;

double closed_gap_d2(double s) { return std::sqrt(1 - 2 * s + 2 * s * s); }

bool same_rows(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].s != b[i].s || a[i].lambda1 != b[i].lambda1 || a[i].lambda2 != b[i].lambda2 ||
        a[i].Lambda1 != b[i].Lambda1 || a[i].Lambda2 != b[i].Lambda2) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("grid") {
  const auto g = SGrid::uniform(11);
  REQUIRE(g.points.size() == 11);
  CHECK(g.points.front() == 0.0);
  CHECK(g.points.back() == 1.0);
  CHECK(g.points[5] == 0.5);
  CHECK_THROWS_AS(SGrid::uniform(1), ParameterError);
}

TEST_CASE("family two lowest") {
  SUBCASE("ground block only") {
    const FamilySpec only(7, {{0.0, 1}});
    for (double s : {0.0, 0.4, 1.0}) CHECK(family_two_lowest(only, s) == two_lowest(build_h0(7, s)));
  }
  SUBCASE("repeated block") {
    const auto fam = FamilySpec::with_ground_block(6, {{1.0, 2}});
    for (double s : {0.1, 0.5, 0.9}) {
      const auto [L1, L2] = family_two_lowest(fam, s);
      const auto [l1, l2] = two_lowest(build_h0(6, s));
      const double h1 = two_lowest(build_hj(6, s, 1.0)).first;
      CHECK(L1 == l1);
      CHECK(L2 == std::min(l2, h1));
    }
  }
  SUBCASE("dense oracle at d = 3") {
    const auto fam = FamilySpec::with_ground_block(3, {{1.0, 1}});
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(6, 6);
    big.topLeftCorner(3, 3) = oracle::hj(3, 0.5, 0.0);
    big.bottomRightCorner(3, 3) = oracle::hj(3, 0.5, 1.0);
    const auto ev = oracle::eigenvalues(big);
    const auto [L1, L2] = family_two_lowest(fam, 0.5);
    CHECK(std::abs(L1 - ev[0]) <= 1e-11);
    CHECK(std::abs(L2 - ev[1]) <= 1e-11);
    CHECK(L1 == two_lowest(build_h0(3, 0.5)).first);
  }
  SUBCASE("multiplicity-aware merge against a materialized direct sum") {
    // {0, 1 x3, 1.5} at s = 1: blocks with b >= 1 all sit above mu0.
    const auto fam = FamilySpec::with_ground_block(4, {{1.0, 3}, {1.5, 1}});
    for (double s : {0.0, 0.3, 0.8, 1.0}) {
      Eigen::MatrixXd big = Eigen::MatrixXd::Zero(20, 20);
      big.block(0, 0, 4, 4) = oracle::hj(4, s, 0.0);
      for (int j = 1; j <= 3; ++j) big.block(4 * j, 4 * j, 4, 4) = oracle::hj(4, s, 1.0);
      big.block(16, 16, 4, 4) = oracle::hj(4, s, 1.5);
      const auto ev = oracle::eigenvalues(big);
      const auto [L1, L2] = family_two_lowest(fam, s);
      CHECK(std::abs(L1 - ev[0]) <= 1e-11);
      CHECK(std::abs(L2 - ev[1]) <= 1e-11);
    }
  }
}

TEST_CASE("property: adding blocks never raises Lambda2") {
  const int d = 9;
  std::vector<ClockBlock<double>> blocks;
  std::vector<double> previous(21, INFINITY);
  for (double b : {7.0, 3.0, 1.0, 1.0, 2.5}) {
    blocks.push_back({b, 1});
    const auto fam = FamilySpec::with_ground_block(d, blocks);
    for (int i = 0; i <= 20; ++i) {
      const double s = i / 20.0;
      const auto [L1, L2] = family_two_lowest(fam, s);
      CHECK(L2 <= previous[i]);
      CHECK(L2 >= std::min(lambda2_lower(d, s), block_lower_bound(d, s, 1.0)) - 1e-9);
      previous[i] = L2;
    }
  }
}

TEST_CASE("sweep rows") {
  const auto rows = sweep(2, std::nullopt, SGrid::uniform(3));
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[0].gap - 1.0) <= 2e-12);
  CHECK(std::abs(rows[1].gap - std::sqrt(0.5)) <= 2e-12);
  CHECK(std::abs(rows[2].gap - 1.0) <= 2e-12);
  CHECK_FALSE(rows[0].Lambda1.has_value());
  CHECK_FALSE(rows[0].family_gap.has_value());

  for (int d : {3, 8, 31}) {
    const auto r = sweep(d, std::nullopt, SGrid::uniform(5));
    CHECK(std::abs(r.front().gap - 1.0) <= 2e-12);
    CHECK(std::abs(r.back().gap - (1 - std::cos(pi / d))) <= 2e-12);
    for (const auto& row : r) {
      CHECK(row.d == d);
      CHECK(row.gap >= 0.0);
      CHECK(row.margin_vs_floor == row.gap - row.floor);
      CHECK(row.floor == gap_floor(d));
      CHECK(row.upper_min == variational_upper(d, row.s));
      CHECK(row.lambda2_lower == lambda2_lower(d, row.s));
      CHECK(row.gap_lower == gap_lower_g(d, row.s));
    }
  }

  const auto fam = FamilySpec::with_ground_block(10, {{1.0, 1}, {2.0, 1}, {7.0, 1}});
  const auto fr = sweep(10, fam, SGrid::uniform(11));
  for (const auto& row : fr) {
    REQUIRE(row.Lambda1.has_value());
    CHECK(std::abs(*row.Lambda1 - row.lambda1) <= 1e-10);
    CHECK(*row.family_gap == *row.Lambda2 - *row.Lambda1);
    CHECK(*row.family_gap <= row.gap);
  }
}

TEST_CASE("sweep errors") {
  SGrid missing_end{{0.0, 0.5}};
  CHECK_THROWS_AS(sweep(4, std::nullopt, missing_end), ParameterError);
  SGrid unsorted{{0.0, 0.7, 0.3, 1.0}};
  CHECK_THROWS_AS(sweep(4, std::nullopt, unsorted), ParameterError);
  const auto fam = FamilySpec::with_ground_block(5, {{1.0, 1}});
  CHECK_THROWS_AS(sweep(4, fam, SGrid::uniform(3)), DimensionError);
  CHECK_THROWS_AS(sweep(1, std::nullopt, SGrid::uniform(3)), DimensionError);
}

TEST_CASE("sweep is deterministic across thread counts") {
  const auto fam = FamilySpec::with_ground_block(24, {{1.0, 2}, {3.0, 1}});
  setenv("CLOCKGAP_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto serial = sweep(24, fam, SGrid::uniform(101));
  setenv("CLOCKGAP_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  const auto parallel = sweep(24, fam, SGrid::uniform(101));
  unsetenv("CLOCKGAP_THREADS");
  CHECK(same_rows(serial, parallel));
}

TEST_CASE("refine minimum") {
  const auto m = refine_minimum(2, std::nullopt, 0.0, 1.0);
  CHECK(std::abs(m.s - 0.5) <= 1e-6);
  CHECK(std::abs(m.gap - std::sqrt(0.5)) <= 1e-9);

  const double sc = crossing_point(10);
  const auto m10 = refine_minimum(10, std::nullopt, sc - 0.05, sc + 0.05);
  CHECK(m10.gap >= gap_floor(10));

  const auto same = refine_minimum(6, std::nullopt, 0.3, 0.3);
  CHECK(same.s == 0.3);
  const auto [l1, l2] = two_lowest(build_h0(6, 0.3));
  CHECK(std::abs(same.gap - (l2 - l1)) <= 2e-12);

  CHECK_THROWS_AS(refine_minimum(6, std::nullopt, 0.6, 0.4), ParameterError);
  CHECK_THROWS_AS(refine_minimum(6, std::nullopt, -0.1, 0.4), ParameterError);
}

TEST_CASE("certify") {
  SUBCASE("d = 2") {
    const auto c = certify(2, std::nullopt);
    CHECK(c.verdict_floor);
    CHECK(c.verdict_upper);
    CHECK_FALSE(c.verdict_lower.has_value());
    CHECK(c.verdict_lambda1_identity);
    CHECK(std::abs(c.refined_min_gap - std::sqrt(0.5)) <= 1e-9);
    CHECK(c.chain_bound < c.floor);
    CHECK_FALSE(c.chain_meets_floor);
    CHECK_FALSE(c.low_resolution);
    CHECK(c.grid_size == 1001);
    CHECK(c.timestamp.size() == 20);
  }
  SUBCASE("d = 10 family") {
    const auto fam = FamilySpec::with_ground_block(10, {{1.0, 1}, {2.0, 1}, {7.0, 1}});
    const auto c = certify(10, fam);
    CHECK(c.verdict_floor);
    CHECK(c.verdict_lambda1_identity);
    CHECK(c.verdict_upper);
    REQUIRE(c.verdict_lower.has_value());
    CHECK(*c.verdict_lower);
    CHECK(c.family == fam);
    CHECK(c.refined_min_gap >= c.floor);
    CHECK(c.refined_min_gap <= c.grid_min_gap);
  }
  SUBCASE("endpoints-only grid") {
    const auto c = certify(10, std::nullopt, 2);
    CHECK(c.low_resolution);
    CHECK(c.verdict_floor);
  }
  SUBCASE("refined minimum bounds every grid gap") {
    for (int d : {3, 5, 12, 40}) {
      const auto c = certify(d, std::nullopt, 201);
      const auto rows = sweep(d, std::nullopt, SGrid::uniform(201));
      for (const auto& r : rows) CHECK(c.refined_min_gap <= r.gap + c.solver_tol);
    }
  }
  SUBCASE("deterministic apart from timestamp") {
    const auto fam = FamilySpec::with_ground_block(17, {{1.0, 2}});
    auto a = certify(17, fam, 301);
    auto b = certify(17, fam, 301);
    a.timestamp.clear();
    b.timestamp.clear();
    CHECK(a == b);
  }
}
