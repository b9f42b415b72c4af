#include <doctest.h>

#include <cmath>
#include <vector>

#include "omm/advice_fractional.hpp"
#include "omm/advice_integral.hpp"
#include "omm/rng.hpp"
#include "oracles.hpp"

using omm::AdviceDistribution;
using omm::BlowupConfig;
using omm::MetricSpace;
using omm::Point;

namespace {

AdviceDistribution line_advice(std::vector<double> xs, std::vector<double> ms) {
  omm::DiscreteDistribution d;
  for (double x : xs) d.atoms.push_back(Point{{x}});
  d.masses = std::move(ms);
  return AdviceDistribution::finite(std::move(d));
}

std::vector<Point> random_points(omm::Rng& rng, int n, int dim) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.v.resize(dim);
    for (double& x : p.v) x = rng.normal();
  }
  return pts;
}

}  // namespace

TEST_CASE("copy budget defaults to N capped by the total sample budget") {
  BlowupConfig cfg;
  CHECK(cfg.resolved_copies(4) == 4);
  CHECK(cfg.resolved_copies(50) == 50);
  CHECK(cfg.resolved_copies(200) == 50);    // 10^4 / 200
  CHECK(cfg.resolved_copies(20000) == 1);   // floor would be 0; clamp to 1
  cfg.copies_per_unit = 3;
  CHECK(cfg.resolved_copies(200) == 3);
}

TEST_CASE("a request between two advice atoms splits evenly across servers") {
  // Two servers at 0 and 10; four equal atoms at 1, 4, 6, 9. With C = 2 the
  // sample keeps one copy per atom; the offline optimum sends 1,4 to the left
  // server and 6,9 to the right. A request at 5 routes one copy to atom 4 and
  // one to atom 6, so its weight row is (1/2, 1/2).
  auto line = MetricSpace::euclidean(1);
  std::vector<Point> servers{Point{{0.0}}, Point{{10.0}}};
  auto advice = line_advice({1.0, 4.0, 6.0, 9.0}, {0.25, 0.25, 0.25, 0.25});
  BlowupConfig cfg;
  cfg.copies_per_unit = 2;

  omm::FractionalAdviceMatcher m(line, servers, advice, cfg);
  CHECK(m.copies() == 2);
  CHECK(m.sample_points().size() == 4);
  CHECK(m.offline_blowup_cost() == doctest::Approx(10.0).epsilon(1e-12));

  auto row = m.serve(Point{{5.0}});
  REQUIRE(row.size() == 2);
  CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.blackbox_cost() == doctest::Approx(2.0).epsilon(1e-12));  // two copies at distance 1
}

TEST_CASE("weight rows sum to one and columns stay substochastic") {
  omm::Rng rng(8080);
  auto plane = MetricSpace::euclidean(2);
  for (int c : {1, 4, 16}) {
    auto servers = random_points(rng, 10, 2);
    auto requests = random_points(rng, 10, 2);
    auto advice = AdviceDistribution::gaussian_mixture(
        {omm::GaussianComponent{Point{{0.0, 0.0}}, {1.0, 1.0}, 1.0}});
    BlowupConfig cfg;
    cfg.copies_per_unit = c;
    cfg.seed = 17 + static_cast<uint64_t>(c);
    auto res = omm::run_fractional_advice(plane, servers, advice, requests, cfg);
    auto rows = res.matching.row_sums();
    auto cols = res.matching.col_sums();
    for (double r : rows) CHECK(std::fabs(r - 1.0) <= 1e-9);
    for (double s : cols) CHECK(s <= 1.0 + 1e-9);
  }
}

TEST_CASE("actual cost obeys the blown-up decomposition bound") {
  omm::Rng rng(9090);
  auto plane = MetricSpace::euclidean(2);
  for (int t = 0; t < 20; ++t) {
    int n = 3 + static_cast<int>(rng.uniform01() * 8);
    auto servers = random_points(rng, n, 2);
    auto requests = random_points(rng, n, 2);
    auto advice = AdviceDistribution::gaussian_mixture(
        {omm::GaussianComponent{Point{{0.5, -0.5}}, {1.0, 1.0}, 1.0}});
    BlowupConfig cfg;
    cfg.copies_per_unit = 1 + t % 5;
    cfg.seed = 1000 + static_cast<uint64_t>(t);
    auto res = omm::run_fractional_advice(plane, servers, advice, requests, cfg);
    CHECK(res.actual_cost <= res.decomposition_bound + 1e-9);
    CHECK(res.decomposition_bound ==
          doctest::Approx((res.blackbox_cost + res.offline_blowup_cost) / res.copies)
              .epsilon(1e-12));
  }
}

TEST_CASE("perfect finite advice with one copy reproduces the integral route") {
  omm::Rng rng(111);
  auto line = MetricSpace::euclidean(1);
  for (int t = 0; t < 20; ++t) {
    int n = 3 + static_cast<int>(rng.uniform01() * 6);
    auto servers = random_points(rng, n, 1);
    auto requests = random_points(rng, n, 1);
    std::vector<double> xs;
    for (const auto& r : requests) xs.push_back(r.v[0]);
    auto advice = line_advice(xs, std::vector<double>(n, 1.0 / n));

    BlowupConfig cfg;
    cfg.copies_per_unit = 1;
    auto fr = omm::run_fractional_advice(line, servers, advice, requests, cfg);
    auto in = omm::run_integral_advice(line, servers, advice, requests,
                                       omm::BaselineKind::Greedy, omm::QuantizerParams{}, 0);
    CHECK(fr.actual_cost == doctest::Approx(in.actual_cost).epsilon(1e-9));
    // every weight row is one-hot at the integral choice
    for (const auto& e : fr.matching.edges) CHECK(e.weight == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("request and server counts must match") {
  auto line = MetricSpace::euclidean(1);
  std::vector<Point> servers{Point{{0.0}}, Point{{1.0}}};
  auto advice = line_advice({0.0}, {1.0});
  BlowupConfig cfg;
  CHECK_THROWS_AS(
      omm::run_fractional_advice(line, servers, advice, {Point{{0.0}}}, cfg),
      omm::ValidationError);
}
