// Acceptance gate: each criterion is a self-contained check printing exactly
// one PASS/FAIL line with its measured numbers. Run as: acceptance <1..10>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "omm/adversary.hpp"
#include "omm/advice_fractional.hpp"
#include "omm/advice_integral.hpp"
#include "omm/assignment.hpp"
#include "omm/distributions.hpp"
#include "omm/experiment.hpp"
#include "omm/online.hpp"
#include "omm/rng.hpp"

#ifndef HARNESS_BIN
#define HARNESS_BIN "./harness"
#endif

namespace {

using omm::AdviceDistribution;
using omm::BaselineKind;
using omm::MetricSpace;
using omm::Point;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int id, bool ok, double elapsed, const std::string& detail) {
  std::printf("criterion %d: %s (%.1fs) %s\n", id, ok ? "PASS" : "FAIL", elapsed, detail.c_str());
  return ok;
}

std::vector<Point> random_points(omm::Rng& rng, int n, int dim) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.v.resize(dim);
    for (double& x : p.v) x = rng.normal();
  }
  return pts;
}

omm::Matrix cost_matrix(const MetricSpace& space, const std::vector<Point>& requests,
                        const std::vector<Point>& servers) {
  omm::Matrix c(requests.size(), std::vector<double>(servers.size()));
  for (size_t i = 0; i < requests.size(); ++i)
    for (size_t j = 0; j < servers.size(); ++j) c[i][j] = space.distance(requests[i], servers[j]);
  return c;
}

double brute_force(const omm::Matrix& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += cost[i][perm[i]];
    if (s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// 1. Integral and fractional offline optima coincide (assignment polytope has
//    integral vertices).
bool criterion1() {
  auto start = Clock::now();
  omm::Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    int dim = 1 + t % 3;
    int n = 2 + static_cast<int>(rng.uniform01() * 7);
    auto space = MetricSpace::euclidean(dim);
    auto c = cost_matrix(space, random_points(rng, n, dim), random_points(rng, n, dim));
    double gap = std::fabs(omm::solve_integral(c).total_cost - omm::solve_fractional(c).total_cost);
    if (gap > worst) worst = gap;
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "integral vs fractional optimum gap <= %.3g over 200 instances (budget 1e-9, 10s)",
                worst);
  return report(1, worst <= 1e-9 && el < 10.0, el, buf);
}

// 2. The assignment solver equals exhaustive permutation search.
bool criterion2() {
  auto start = Clock::now();
  omm::Rng rng(202);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.uniform01() * 6);
    omm::Matrix c(n, std::vector<double>(n));
    for (auto& row : c)
      for (double& x : row) x = rng.uniform01() * 10.0;
    double gap = std::fabs(omm::solve_integral(c).total_cost - brute_force(c));
    if (gap > worst) worst = gap;
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "solver vs N! search gap <= %.3g over 100 instances (budget 1e-12, 30s)", worst);
  return report(2, worst <= 1e-12 && el < 30.0, el, buf);
}

// 3. Perfect advice yields ratio exactly 1 for both advice pipelines.
bool criterion3() {
  auto start = Clock::now();
  omm::Rng rng(303);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    int dim = 1 + t % 3;
    int n = 2 + static_cast<int>(rng.uniform01() * 48);
    auto space = MetricSpace::euclidean(dim);
    auto servers = random_points(rng, n, dim);
    auto requests = random_points(rng, n, dim);
    auto advice = AdviceDistribution::finite(omm::empirical(requests));
    double opt = omm::solve_integral(cost_matrix(space, requests, servers)).total_cost;

    omm::BlowupConfig cfg;
    cfg.blackbox = BaselineKind::Greedy;
    auto fr = omm::run_fractional_advice(space, servers, advice, requests, cfg);
    auto in = omm::run_integral_advice(space, servers, advice, requests, BaselineKind::Greedy,
                                       omm::QuantizerParams{}, 1);
    double rf = opt > 0 ? fr.actual_cost / opt : 1.0;
    double ri = opt > 0 ? in.actual_cost / opt : 1.0;
    worst = std::max({worst, std::fabs(rf - 1.0), std::fabs(ri - 1.0)});
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "perfect-advice ratio deviates from 1 by <= %.3g on 100 instances, N <= 50", worst);
  return report(3, worst <= 1e-9 && el < 60.0, el, buf);
}

// 4. Fractional outputs are row-stochastic and column-substochastic.
bool criterion4() {
  auto start = Clock::now();
  omm::Rng rng(404);
  double worst_row = 0.0, worst_col = 0.0;
  const int copies[3] = {1, 4, 16};
  for (int t = 0; t < 100; ++t) {
    int n = 3 + static_cast<int>(rng.uniform01() * 10);
    auto space = MetricSpace::euclidean(2);
    auto servers = random_points(rng, n, 2);
    auto requests = random_points(rng, n, 2);
    auto advice = AdviceDistribution::gaussian_mixture(
        {omm::GaussianComponent{Point{{rng.normal(), rng.normal()}},
                                {0.5 + rng.uniform01(), 0.5 + rng.uniform01()},
                                1.0}});
    omm::BlowupConfig cfg;
    cfg.copies_per_unit = copies[t % 3];
    cfg.seed = 404 + static_cast<uint64_t>(t);
    auto res = omm::run_fractional_advice(space, servers, advice, requests, cfg);
    for (double s : res.matching.row_sums()) worst_row = std::max(worst_row, std::fabs(s - 1.0));
    for (double s : res.matching.col_sums()) worst_col = std::max(worst_col, s - 1.0);
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "row-sum deviation <= %.3g, column overshoot <= %.3g over 100 runs, C in {1,4,16}",
                worst_row, worst_col);
  return report(4, worst_row <= 1e-9 && worst_col <= 1e-9 && el < 60.0, el, buf);
}

// 5. Per-run decompositions and the empirical error bound.
bool criterion5() {
  auto start = Clock::now();
  const char* families[2] = {"gaussian", "uniform"};
  const char* advice_modes[3] = {"perfect", "gaussian", "box"};
  int violations_decomp = 0, violations_beta = 0, runs = 0;
  double worst_decomp = 0.0, worst_beta = 0.0;
  for (int batch = 0; batch < 20; ++batch) {
    omm::ExperimentConfig cfg;
    omm::GeneratorSpec gen;
    gen.family = families[batch % 2];
    gen.dim = 1 + batch % 2;
    gen.n = 4 + (batch * 3) % 13;
    gen.advice_mode = advice_modes[batch % 3];
    gen.advice_sigma = 0.5 + 0.1 * (batch % 5);
    gen.advice_shift = 0.1 * (batch % 4);
    cfg.source = gen;
    cfg.algo = (batch % 2 == 0) ? "advice_fractional" : "advice_integral";
    cfg.copies = (batch % 2 == 0) ? 1 + batch % 6 : 0;
    cfg.trials = 10;
    cfg.seed = 500 + static_cast<uint64_t>(batch);
    auto reports = omm::run_experiment(cfg);
    runs += static_cast<int>(reports.size());
    for (const auto& r : reports) {
      double bound = (cfg.algo == "advice_fractional")
                         ? (r.online_cost + r.offline_cost) / static_cast<double>(cfg.copies)
                         : r.online_cost + r.offline_cost;
      double d1 = r.actual_cost - bound;
      worst_decomp = std::max(worst_decomp, d1);
      if (d1 > 1e-9) ++violations_decomp;
      double rhs = r.beta_emp * r.n * (r.eta_hat + r.residual_w1) + r.opt_cost + 1e-6;
      double d2 = r.actual_cost - rhs;
      worst_beta = std::max(worst_beta, d2);
      if (d2 > 0) ++violations_beta;
    }
  }
  double el = seconds_since(start);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "decomposition violated %d/%d times (worst %.3g), error bound violated %d/%d "
                "(worst %.3g)",
                violations_decomp, runs, worst_decomp, violations_beta, runs, worst_beta);
  return report(5, runs == 200 && violations_decomp == 0 && violations_beta == 0, el, buf);
}

// 6. The adaptive opponent forces at least the harmonic bound.
bool criterion6() {
  auto start = Clock::now();
  bool ok = true;
  double h4 = omm::harmonic_bound(4);
  ok = ok && std::fabs(h4 - 25.0 / 12.0) <= 1e-15;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int n : {4, 16, 64, 256}) {
    omm::FractionalServerFactory greedy = [n](uint64_t) -> omm::FractionalServer {
      std::vector<Point> servers;
      for (int i = 1; i <= n; ++i) servers.push_back(Point(static_cast<double>(i)));
      auto m = std::make_shared<omm::OnlineMatcher>(BaselineKind::Greedy, MetricSpace::discrete(),
                                                    servers);
      return [m, n](const Point& r) {
        std::vector<double> row(n, 0.0);
        row[m->serve(r)] = 1.0;
        return row;
      };
    };
    omm::FractionalServerFactory advised = [n](uint64_t seed) -> omm::FractionalServer {
      std::vector<Point> servers;
      omm::DiscreteDistribution d;
      for (int i = 1; i <= n; ++i) {
        servers.push_back(Point(static_cast<double>(i)));
        d.atoms.push_back(Point(static_cast<double>(i)));
        d.masses.push_back(1.0 / n);
      }
      omm::BlowupConfig cfg;
      cfg.seed = seed;
      auto m = std::make_shared<omm::FractionalAdviceMatcher>(
          MetricSpace::discrete(), servers, AdviceDistribution::finite(std::move(d)), cfg);
      return [m](const Point& r) { return m->serve(r); };
    };
    for (const auto& factory : {greedy, advised}) {
      auto res = omm::run_adversary_game(n, factory, 6);
      double margin = res.algorithm_cost - (res.bound - 1e-9);
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0) ok = false;
    }
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "forced cost clears the harmonic bound by >= %.3g at N in {4,16,64,256}",
                worst_margin);
  return report(6, ok && el < 60.0, el, buf);
}

// 7. The doubling-line construction: stated optima and trusting ratios.
bool criterion7() {
  auto start = Clock::now();
  bool ok = true;
  std::string first_bad;
  auto expect = [&](bool cond, const char* what, int n, double want, double got) {
    if (!cond && first_bad.empty()) {
      char buf[120];
      std::snprintf(buf, sizeof buf, "%s at N=%d: stated %.6g, measured %.6g", what, n, want, got);
      first_bad = buf;
    }
    ok = ok && cond;
  };
  for (int n = 2; n <= 10; ++n) {
    auto line = MetricSpace::euclidean(1);
    auto i0 = omm::exponential_instance(n, 0);
    auto i1 = omm::exponential_instance(n, 1);
    double opt0 = omm::solve_integral(cost_matrix(line, i0.requests, i0.servers)).total_cost;
    double opt1 = omm::solve_integral(cost_matrix(line, i1.requests, i1.servers)).total_cost;
    expect(std::fabs(opt0 - 0.5) <= 1e-9, "early-finish optimum", n, 0.5, opt0);
    double claimed_opt1 = std::ldexp(1.0, n - 1) - 0.5;
    expect(std::fabs(opt1 - claimed_opt1) <= 1e-9, "late-return optimum", n, claimed_opt1, opt1);

    double claimed_ratio = std::ldexp(1.0, n) - 1.0;
    auto wrong = omm::trusting_run(i0, 1);
    expect(std::fabs(wrong.ratio - claimed_ratio) <= 1e-9, "wrong-advice ratio", n, claimed_ratio,
           wrong.ratio);
    for (int j : {0, 1}) {
      auto rightrun = omm::trusting_run(j == 0 ? i0 : i1, j);
      expect(std::fabs(rightrun.ratio - 1.0) <= 1e-9, "right-advice ratio", n, 1.0, rightrun.ratio);
    }
  }
  double el = seconds_since(start);
  std::string detail = ok ? "stated gap constants hold for N in 2..10"
                          : "first mismatch: " + first_bad;
  return report(7, ok && el < 5.0, el, detail);
}

// 8. Empirical-measure W1 decay rates on the line and in the cube.
bool criterion8() {
  auto start = Clock::now();
  auto gauss =
      AdviceDistribution::gaussian_mixture({omm::GaussianComponent{Point(0.0), {1.0}, 1.0}});
  auto d1 = omm::convergence_benchmark(gauss, {64, 128, 256, 512, 1024, 2048, 4096}, 50, 800);

  auto cube = AdviceDistribution::uniform_box(Point(0.0, 0.0, 0.0), Point(1.0, 1.0, 1.0));
  auto d3 = omm::convergence_benchmark(cube, {16, 32, 64, 128}, 10, 801);

  bool ok1 = d1.slope >= -0.6 && d1.slope <= -0.4;
  bool ok3 = d3.slope >= -0.43 && d3.slope <= -0.23;
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "line slope %.3f (want [-0.6,-0.4]), cube slope %.3f (want [-0.43,-0.23])",
                d1.slope, d3.slope);
  return report(8, ok1 && ok3 && el < 300.0, el, buf);
}

// 9. Quantizer: exact on small supports, optimal against subset search.
bool criterion9() {
  auto start = Clock::now();
  omm::Rng rng(909);
  omm::QuantizerParams params;
  bool ok = true;

  for (int t = 0; t < 50 && ok; ++t) {
    int n = 3 + static_cast<int>(rng.uniform01() * 10);
    int a = 1 + static_cast<int>(rng.uniform01() * n);  // at most n atoms
    omm::DiscreteDistribution d;
    double total = 0.0;
    for (int i = 0; i < a; ++i) {
      d.atoms.push_back(Point{{rng.normal() * 3.0, rng.normal() * 3.0}});
      d.masses.push_back(0.05 + rng.uniform01());
      total += d.masses.back();
    }
    for (double& m : d.masses) m /= total;
    auto advice = AdviceDistribution::finite(d);
    auto q = omm::quantize(advice, n, params, 900 + static_cast<uint64_t>(t));
    ok = ok && static_cast<int>(q.centers.size()) == a && q.residual_w1 == 0.0;
    for (int i = 0; i < a && ok; ++i) ok = q.centers[i] == advice.atoms().atoms[i];
  }

  double worst_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    int a = 8 + static_cast<int>(rng.uniform01() * 13);  // up to 20 atoms
    int n = 2 + t % 4;                                   // up to 5 centers
    omm::DiscreteDistribution d;
    double total = 0.0;
    for (int i = 0; i < a; ++i) {
      d.atoms.push_back(Point{{rng.normal() * 2.0}});
      d.masses.push_back(0.05 + rng.uniform01());
      total += d.masses.back();
    }
    for (double& m : d.masses) m /= total;
    auto advice = AdviceDistribution::finite(d);
    auto q = omm::quantize(advice, n, params, 950 + static_cast<uint64_t>(t));

    // exhaustive n-subset search over the (merged) atom set
    const auto& atoms = advice.atoms();
    a = static_cast<int>(atoms.atoms.size());
    std::vector<int> pick(n);
    std::function<double(int, int)> best_from = [&](int from, int k) -> double {
      if (k == n) {
        double obj = 0.0;
        for (int i = 0; i < a; ++i) {
          double bd = std::numeric_limits<double>::infinity();
          for (int idx = 0; idx < n; ++idx)
            bd = std::min(bd, std::fabs(atoms.atoms[i].v[0] - atoms.atoms[pick[idx]].v[0]));
          obj += atoms.masses[i] * bd;
        }
        return obj;
      }
      double best = std::numeric_limits<double>::infinity();
      for (int i = from; i <= a - (n - k); ++i) {
        pick[k] = i;
        best = std::min(best, best_from(i + 1, k + 1));
      }
      return best;
    };
    double best = best_from(0, 0);
    worst_gap = std::max(worst_gap, std::fabs(q.residual_w1 - best));
  }
  double el = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "small supports kept verbatim: %s; subset-search residual gap <= %.3g",
                ok ? "yes" : "no", worst_gap);
  return report(9, ok && worst_gap <= 1e-12 && el < 60.0, el, buf);
}

// 10. Byte-identical emission on repeated invocations of the CLI.
bool criterion10() {
  auto start = Clock::now();
  std::string bin = HARNESS_BIN;
  auto capture = [&](const std::string& args, const std::string& path) -> bool {
    std::string cmd = bin + " " + args + " > " + path + " 2>/dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  struct Case {
    const char* name;
    std::string args;
  };
  const Case cases[] = {
      {"run", "run --family gaussian --dim 2 --n 12 --algo advice_fractional --advice gaussian "
              "--copies 4 --trials 5 --seed 42"},
      {"run-perm", "run --family uniform --dim 1 --n 16 --algo permutation --trials 5 --seed 7"},
      {"adversary", "adversary --n 16 --algo greedy --seed 3"},
      {"converge", "converge --family gaussian --dim 1 --sizes 64,128,256 --trials 10 --seed 9"},
  };
  bool ok = true;
  std::string bad;
  for (const auto& c : cases) {
    std::string p1 = std::string("acc10_") + c.name + "_a.csv";
    std::string p2 = std::string("acc10_") + c.name + "_b.csv";
    if (!capture(c.args, p1) || !capture(c.args, p2) || slurp(p1).empty() ||
        slurp(p1) != slurp(p2)) {
      ok = false;
      if (bad.empty()) bad = c.name;
    }
    std::remove(p1.c_str());
    std::remove(p2.c_str());
  }
  double el = seconds_since(start);
  std::string detail = ok ? "repeated run/adversary/converge invocations emit identical bytes"
                          : "first differing subcommand: " + bad;
  return report(10, ok, el, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
    return 64;
  }
  int id = std::atoi(argv[1]);
  bool ok = false;
  switch (id) {
    case 1: ok = criterion1(); break;
    case 2: ok = criterion2(); break;
    case 3: ok = criterion3(); break;
    case 4: ok = criterion4(); break;
    case 5: ok = criterion5(); break;
    case 6: ok = criterion6(); break;
    case 7: ok = criterion7(); break;
    case 8: ok = criterion8(); break;
    case 9: ok = criterion9(); break;
    case 10: ok = criterion10(); break;
    default:
      std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
      return 64;
  }
  return ok ? 0 : 1;
}
