#include "omm/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omm/advice_integral.hpp"
#include "omm/rng.hpp"

namespace omm {

AdaptiveAdversary::AdaptiveAdversary(int n) : n_(n) {
  if (n < 1) throw ValidationError("adversary: need at least one server");
  servers_.reserve(n);
  for (int i = 1; i <= n; ++i) servers_.push_back(Point(static_cast<double>(i)));
  loads_.assign(n, 0.0);
}

Point AdaptiveAdversary::next(int step) const {
  if (step < 1 || step > n_) throw ValidationError("adversary: step out of range");
  if (step == 1) return Point(static_cast<double>(n_ + 1));  // off every server
  int best = 0;
  for (int s = 1; s < n_; ++s)
    if (loads_[s] > loads_[best]) best = s;
  return servers_[best];
}

void AdaptiveAdversary::observe(const std::vector<double>& row) {
  if (static_cast<int>(row.size()) != n_)
    throw ValidationError("adversary: row length differs from server count");
  double sum = 0.0;
  for (double w : row) {
    if (!std::isfinite(w) || w < -1e-9) throw ValidationError("adversary: negative weight in row");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-6)
    throw ValidationError("adversary: fractional row does not sum to 1");
  for (int s = 0; s < n_; ++s) {
    loads_[s] += std::max(0.0, row[s]);
    if (loads_[s] > 1.0 + 1e-6)
      throw ValidationError("adversary: server capacity exceeded by reported rows");
  }
  ++observed_;
}

double harmonic_bound(int n) {
  if (n < 1) throw ValidationError("harmonic bound: n must be positive");
  double s = 0.0;
  for (int j = n; j >= 2; --j) s += 1.0 / static_cast<double>(j);
  return 1.0 + s;
}

AdversaryGameResult run_adversary_game(int n, const FractionalServerFactory& factory,
                                       uint64_t seed, int replays) {
  if (replays < 1) throw ValidationError("adversary game: replays must be positive");
  AdaptiveAdversary adv(n);
  const MetricSpace space = MetricSpace::discrete();

  std::vector<FractionalServer> runs;
  runs.reserve(replays);
  for (int t = 0; t < replays; ++t) runs.push_back(factory(derive_seed(seed, t)));

  AdversaryGameResult out;
  out.n = n;
  out.bound = harmonic_bound(n);
  double total = 0.0;
  for (int step = 1; step <= n; ++step) {
    Point req = adv.next(step);
    out.requests.push_back(req);
    std::vector<double> avg(n, 0.0);
    for (auto& run : runs) {
      std::vector<double> row = run(req);
      if (static_cast<int>(row.size()) != n)
        throw ValidationError("adversary game: algorithm row length differs from n");
      for (int s = 0; s < n; ++s) {
        avg[s] += row[s] / static_cast<double>(replays);
        total += row[s] * space.distance(req, adv.servers()[s]) / static_cast<double>(replays);
      }
    }
    adv.observe(avg);
  }
  out.algorithm_cost = total;
  return out;
}

ExponentialGapInstance exponential_gap(int n) {
  if (n < 2) throw ValidationError("exponential gap: n must be at least 2");
  ExponentialGapInstance g;
  g.n = n;
  for (int i = 1; i <= n; ++i) g.servers.push_back(Point(std::ldexp(1.0, i - 1)));
  g.requests0.push_back(Point(1.5));
  for (int i = 2; i <= n - 1; ++i) g.requests0.push_back(Point(std::ldexp(1.0, i - 1)));
  g.requests1 = g.requests0;
  g.requests0.push_back(Point(std::ldexp(1.0, n - 1)));
  g.requests1.push_back(Point(1.0));
  return g;
}

Instance exponential_instance(int n, int which) {
  if (which != 0 && which != 1) throw ValidationError("exponential instance: which must be 0 or 1");
  ExponentialGapInstance g = exponential_gap(n);
  Instance inst;
  inst.metric = MetricSpace::euclidean(1);
  inst.servers = std::move(g.servers);
  inst.requests = which == 0 ? std::move(g.requests0) : std::move(g.requests1);
  return inst;
}

TrustingRunResult trusting_run(const Instance& instance, int advice_bit) {
  if (advice_bit != 0 && advice_bit != 1)
    throw ValidationError("trusting run: advice bit must be 0 or 1");
  const int n = instance.n();
  if (static_cast<int>(instance.requests.size()) != n)
    throw ValidationError("trusting run: request and server counts differ");
  ExponentialGapInstance g = exponential_gap(n);
  const std::vector<Point>& advised = advice_bit == 0 ? g.requests0 : g.requests1;
  AdviceDistribution advice = AdviceDistribution::finite(empirical(advised));

  IntegralRunResult run = run_integral_advice(instance.metric, instance.servers, advice,
                                              instance.requests, BaselineKind::Greedy,
                                              QuantizerParams{}, 0);
  Matrix cost(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[i][j] = instance.metric.distance(instance.requests[i], instance.servers[j]);
  double opt = solve_integral(cost).total_cost;

  TrustingRunResult out;
  out.cost = run.actual_cost;
  out.opt = opt;
  if (opt > kTol)
    out.ratio = out.cost / opt;
  else
    out.ratio = out.cost <= kTol ? 1.0 : std::numeric_limits<double>::infinity();
  out.matching = std::move(run.matching);
  return out;
}

}  // namespace omm
