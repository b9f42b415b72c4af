#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "omm/distributions.hpp"
#include "omm/instance.hpp"
#include "omm/metric.hpp"
#include "omm/report.hpp"

namespace omm {

// Discrete-metric opponent: first request lands off every server, each later
// request lands on the server carrying the most matched mass so far.
class AdaptiveAdversary {
 public:
  explicit AdaptiveAdversary(int n);

  Point next(int step) const;            // 1-based step
  void observe(const std::vector<double>& row);  // column-sum tracker update

  int n() const { return n_; }
  const std::vector<double>& loads() const { return loads_; }
  const std::vector<Point>& servers() const { return servers_; }

 private:
  int n_;
  int observed_ = 0;
  std::vector<Point> servers_;  // labels 1..n
  std::vector<double> loads_;
};

// Guaranteed cost against any fractional algorithm: 1 + sum_{i=2..n} 1/(n-i+2).
double harmonic_bound(int n);

// One online fractional algorithm instance: serves requests one at a time,
// reporting its weight row over the n servers.
using FractionalServer = std::function<std::vector<double>(const Point&)>;
// Builds a fresh algorithm instance for a given stream seed (used by replays).
using FractionalServerFactory = std::function<FractionalServer(uint64_t seed)>;

struct AdversaryGameResult {
  int n = 0;
  double algorithm_cost = 0.0;  // realized (or replay-averaged) total cost
  double bound = 0.0;           // harmonic lower bound
  std::vector<Point> requests;  // the sequence the adversary produced
};

// replays = 1 reads the single algorithm's true column sums; replays > 1
// estimates expected column sums (and cost) over seeded replays per step.
AdversaryGameResult run_adversary_game(int n, const FractionalServerFactory& factory,
                                       uint64_t seed, int replays = 1);

// The two-request-set gap construction on the line.
struct ExponentialGapInstance {
  int n = 0;
  std::vector<Point> servers;     // 2^{i-1}
  std::vector<Point> requests0;   // ends at 2^{n-1}
  std::vector<Point> requests1;   // ends at 1
};

ExponentialGapInstance exponential_gap(int n);

// which: 0 -> R0, 1 -> R1. Returned instance carries no advice.
Instance exponential_instance(int n, int which);

struct TrustingRunResult {
  double cost = 0.0;
  double opt = 0.0;    // offline optimum of the actual request set
  double ratio = 0.0;
  IntegralMatching matching;
};

// Plays the advice-trusting strategy (route every request to the advised
// optimum's slot) for the given advice bit against the instance's requests.
TrustingRunResult trusting_run(const Instance& instance, int advice_bit);

}  // namespace omm
