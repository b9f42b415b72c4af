#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "omm/distributions.hpp"
#include "omm/online.hpp"

namespace omm {

struct BlowupConfig {
  int copies_per_unit = 0;  // C; 0 means the default min(N, 10^4 / N)
  BaselineKind blackbox = BaselineKind::Greedy;
  uint64_t seed = 0;

  int resolved_copies(int n) const;
  int sample_count(int n) const { return resolved_copies(n) * n; }
};

// Degree bookkeeping around the sample multiset: how often request copies and
// server copies touch each sample location.
struct DegreeTables {
  std::vector<Point> locations;              // distinct sample locations
  std::vector<int> multiplicity;             // copies of each location in the sample
  std::vector<std::map<int, int>> s_counts;  // location -> (server -> copies)
  std::vector<std::map<int, int>> r_counts;  // request -> (location -> copies)
};

class FractionalAdviceMatcher {
 public:
  FractionalAdviceMatcher(const MetricSpace& space, std::vector<Point> servers,
                          const AdviceDistribution& advice, const BlowupConfig& cfg);

  // Feeds C copies of the request through the blackbox and assembles the
  // weight row over servers; row sums to 1.
  std::vector<double> serve(const Point& request);

  int copies() const { return copies_; }
  int served() const { return served_; }
  double offline_blowup_cost() const { return offline_cost_; }  // OPT over sample vs server copies
  double blackbox_cost() const;                                 // online cost over request copies
  const DegreeTables& degrees() const { return degrees_; }
  const std::vector<Point>& sample_points() const { return sample_points_; }

 private:
  MetricSpace space_;
  std::vector<Point> servers_;
  int copies_ = 1;
  int served_ = 0;
  double offline_cost_ = 0.0;
  DegreeTables degrees_;
  std::vector<Point> sample_points_;  // raw multiset fed to the offline solve
  std::unique_ptr<OnlineMatcher> blackbox_;
};

struct FractionalRunResult {
  FractionalMatching matching;
  double actual_cost = 0.0;
  double blackbox_cost = 0.0;       // cost_B over all request copies
  double offline_blowup_cost = 0.0; // offline optimum over sample vs server copies
  double decomposition_bound = 0.0; // (blackbox + offline) / C
  int copies = 1;
  std::vector<Point> sample_points; // the blow-up multiset actually used
};

FractionalRunResult run_fractional_advice(const MetricSpace& space,
                                          const std::vector<Point>& servers,
                                          const AdviceDistribution& advice,
                                          const std::vector<Point>& requests,
                                          const BlowupConfig& cfg);

}  // namespace omm
