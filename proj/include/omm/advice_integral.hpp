#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "omm/distributions.hpp"
#include "omm/online.hpp"

namespace omm {

// Quantize advice to N slots, pair slots with servers offline, then route each
// online request through the blackbox to a slot and on to its paired server.
class IntegralAdviceMatcher {
 public:
  IntegralAdviceMatcher(const MetricSpace& space, std::vector<Point> servers,
                        const AdviceDistribution& advice, BaselineKind blackbox,
                        const QuantizerParams& params, uint64_t seed);

  // Returns the chosen server index; irrevocable.
  int serve(const Point& request);

  const QuantizerResult& quantizer() const { return quant_; }
  const std::vector<Point>& slots() const { return slots_; }
  const std::vector<int>& slot_partner() const { return partner_; }
  double offline_pairing_cost() const { return offline_cost_; }  // OPT over slots vs servers
  double blackbox_cost() const { return blackbox_ ? blackbox_->total_cost() : 0.0; }
  int served() const { return served_; }

 private:
  MetricSpace space_;
  std::vector<Point> servers_;
  QuantizerResult quant_;
  std::vector<Point> slots_;      // quantizer centers expanded by multiplicity
  std::vector<int> partner_;      // slot -> server index
  double offline_cost_ = 0.0;
  std::unique_ptr<OnlineMatcher> blackbox_;
  std::vector<std::vector<int>> slots_at_loc_;  // blackbox location -> open slot ids
  int served_ = 0;
};

struct IntegralRunResult {
  IntegralMatching matching;
  double actual_cost = 0.0;
  double blackbox_cost = 0.0;      // request -> slot online cost
  double offline_pairing_cost = 0.0;
  double decomposition_bound = 0.0;  // blackbox + offline
  double residual_w1 = 0.0;          // quantizer residual
};

IntegralRunResult run_integral_advice(const MetricSpace& space,
                                      const std::vector<Point>& servers,
                                      const AdviceDistribution& advice,
                                      const std::vector<Point>& requests,
                                      BaselineKind blackbox,
                                      const QuantizerParams& params, uint64_t seed);

}  // namespace omm
