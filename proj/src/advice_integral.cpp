#include "omm/advice_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omm {

IntegralAdviceMatcher::IntegralAdviceMatcher(const MetricSpace& space, std::vector<Point> servers,
                                             const AdviceDistribution& advice,
                                             BaselineKind blackbox, const QuantizerParams& params,
                                             uint64_t seed)
    : space_(space), servers_(std::move(servers)) {
  const int n = static_cast<int>(servers_.size());
  if (n < 1) throw ValidationError("integral advice: no servers");
  quant_ = quantize(advice, n, params, seed);

  slots_.reserve(n);
  for (size_t c = 0; c < quant_.centers.size(); ++c)
    for (int t = 0; t < quant_.multiplicities[c]; ++t) slots_.push_back(quant_.centers[c]);
  if (static_cast<int>(slots_.size()) != n)
    throw std::logic_error("integral advice: slot expansion drifted from n");

  Matrix cost(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[i][j] = space_.distance(slots_[i], servers_[j]);
  IntegralMatching pairing = solve_integral(cost);
  partner_ = pairing.server_of;
  offline_cost_ = pairing.total_cost;

  blackbox_ = std::make_unique<OnlineMatcher>(blackbox, space_, slots_, seed);
  slots_at_loc_.assign(blackbox_->location_count(), {});
  for (int k = 0; k < n; ++k) {
    int loc = -1;
    for (int l = 0; l < blackbox_->location_count(); ++l) {
      if (blackbox_->location(l) == slots_[k]) {
        loc = l;
        break;
      }
    }
    if (loc < 0) throw std::logic_error("integral advice: slot missing from blackbox table");
    slots_at_loc_[loc].push_back(k);
  }
}

int IntegralAdviceMatcher::serve(const Point& request) {
  if (served_ >= static_cast<int>(slots_.size()))
    throw ValidationError("integral advice: all slots consumed");
  int loc = blackbox_->serve_location(request);
  auto& open = slots_at_loc_[loc];
  if (open.empty()) throw std::logic_error("integral advice: blackbox chose a drained location");
  // Coincident open slots differ only through their partners; take the one
  // whose partner sits closest to the request (ties to the lowest slot id).
  size_t pick = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < open.size(); ++i) {
    double d = space_.distance(request, servers_[partner_[open[i]]]);
    if (d < best) {
      best = d;
      pick = i;
    }
  }
  int slot = open[pick];
  open.erase(open.begin() + static_cast<long>(pick));
  ++served_;
  return partner_[slot];
}

IntegralRunResult run_integral_advice(const MetricSpace& space, const std::vector<Point>& servers,
                                      const AdviceDistribution& advice,
                                      const std::vector<Point>& requests, BaselineKind blackbox,
                                      const QuantizerParams& params, uint64_t seed) {
  if (servers.size() != requests.size())
    throw ValidationError("integral advice run: request and server counts differ");
  IntegralAdviceMatcher matcher(space, servers, advice, blackbox, params, seed);
  IntegralRunResult out;
  out.matching.server_of.reserve(requests.size());
  out.matching.total_cost = 0.0;
  for (const auto& r : requests) {
    int s = matcher.serve(r);
    out.matching.server_of.push_back(s);
    out.matching.total_cost += space.distance(r, servers[s]);
  }
  out.actual_cost = out.matching.total_cost;
  out.blackbox_cost = matcher.blackbox_cost();
  out.offline_pairing_cost = matcher.offline_pairing_cost();
  out.decomposition_bound = out.blackbox_cost + out.offline_pairing_cost;
  out.residual_w1 = matcher.quantizer().residual_w1;
  return out;
}

}  // namespace omm
