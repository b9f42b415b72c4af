#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "omm/assignment.hpp"
#include "omm/metric.hpp"

namespace omm {

enum class BaselineKind { Greedy, Permutation };

BaselineKind baseline_from_string(const std::string& s);
std::string to_string(BaselineKind k);

// Adviceless online matcher over a server multiset. Duplicate locations are
// aggregated into one location with a capacity counter; decisions are
// irrevocable and appended to the history.
class OnlineMatcher {
 public:
  OnlineMatcher(BaselineKind kind, const MetricSpace& space,
                const std::vector<Point>& servers, uint64_t seed = 0);

  // Serves one request; returns the location id it was matched to.
  int serve_location(const Point& request);
  // Serves one request; returns the original server index (input order).
  int serve(const Point& request);

  int location_count() const { return static_cast<int>(locations_.size()); }
  const Point& location(int loc) const { return locations_[loc]; }
  int capacity(int loc) const { return capacity_[loc]; }
  int available(int loc) const { return capacity_[loc] - used_[loc]; }
  int remaining() const { return total_capacity_ - served_; }
  int served() const { return served_; }
  double total_cost() const { return total_cost_; }

  const std::vector<std::pair<Point, int>>& history() const { return history_; }

 private:
  int greedy_pick(const Point& request) const;
  int permutation_pick(const Point& request);

  BaselineKind kind_;
  MetricSpace space_;
  std::vector<Point> locations_;            // distinct, in first-appearance order
  std::vector<std::vector<int>> members_;   // original indices per location
  std::vector<int> capacity_;
  std::vector<int> used_;                   // online slots consumed per location
  std::vector<int> handed_out_;             // original indices handed out per location
  int total_capacity_ = 0;
  int served_ = 0;
  double total_cost_ = 0.0;
  std::vector<std::pair<Point, int>> history_;  // (request, location id)

  // Offline-optimum tracking for the permutation rule: a shortest augmenting
  // path extends the optimal matching of the requests seen so far, and the
  // request is matched online to the location that newly enters that optimum.
  struct OfflineState {
    std::vector<Point> requests;
    std::vector<int> match_loc;          // request -> location in the optimum
    std::vector<int> offline_used;       // per location
    std::vector<double> pot_req, pot_loc;
  } off_;
};

// Batch wrapper; returns the induced matching with original server indices.
IntegralMatching run_online(BaselineKind kind, const MetricSpace& space,
                            const std::vector<Point>& servers,
                            const std::vector<Point>& requests, uint64_t seed = 0);

}  // namespace omm
