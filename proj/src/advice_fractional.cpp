#include "omm/advice_fractional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "omm/rng.hpp"

namespace omm {

int BlowupConfig::resolved_copies(int n) const {
  if (n < 1) throw ValidationError("blow-up: need at least one server");
  if (copies_per_unit < 0) throw ValidationError("blow-up: copies must be positive");
  if (copies_per_unit > 0) return copies_per_unit;
  return std::max(1, std::min(n, 10000 / n));  // C = N capped at 10^4 total samples
}

namespace {

// Finite advice expands by exact mass quota; continuous advice is sampled.
std::vector<Point> blowup_points(const AdviceDistribution& advice, int k, uint64_t seed) {
  if (advice.is_finite()) {
    const auto& d = advice.atoms();
    std::vector<int> counts = proportional_counts(d.masses, k);
    std::vector<Point> out;
    out.reserve(k);
    for (size_t i = 0; i < d.atoms.size(); ++i)
      for (int t = 0; t < counts[i]; ++t) out.push_back(d.atoms[i]);
    return out;
  }
  return sample(advice, k, seed);
}

}  // namespace

FractionalAdviceMatcher::FractionalAdviceMatcher(const MetricSpace& space,
                                                 std::vector<Point> servers,
                                                 const AdviceDistribution& advice,
                                                 const BlowupConfig& cfg)
    : space_(space), servers_(std::move(servers)) {
  const int n = static_cast<int>(servers_.size());
  copies_ = cfg.resolved_copies(n);
  const int k = copies_ * n;
  sample_points_ = blowup_points(advice, k, cfg.seed);

  // Aggregate the sample multiset by exact location (first-appearance order);
  // the blackbox below aggregates the same way, so location ids line up.
  for (const auto& p : sample_points_) {
    int loc = -1;
    for (size_t l = 0; l < degrees_.locations.size(); ++l) {
      if (degrees_.locations[l] == p) {
        loc = static_cast<int>(l);
        break;
      }
    }
    if (loc < 0) {
      degrees_.locations.push_back(p);
      degrees_.multiplicity.push_back(0);
      loc = static_cast<int>(degrees_.locations.size()) - 1;
    }
    ++degrees_.multiplicity[loc];
  }
  const int nloc = static_cast<int>(degrees_.locations.size());
  degrees_.s_counts.assign(nloc, {});

  // Offline optimum between the sample multiset and C copies of each server,
  // solved as a transport with integer masses (flows stay integral).
  std::vector<Point> server_locs;
  std::vector<std::vector<int>> server_members;
  for (int s = 0; s < n; ++s) {
    int loc = -1;
    for (size_t l = 0; l < server_locs.size(); ++l) {
      if (server_locs[l] == servers_[s]) {
        loc = static_cast<int>(l);
        break;
      }
    }
    if (loc < 0) {
      server_locs.push_back(servers_[s]);
      server_members.emplace_back();
      loc = static_cast<int>(server_locs.size()) - 1;
    }
    server_members[loc].push_back(s);
  }
  std::vector<double> supplies(nloc), demands(server_locs.size());
  for (int l = 0; l < nloc; ++l) supplies[l] = degrees_.multiplicity[l];
  for (size_t j = 0; j < server_locs.size(); ++j)
    demands[j] = static_cast<double>(copies_) * static_cast<double>(server_members[j].size());
  Matrix cost(nloc, std::vector<double>(server_locs.size()));
  for (int l = 0; l < nloc; ++l)
    for (size_t j = 0; j < server_locs.size(); ++j)
      cost[l][j] = space_.distance(degrees_.locations[l], server_locs[j]);
  WeightedTransportPlan plan = solve_transport(supplies, demands, cost);
  offline_cost_ = plan.total_cost;

  // Split each server location's inflow among its member servers, filling each
  // member to C copies in index order.
  std::vector<std::vector<std::pair<int, long long>>> inflow(server_locs.size());
  for (const auto& f : plan.flows) {
    long long units = std::llround(f.mass);
    if (std::fabs(f.mass - static_cast<double>(units)) > 1e-6)
      throw std::logic_error("blow-up: non-integral offline flow");
    if (units > 0) inflow[f.sink].emplace_back(f.source, units);
  }
  for (size_t j = 0; j < server_locs.size(); ++j) {
    std::sort(inflow[j].begin(), inflow[j].end());
    size_t member = 0;
    long long member_left = copies_;
    for (auto [loc, units] : inflow[j]) {
      while (units > 0) {
        if (member >= server_members[j].size())
          throw std::logic_error("blow-up: inflow exceeds server copies");
        long long take = std::min<long long>(units, member_left);
        degrees_.s_counts[loc][server_members[j][member]] += static_cast<int>(take);
        units -= take;
        member_left -= take;
        if (member_left == 0) {
          ++member;
          member_left = copies_;
        }
      }
    }
  }

  blackbox_ = std::make_unique<OnlineMatcher>(cfg.blackbox, space_, sample_points_, cfg.seed);
  if (blackbox_->location_count() != nloc)
    throw std::logic_error("blow-up: blackbox location table mismatch");
}

std::vector<double> FractionalAdviceMatcher::serve(const Point& request) {
  const int n = static_cast<int>(servers_.size());
  if (served_ >= n) throw ValidationError("blow-up: all requests already served");
  std::map<int, int> counts;
  for (int t = 0; t < copies_; ++t) ++counts[blackbox_->serve_location(request)];
  degrees_.r_counts.push_back(counts);
  ++served_;

  std::vector<double> row(n, 0.0);
  for (const auto& [loc, cnt] : counts) {
    double deg_r = static_cast<double>(cnt) / static_cast<double>(degrees_.multiplicity[loc]);
    for (const auto& [s, scnt] : degrees_.s_counts[loc])
      row[s] += deg_r * static_cast<double>(scnt) / static_cast<double>(copies_);
  }
  return row;
}

double FractionalAdviceMatcher::blackbox_cost() const {
  return blackbox_ ? blackbox_->total_cost() : 0.0;
}

FractionalRunResult run_fractional_advice(const MetricSpace& space,
                                          const std::vector<Point>& servers,
                                          const AdviceDistribution& advice,
                                          const std::vector<Point>& requests,
                                          const BlowupConfig& cfg) {
  if (servers.size() != requests.size())
    throw ValidationError("blow-up run: request and server counts differ");
  FractionalAdviceMatcher matcher(space, servers, advice, cfg);
  const int n = static_cast<int>(servers.size());
  FractionalRunResult out;
  out.matching.n = n;
  out.matching.total_cost = 0.0;
  for (int r = 0; r < n; ++r) {
    std::vector<double> row = matcher.serve(requests[r]);
    for (int s = 0; s < n; ++s) {
      if (row[s] <= 0.0) continue;
      out.matching.edges.push_back({r, s, row[s]});
      out.matching.total_cost += row[s] * space.distance(requests[r], servers[s]);
    }
  }
  out.actual_cost = out.matching.total_cost;
  out.blackbox_cost = matcher.blackbox_cost();
  out.offline_blowup_cost = matcher.offline_blowup_cost();
  out.copies = matcher.copies();
  out.decomposition_bound =
      (out.blackbox_cost + out.offline_blowup_cost) / static_cast<double>(out.copies);
  out.sample_points = matcher.sample_points();
  return out;
}

}  // namespace omm
