#include "omm/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace omm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BaselineKind baseline_from_string(const std::string& s) {
  if (s == "greedy") return BaselineKind::Greedy;
  if (s == "permutation") return BaselineKind::Permutation;
  throw ValidationError("unknown baseline kind: " + s);
}

std::string to_string(BaselineKind k) {
  return k == BaselineKind::Greedy ? "greedy" : "permutation";
}

OnlineMatcher::OnlineMatcher(BaselineKind kind, const MetricSpace& space,
                             const std::vector<Point>& servers, uint64_t /*seed*/)
    : kind_(kind), space_(space) {
  if (servers.empty()) throw ValidationError("online matcher: no servers");
  for (size_t i = 0; i < servers.size(); ++i) {
    int loc = -1;
    for (size_t l = 0; l < locations_.size(); ++l) {
      if (locations_[l] == servers[i]) {
        loc = static_cast<int>(l);
        break;
      }
    }
    if (loc < 0) {
      loc = static_cast<int>(locations_.size());
      locations_.push_back(servers[i]);
      members_.emplace_back();
      capacity_.push_back(0);
      used_.push_back(0);
      handed_out_.push_back(0);
    }
    members_[loc].push_back(static_cast<int>(i));
    ++capacity_[loc];
  }
  total_capacity_ = static_cast<int>(servers.size());
  off_.offline_used.assign(locations_.size(), 0);
  off_.pot_loc.assign(locations_.size(), 0.0);
}

int OnlineMatcher::greedy_pick(const Point& request) const {
  int best = -1;
  double bd = kInf;
  for (size_t l = 0; l < locations_.size(); ++l) {
    if (used_[l] >= capacity_[l]) continue;
    double d = space_.distance(request, locations_[l]);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(l);
    }
  }
  return best;
}

// One shortest-augmenting-path step of the offline optimum over all arrived
// requests versus the full server multiset; returns the location whose offline
// usage grows. Requests and locations carry dual potentials across arrivals so
// each step is a plain Dijkstra over reduced costs.
int OnlineMatcher::permutation_pick(const Point& request) {
  const int nloc = location_count();
  const int r0 = static_cast<int>(off_.requests.size());
  off_.requests.push_back(request);
  off_.match_loc.push_back(-1);

  std::vector<double> req_dist(nloc);
  for (int l = 0; l < nloc; ++l) req_dist[l] = space_.distance(request, locations_[l]);
  // The fresh request's potential keeps every outgoing reduced cost >= 0.
  double pot0 = -kInf;
  for (int l = 0; l < nloc; ++l) pot0 = std::max(pot0, off_.pot_loc[l] - req_dist[l]);
  off_.pot_req.push_back(pot0);

  // Node ids: locations 0..nloc-1, request k is nloc+k.
  const int nodes = nloc + r0 + 1;
  std::vector<double> dist(nodes, kInf);
  std::vector<int> par(nodes, -1);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[nloc + r0] = 0.0;
  pq.emplace(0.0, nloc + r0);
  int target = -1;
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v < nloc && off_.offline_used[v] < capacity_[v]) {
      target = v;
      break;
    }
    if (v >= nloc) {
      const int r = v - nloc;
      const Point& rp = off_.requests[r];
      for (int l = 0; l < nloc; ++l) {
        double c = r == r0 ? req_dist[l] : space_.distance(rp, locations_[l]);
        double rc = c + off_.pot_req[r] - off_.pot_loc[l];
        if (rc < 0) rc = 0;
        if (d + rc < dist[l]) {
          dist[l] = d + rc;
          par[l] = v;
          pq.emplace(dist[l], l);
        }
      }
    } else {
      const int l = v;
      for (int r = 0; r < r0; ++r) {
        if (off_.match_loc[r] != l) continue;
        double rc = -space_.distance(off_.requests[r], locations_[l]) + off_.pot_loc[l] -
                    off_.pot_req[r];
        if (rc < 0) rc = 0;
        if (d + rc < dist[nloc + r]) {
          dist[nloc + r] = d + rc;
          par[nloc + r] = v;
          pq.emplace(dist[nloc + r], nloc + r);
        }
      }
    }
  }
  if (target < 0) throw std::logic_error("permutation matcher: no augmenting path");

  const double dt = dist[target];
  for (int l = 0; l < nloc; ++l) off_.pot_loc[l] += std::min(dist[l], dt);
  for (int r = 0; r <= r0; ++r) off_.pot_req[r] += std::min(dist[nloc + r], dt);

  // Flip matches along the path; the endpoint location gains one unit.
  int v = target;
  while (par[v] != -1) {
    int u = par[v];
    if (u >= nloc && v < nloc) off_.match_loc[u - nloc] = v;
    v = u;
  }
  ++off_.offline_used[target];
  return target;
}

int OnlineMatcher::serve_location(const Point& request) {
  if (served_ >= total_capacity_) throw ValidationError("online matcher: capacity exhausted");
  int loc = kind_ == BaselineKind::Greedy ? greedy_pick(request) : permutation_pick(request);
  if (loc < 0 || used_[loc] >= capacity_[loc])
    throw std::logic_error("online matcher: picked an unavailable location");
  ++used_[loc];
  ++served_;
  total_cost_ += space_.distance(request, locations_[loc]);
  history_.emplace_back(request, loc);
  return loc;
}

int OnlineMatcher::serve(const Point& request) {
  int loc = serve_location(request);
  return members_[loc][handed_out_[loc]++];
}

IntegralMatching run_online(BaselineKind kind, const MetricSpace& space,
                            const std::vector<Point>& servers,
                            const std::vector<Point>& requests, uint64_t seed) {
  if (requests.size() > servers.size())
    throw ValidationError("online run: more requests than server capacity");
  OnlineMatcher matcher(kind, space, servers, seed);
  IntegralMatching out;
  out.server_of.reserve(requests.size());
  out.total_cost = 0.0;
  for (const auto& r : requests) {
    int s = matcher.serve(r);
    out.server_of.push_back(s);
    out.total_cost += space.distance(r, servers[s]);
  }
  return out;
}

}  // namespace omm
