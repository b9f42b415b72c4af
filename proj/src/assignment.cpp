#include "omm/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace omm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-12;

void check_square(const Matrix& cost) {
  const size_t n = cost.size();
  if (n == 0) throw ValidationError("assignment: empty cost matrix");
  for (const auto& row : cost) {
    if (row.size() != n) throw ValidationError("assignment: cost matrix is not square");
    for (double c : row)
      if (!std::isfinite(c)) throw ValidationError("assignment: non-finite cost entry");
  }
}

}  // namespace

std::vector<double> FractionalMatching::row_sums() const {
  std::vector<double> r(n, 0.0);
  for (const auto& e : edges) r[e.request] += e.weight;
  return r;
}

std::vector<double> FractionalMatching::col_sums() const {
  std::vector<double> c(n, 0.0);
  for (const auto& e : edges) c[e.server] += e.weight;
  return c;
}

IntegralMatching solve_integral(const Matrix& cost) {
  check_square(cost);
  const int n = static_cast<int>(cost.size());

  // Kuhn-Munkres with row/column potentials, O(n^3).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  IntegralMatching out;
  out.server_of.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.server_of[p[j] - 1] = j - 1;
  out.total_cost = 0.0;
  for (int i = 0; i < n; ++i) out.total_cost += cost[i][out.server_of[i]];
  return out;
}

WeightedTransportPlan solve_transport(const std::vector<double>& supplies,
                                      const std::vector<double>& demands, const Matrix& cost) {
  const int m = static_cast<int>(supplies.size());
  const int n = static_cast<int>(demands.size());
  if (m == 0 || n == 0) throw ValidationError("transport: empty supply or demand side");
  if (cost.size() != static_cast<size_t>(m))
    throw ValidationError("transport: cost matrix rows do not match supply count");
  double total_s = 0.0, total_d = 0.0;
  for (double s : supplies) {
    if (!std::isfinite(s) || s < 0) throw ValidationError("transport: supplies must be finite and nonnegative");
    total_s += s;
  }
  for (double d : demands) {
    if (!std::isfinite(d) || d < 0) throw ValidationError("transport: demands must be finite and nonnegative");
    total_d += d;
  }
  for (const auto& row : cost) {
    if (row.size() != static_cast<size_t>(n))
      throw ValidationError("transport: cost matrix columns do not match demand count");
    for (double c : row)
      if (!std::isfinite(c) || c < 0)
        throw ValidationError("transport: costs must be finite and nonnegative");
  }
  if (std::fabs(total_s - total_d) > 1e-9 * std::max(1.0, std::max(total_s, total_d)))
    throw ValidationError("transport: total supply and total demand differ");

  std::vector<double> rem_s = supplies, rem_d = demands;
  // flow[i] maps sink -> mass; rev[j] maps source -> mass (kept in sync).
  std::vector<std::map<int, double>> flow(m), rev(n);
  std::vector<double> pot(m + n, 0.0);

  double pending = std::min(total_s, total_d);
  std::vector<double> dist(m + n);
  std::vector<int> par(m + n);
  using QE = std::pair<double, int>;

  while (pending > kMassTol) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(par.begin(), par.end(), -1);
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    for (int i = 0; i < m; ++i) {
      if (rem_s[i] > kMassTol) {
        dist[i] = 0.0;
        pq.emplace(0.0, i);
      }
    }
    int target = -1;
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      if (v >= m && rem_d[v - m] > kMassTol) {
        target = v;
        break;
      }
      if (v < m) {
        const int i = v;
        const auto& row = cost[i];
        for (int j = 0; j < n; ++j) {
          double rc = row[j] + pot[i] - pot[m + j];
          if (rc < 0) rc = 0;
          double nd = d + rc;
          if (nd < dist[m + j]) {
            dist[m + j] = nd;
            par[m + j] = i;
            pq.emplace(nd, m + j);
          }
        }
      } else {
        const int j = v - m;
        for (const auto& [i, mass] : rev[j]) {
          (void)mass;
          double rc = -cost[i][j] + pot[m + j] - pot[i];
          if (rc < 0) rc = 0;
          double nd = d + rc;
          if (nd < dist[i]) {
            dist[i] = nd;
            par[i] = m + j;
            pq.emplace(nd, i);
          }
        }
      }
    }
    if (target < 0) throw std::logic_error("transport: no augmenting path found");

    // Unreached nodes shift by the full target distance, reached ones by their
    // own label capped at it; both keep every reduced cost nonnegative.
    const double dt = dist[target];
    for (int v = 0; v < m + n; ++v) pot[v] += std::min(dist[v], dt);

    // Bottleneck along the path, then push.
    double delta = std::min(rem_d[target - m], kInf);
    int src = -1;
    for (int v = target; v != -1; v = par[v]) {
      int u = par[v];
      if (u == -1) {
        src = v;
        break;
      }
      if (u >= m) delta = std::min(delta, rev[u - m].at(v));  // residual of a used edge
    }
    delta = std::min(delta, rem_s[src]);
    for (int v = target; par[v] != -1; v = par[v]) {
      int u = par[v];
      if (u < m) {
        int i = u, j = v - m;
        flow[i][j] += delta;
        rev[j][i] = flow[i][j];
      } else {
        int j = u - m, i = v;
        double left = flow[i][j] - delta;
        if (left <= kMassTol) {
          flow[i].erase(j);
          rev[j].erase(i);
        } else {
          flow[i][j] = left;
          rev[j][i] = left;
        }
      }
    }
    rem_s[src] -= delta;
    rem_d[target - m] -= delta;
    pending -= delta;
    if (rem_s[src] < kMassTol) rem_s[src] = 0.0;
    if (rem_d[target - m] < kMassTol) rem_d[target - m] = 0.0;
  }

  WeightedTransportPlan plan;
  plan.total_cost = 0.0;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, mass] : flow[i]) {
      if (mass <= kMassTol) continue;
      plan.flows.push_back({i, j, mass});
      plan.total_cost += mass * cost[i][j];
    }
  }
  return plan;
}

FractionalMatching solve_fractional(const Matrix& cost) {
  check_square(cost);
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost)
    for (double c : row)
      if (c < 0) throw ValidationError("assignment: fractional solver requires nonnegative costs");
  std::vector<double> ones(n, 1.0);
  WeightedTransportPlan plan = solve_transport(ones, ones, cost);
  FractionalMatching out;
  out.n = n;
  out.total_cost = plan.total_cost;
  out.edges.reserve(plan.flows.size());
  for (const auto& f : plan.flows) out.edges.push_back({f.source, f.sink, f.mass});
  return out;
}

}  // namespace omm
