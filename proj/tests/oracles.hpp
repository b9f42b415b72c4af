#pragma once

// Independent reference implementations the tests compare the library
// against. Deliberately naive: exhaustive search and Bellman-Ford flows share
// no code or algorithmic structure with the production solvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "omm/assignment.hpp"
#include "omm/metric.hpp"

namespace oracle {

inline double brute_force_assignment(const omm::Matrix& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += cost[i][perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Successive shortest augmenting paths found by plain Bellman-Ford on the
// residual graph (no potentials, no heap). Small inputs only.
inline double bellman_transport(std::vector<double> sup, std::vector<double> dem,
                                const omm::Matrix& cost) {
  const int m = static_cast<int>(sup.size());
  const int n = static_cast<int>(dem.size());
  const double inf = std::numeric_limits<double>::infinity();
  const double tol = 1e-12;
  std::vector<std::vector<double>> flow(m, std::vector<double>(n, 0.0));
  double pending = 0.0;
  for (double d : dem) pending += d;

  while (pending > tol) {
    std::vector<double> dist(m + n, inf);
    std::vector<int> par(m + n, -1);
    for (int i = 0; i < m; ++i)
      if (sup[i] > tol) dist[i] = 0.0;
    for (int round = 0; round < m + n; ++round) {
      bool changed = false;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          if (dist[i] < inf && dist[i] + cost[i][j] < dist[m + j] - 1e-15) {
            dist[m + j] = dist[i] + cost[i][j];
            par[m + j] = i;
            changed = true;
          }
          if (flow[i][j] > tol && dist[m + j] < inf &&
              dist[m + j] - cost[i][j] < dist[i] - 1e-15) {
            dist[i] = dist[m + j] - cost[i][j];
            par[i] = m + j;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    int best = -1;
    for (int j = 0; j < n; ++j)
      if (dem[j] > tol && dist[m + j] < inf && (best < 0 || dist[m + j] < dist[m + best]))
        best = j;
    if (best < 0) return std::numeric_limits<double>::quiet_NaN();  // should not happen

    double delta = dem[best];
    for (int v = m + best; par[v] != -1; v = par[v]) {
      int u = par[v];
      if (u >= m) delta = std::min(delta, flow[v][u - m]);
    }
    int src = m + best;
    while (par[src] != -1) src = par[src];
    delta = std::min(delta, sup[src]);
    for (int v = m + best; par[v] != -1; v = par[v]) {
      int u = par[v];
      if (u < m)
        flow[u][v - m] += delta;
      else
        flow[v][u - m] -= delta;
    }
    sup[src] -= delta;
    dem[best] -= delta;
    pending -= delta;
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) total += flow[i][j] * cost[i][j];
  return total;
}

inline double bellman_w1(const std::vector<omm::Point>& xs, const std::vector<double>& xw,
                         const std::vector<omm::Point>& ys, const std::vector<double>& yw,
                         const omm::MetricSpace& space) {
  omm::Matrix cost(xs.size(), std::vector<double>(ys.size()));
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) cost[i][j] = space.distance(xs[i], ys[j]);
  return bellman_transport(xw, yw, cost);
}

}  // namespace oracle
