#pragma once

#include <vector>

#include "omm/common.hpp"

namespace omm {

using Matrix = std::vector<std::vector<double>>;

// Perfect matching on a square instance: request i -> server server_of[i].
struct IntegralMatching {
  std::vector<int> server_of;
  double total_cost = 0.0;
};

struct FractionalEdge {
  int request = 0;
  int server = 0;
  double weight = 0.0;
};

// Doubly-substochastic weights: row sums 1, column sums <= 1.
struct FractionalMatching {
  int n = 0;
  std::vector<FractionalEdge> edges;
  double total_cost = 0.0;

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
};

struct TransportEdge {
  int source = 0;
  int sink = 0;
  double mass = 0.0;
};

struct WeightedTransportPlan {
  std::vector<TransportEdge> flows;
  double total_cost = 0.0;
};

// Minimum-cost perfect matching on a square nonnegative cost matrix.
IntegralMatching solve_integral(const Matrix& costs);

// Optimal fractional matching; its cost coincides with solve_integral's.
FractionalMatching solve_fractional(const Matrix& costs);

// Balanced transportation problem; supplies/demands are arbitrary nonnegative
// reals with equal totals (tolerance 1e-9).
WeightedTransportPlan solve_transport(const std::vector<double>& supplies,
                                      const std::vector<double>& demands,
                                      const Matrix& costs);

}  // namespace omm
