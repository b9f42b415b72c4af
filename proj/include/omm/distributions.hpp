#pragma once

#include <cstdint>
#include <vector>

#include "omm/assignment.hpp"
#include "omm/metric.hpp"

namespace omm {

// Finitely supported probability distribution; atoms distinct, masses > 0.
struct DiscreteDistribution {
  std::vector<Point> atoms;
  std::vector<double> masses;

  int dim() const { return atoms.empty() ? 0 : atoms.front().dim(); }
};

struct GaussianComponent {
  Point mean;
  std::vector<double> stddev;  // per axis
  double weight = 1.0;
};

enum class AdviceKind { FiniteAtoms, GaussianMixture, UniformBox };

// The prediction: where requests are believed to arrive.
class AdviceDistribution {
 public:
  static AdviceDistribution finite(DiscreteDistribution d);
  static AdviceDistribution gaussian_mixture(std::vector<GaussianComponent> comps);
  static AdviceDistribution uniform_box(Point low, Point high);

  AdviceKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == AdviceKind::FiniteAtoms; }
  int dim() const;

  const DiscreteDistribution& atoms() const { return finite_; }
  const std::vector<GaussianComponent>& components() const { return comps_; }
  const Point& low() const { return low_; }
  const Point& high() const { return high_; }

 private:
  AdviceDistribution() = default;
  AdviceKind kind_ = AdviceKind::FiniteAtoms;
  DiscreteDistribution finite_;
  std::vector<GaussianComponent> comps_;
  Point low_, high_;
};

struct QuantizerParams {
  int proxy_samples = 2048;  // sample size standing in for a continuous advice
  int restarts = 10;
  int median_iters = 100;
  double median_tol = 1e-10;
};

struct QuantizerResult {
  std::vector<Point> centers;          // pairwise distinct, at most n of them
  std::vector<int> multiplicities;     // positive, summing to n
  std::vector<double> cell_masses;     // fractional mass captured by each center
  double residual_w1 = 0.0;            // W1(advice, induced distribution)
};

std::vector<Point> sample(const AdviceDistribution& advice, int k, uint64_t seed);

DiscreteDistribution empirical(const std::vector<Point>& points);

double wasserstein1(const DiscreteDistribution& mu, const DiscreteDistribution& nu,
                    const MetricSpace& space);

// W1 between the advice and the empirical request distribution. Exact for
// finite advice; a `resolution`-point sample proxy otherwise.
double advice_error(const AdviceDistribution& advice, const std::vector<Point>& requests,
                    const MetricSpace& space, int resolution, uint64_t seed);

// Best <=n-point summary of the advice under W1 (n-median placement).
QuantizerResult quantize(const AdviceDistribution& advice, int n,
                         const QuantizerParams& params, uint64_t seed);

// Quantile-coupling formula on the line; independent of the transport solver.
double w1_line_exact(const DiscreteDistribution& mu, const DiscreteDistribution& nu);

// Deterministic proportional expansion of a finite distribution into k points
// (largest-remainder rounding, ties to the lower atom index).
std::vector<int> proportional_counts(const std::vector<double>& masses, int k);

}  // namespace omm
