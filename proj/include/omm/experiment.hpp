#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omm/advice_fractional.hpp"
#include "omm/advice_integral.hpp"
#include "omm/instance.hpp"
#include "omm/report.hpp"

namespace omm {

// Synthesizes random instances when no fixture file is given.
struct GeneratorSpec {
  std::string family = "uniform";  // uniform | gaussian
  int n = 8;
  int dim = 1;
  std::string advice_mode = "perfect";  // perfect | gaussian | box
  double advice_shift = 0.0;            // center offset for gaussian advice
  double advice_sigma = 1.0;
};

struct ExperimentConfig {
  std::variant<std::string, GeneratorSpec> source;  // fixture path or generator
  std::string algo = "greedy";  // greedy | permutation | advice_fractional | advice_integral
  BaselineKind baseline = BaselineKind::Greedy;
  int copies = 0;  // 0 = default blow-up
  QuantizerParams quantizer;
  int trials = 1;
  uint64_t seed = 0;
  int eta_resolution = 512;
};

// Seeded, reproducible trials; a failing trial is reported on stderr and
// skipped rather than aborting the batch.
std::vector<RunReport> run_experiment(const ExperimentConfig& cfg);

struct ConvergenceResult {
  std::vector<int> sizes;
  std::vector<double> means;                 // mean empirical W1 per size
  std::vector<std::vector<double>> trials;   // per-size trial values
  double slope = 0.0;                        // least-squares log-log fit
};

// Mean W1 between the advice distribution and its own N-point empirical
// samples, per size. d=1 uses the exact CDF-area oracle; d in {2,3} compares
// against a 10x reference sample; d > 3 is rejected.
ConvergenceResult convergence_benchmark(const AdviceDistribution& dist,
                                        const std::vector<int>& sizes, int trials,
                                        uint64_t seed);

std::vector<RunReport> convergence_reports(const ConvergenceResult& result,
                                           const std::string& label, uint64_t seed);

// Exact W1 between a 1-D distribution with a closed-form CDF and a point set
// (area between the CDF and the empirical CDF).
double w1_cdf_vs_points(const AdviceDistribution& dist, std::vector<double> xs);

// Least-squares slope of log(means) against log(sizes).
double fit_loglog_slope(const std::vector<int>& sizes, const std::vector<double>& means);

}  // namespace omm
