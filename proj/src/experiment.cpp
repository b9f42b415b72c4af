#include "omm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include "omm/adversary.hpp"
#include "omm/rng.hpp"

namespace omm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

Instance generate_instance(const GeneratorSpec& g, uint64_t seed) {
  if (g.n < 1) throw ValidationError("generator: n must be positive");
  if (g.dim < 1) throw ValidationError("generator: dim must be positive");
  if (g.family != "uniform" && g.family != "gaussian")
    throw ValidationError("generator: unknown family " + g.family);
  Rng rng(seed);
  auto draw = [&]() {
    Point p{std::vector<double>(g.dim)};
    for (int j = 0; j < g.dim; ++j) p.v[j] = g.family == "uniform" ? rng.uniform01() : rng.normal();
    return p;
  };
  Instance inst;
  inst.metric = MetricSpace::euclidean(g.dim);
  for (int i = 0; i < g.n; ++i) inst.servers.push_back(draw());
  for (int i = 0; i < g.n; ++i) inst.requests.push_back(draw());

  if (g.advice_mode == "perfect") {
    inst.advice = AdviceDistribution::finite(empirical(inst.requests));
  } else if (g.advice_mode == "gaussian") {
    if (g.advice_sigma <= 0) throw ValidationError("generator: advice_sigma must be positive");
    GaussianComponent c;
    std::vector<double> mean(g.dim, 0.0);
    for (const auto& r : inst.requests)
      for (int j = 0; j < g.dim; ++j) mean[j] += r.v[j] / static_cast<double>(g.n);
    for (int j = 0; j < g.dim; ++j) mean[j] += g.advice_shift;
    c.mean = Point(std::move(mean));
    c.stddev.assign(g.dim, g.advice_sigma);
    c.weight = 1.0;
    inst.advice = AdviceDistribution::gaussian_mixture({c});
  } else if (g.advice_mode == "box") {
    if (g.advice_sigma <= 0) throw ValidationError("generator: advice_sigma must be positive");
    Point lo{std::vector<double>(g.dim, g.advice_shift)};
    Point hi{std::vector<double>(g.dim, g.advice_shift + g.advice_sigma)};
    inst.advice = AdviceDistribution::uniform_box(std::move(lo), std::move(hi));
  } else {
    throw ValidationError("generator: unknown advice_mode " + g.advice_mode);
  }
  return inst;
}

double offline_opt(const std::vector<Point>& requests, const std::vector<Point>& servers,
                   const MetricSpace& space) {
  const int nr = static_cast<int>(requests.size());
  const int ns = static_cast<int>(servers.size());
  if (nr > ns) throw ValidationError("experiment: more requests than servers");
  Matrix cost(ns, std::vector<double>(ns, 0.0));  // dummy request rows cost 0 everywhere
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < ns; ++j) cost[i][j] = space.distance(requests[i], servers[j]);
  return solve_integral(cost).total_cost;
}

double safe_ratio(double actual, double opt) {
  if (opt > kTol) return actual / opt;
  return actual <= kTol ? 1.0 : std::numeric_limits<double>::infinity();
}

// W1 estimate between a point multiset and the advice; large multisets are
// strided down so the report term stays affordable.
double multiset_advice_w1(const std::vector<Point>& points, const AdviceDistribution& advice,
                          const MetricSpace& space, int resolution, uint64_t seed) {
  std::vector<Point> side;
  if (points.size() <= 2048) {
    side = points;
  } else {
    size_t stride = (points.size() + 2047) / 2048;
    for (size_t i = 0; i < points.size(); i += stride) side.push_back(points[i]);
  }
  DiscreteDistribution d = empirical(side);
  if (advice.is_finite()) return wasserstein1(d, advice.atoms(), space);
  DiscreteDistribution proxy = empirical(sample(advice, std::max(resolution, 1), seed));
  return wasserstein1(d, proxy, space);
}

RunReport run_one_trial(const ExperimentConfig& cfg, const Instance& inst, int trial,
                        uint64_t trial_seed) {
  const int n = inst.n();
  if (static_cast<int>(inst.requests.size()) != n)
    throw ValidationError("experiment: request and server counts differ");

  RunReport r;
  r.algo = cfg.algo;
  r.n = n;
  r.seed = trial_seed;
  r.trial = trial;
  r.opt_cost = offline_opt(inst.requests, inst.servers, inst.metric);

  const int eta_res = std::max(cfg.eta_resolution, n);
  if (inst.advice)
    r.eta_hat = advice_error(*inst.advice, inst.requests, inst.metric, eta_res,
                             derive_seed(trial_seed, 101));

  if (cfg.algo == "greedy" || cfg.algo == "permutation") {
    BaselineKind kind = cfg.algo == "greedy" ? BaselineKind::Greedy : BaselineKind::Permutation;
    IntegralMatching m = run_online(kind, inst.metric, inst.servers, inst.requests, trial_seed);
    r.actual_cost = m.total_cost;
    r.online_cost = m.total_cost;
    r.offline_cost = 0.0;
    r.beta_emp = safe_ratio(m.total_cost, r.opt_cost);
    r.integral = std::move(m);
  } else if (cfg.algo == "advice_fractional") {
    if (!inst.advice) throw ValidationError("experiment: advice_fractional needs advice");
    BlowupConfig bc;
    bc.copies_per_unit = cfg.copies;
    bc.blackbox = cfg.baseline;
    bc.seed = trial_seed;
    FractionalRunResult res =
        run_fractional_advice(inst.metric, inst.servers, *inst.advice, inst.requests, bc);
    r.actual_cost = res.actual_cost;
    r.online_cost = res.blackbox_cost;
    r.offline_cost = res.offline_blowup_cost;
    r.residual_w1 = multiset_advice_w1(res.sample_points, *inst.advice, inst.metric, eta_res,
                                       derive_seed(trial_seed, 202));
    // Blackbox quality on its own subproblem: request copies versus samples.
    std::vector<Point> blown_requests;
    blown_requests.reserve(inst.requests.size() * static_cast<size_t>(res.copies));
    for (const auto& q : inst.requests)
      for (int t = 0; t < res.copies; ++t) blown_requests.push_back(q);
    DiscreteDistribution rr = empirical(blown_requests), dd = empirical(res.sample_points);
    double blow_opt =
        wasserstein1(rr, dd, inst.metric) * static_cast<double>(blown_requests.size());
    r.beta_emp = safe_ratio(res.blackbox_cost, blow_opt);
    r.fractional = std::move(res.matching);
  } else if (cfg.algo == "advice_integral") {
    if (!inst.advice) throw ValidationError("experiment: advice_integral needs advice");
    IntegralRunResult res =
        run_integral_advice(inst.metric, inst.servers, *inst.advice, inst.requests, cfg.baseline,
                            cfg.quantizer, trial_seed);
    r.actual_cost = res.actual_cost;
    r.online_cost = res.blackbox_cost;
    r.offline_cost = res.offline_pairing_cost;
    r.residual_w1 = res.residual_w1;
    QuantizerParams qp = cfg.quantizer;
    QuantizerResult q = quantize(*inst.advice, n, qp, trial_seed);
    std::vector<Point> slots;
    for (size_t c = 0; c < q.centers.size(); ++c)
      for (int t = 0; t < q.multiplicities[c]; ++t) slots.push_back(q.centers[c]);
    r.beta_emp = safe_ratio(res.blackbox_cost, offline_opt(inst.requests, slots, inst.metric));
    r.integral = std::move(res.matching);
  } else {
    throw ValidationError("experiment: unknown algorithm " + cfg.algo);
  }
  r.ratio = safe_ratio(r.actual_cost, r.opt_cost);
  return r;
}

}  // namespace

std::vector<RunReport> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("experiment: trials must be positive");
  if (cfg.copies < 0) throw ValidationError("experiment: copies must be nonnegative");

  std::optional<Instance> fixture;
  if (const auto* path = std::get_if<std::string>(&cfg.source)) fixture = load_instance(*path);

  std::vector<RunReport> out;
  out.reserve(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    const uint64_t trial_seed = derive_seed(cfg.seed, t);
    try {
      auto started = std::chrono::steady_clock::now();
      Instance inst =
          fixture ? *fixture : generate_instance(std::get<GeneratorSpec>(cfg.source), trial_seed);
      RunReport r = run_one_trial(cfg, inst, t, trial_seed);
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started)
                      .count();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "trial %d failed: %s\n", t, e.what());
    }
  }
  return out;
}

double w1_cdf_vs_points(const AdviceDistribution& dist, std::vector<double> xs) {
  if (dist.dim() != 1) throw ValidationError("cdf oracle: distribution must be 1-D");
  if (xs.empty()) throw ValidationError("cdf oracle: no sample points");
  for (double x : xs)
    if (!std::isfinite(x)) throw ValidationError("cdf oracle: non-finite sample");

  if (dist.is_finite() ||
      (dist.kind() == AdviceKind::UniformBox && dist.high().v[0] - dist.low().v[0] < 1e-12)) {
    DiscreteDistribution ref = dist.is_finite()
                                   ? dist.atoms()
                                   : DiscreteDistribution{{dist.low()}, {1.0}};
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back(Point(x));
    return w1_line_exact(ref, empirical(pts));
  }

  std::function<double(double)> cdf, lower_area, upper_area;
  if (dist.kind() == AdviceKind::GaussianMixture) {
    const auto comps = dist.components();
    cdf = [comps](double t) {
      double f = 0.0;
      for (const auto& c : comps) f += c.weight * Phi((t - c.mean.v[0]) / c.stddev[0]);
      return f;
    };
    lower_area = [comps](double t) {  // integral of F over (-inf, t]
      double a = 0.0;
      for (const auto& c : comps) {
        double z = (t - c.mean.v[0]) / c.stddev[0];
        a += c.weight * c.stddev[0] * (z * Phi(z) + phi(z));
      }
      return a;
    };
    upper_area = [comps](double t) {  // integral of 1-F over [t, inf)
      double a = 0.0;
      for (const auto& c : comps) {
        double z = (t - c.mean.v[0]) / c.stddev[0];
        a += c.weight * c.stddev[0] * (phi(z) - z * (1.0 - Phi(z)));
      }
      return a;
    };
  } else {
    const double lo = dist.low().v[0], hi = dist.high().v[0], w = hi - lo;
    cdf = [lo, hi, w](double t) {
      if (t <= lo) return 0.0;
      if (t >= hi) return 1.0;
      return (t - lo) / w;
    };
    lower_area = [lo, hi, w](double t) {
      if (t <= lo) return 0.0;
      if (t >= hi) return 0.5 * w + (t - hi);
      return (t - lo) * (t - lo) / (2.0 * w);
    };
    upper_area = [lo, hi, w](double t) {
      if (t >= hi) return 0.0;
      if (t <= lo) return 0.5 * w + (lo - t);
      return (hi - t) * (hi - t) / (2.0 * w);
    };
  }

  std::sort(xs.begin(), xs.end());
  const int n = static_cast<int>(xs.size());
  double total = lower_area(xs.front()) + upper_area(xs.back());
  for (int i = 1; i < n; ++i) {
    double a = xs[i - 1], b = xs[i];
    if (a == b) continue;
    const double q = static_cast<double>(i) / static_cast<double>(n);
    double fa = cdf(a), fb = cdf(b);
    double area_ab = lower_area(b) - lower_area(a);
    if (fb <= q) {
      total += q * (b - a) - area_ab;
    } else if (fa >= q) {
      total += area_ab - q * (b - a);
    } else {
      double l = a, r = b;  // F crosses q exactly once in [a, b]
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (l + r);
        (cdf(m) < q ? l : r) = m;
      }
      double t = 0.5 * (l + r);
      double area_at = lower_area(t) - lower_area(a);
      total += (q * (t - a) - area_at) + ((area_ab - area_at) - q * (b - t));
    }
  }
  return total;
}

double fit_loglog_slope(const std::vector<int>& sizes, const std::vector<double>& means) {
  if (sizes.size() != means.size() || sizes.size() < 2)
    throw ValidationError("slope fit: need at least two (size, mean) pairs");
  for (double m : means)
    if (m <= 0) return 0.0;  // a flat-zero benchmark (e.g. point mass) has no rate
  const int k = static_cast<int>(sizes.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(k), ys(k);
  for (int i = 0; i < k; ++i) {
    xs[i] = std::log(static_cast<double>(sizes[i]));
    ys[i] = std::log(means[i]);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / k, my = sy / k;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < k; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  if (den <= 0) throw ValidationError("slope fit: sizes must not all coincide");
  return num / den;
}

ConvergenceResult convergence_benchmark(const AdviceDistribution& dist,
                                        const std::vector<int>& sizes, int trials,
                                        uint64_t seed) {
  if (sizes.empty()) throw ValidationError("convergence: no sizes");
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ValidationError("convergence: sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw ValidationError("convergence: sizes must be strictly increasing");
  }
  if (trials < 10) throw ValidationError("convergence: need at least 10 trials");
  const int d = dist.dim();
  if (d > 3) throw ValidationError("convergence: dimension above 3 is rejected");

  ConvergenceResult out;
  out.sizes = sizes;
  const MetricSpace space = MetricSpace::euclidean(d);
  for (size_t k = 0; k < sizes.size(); ++k) {
    const int n = sizes[k];
    std::vector<double> vals;
    vals.reserve(trials);
    for (int t = 0; t < trials; ++t) {
      const uint64_t s = derive_seed(seed, k * 1000003ULL + static_cast<uint64_t>(t));
      std::vector<Point> pts = sample(dist, n, s);
      double w;
      if (d == 1) {
        std::vector<double> xs(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i].v[0];
        w = w1_cdf_vs_points(dist, std::move(xs));
      } else {
        std::vector<Point> ref = sample(dist, 10 * n, derive_seed(s, 1));
        w = wasserstein1(empirical(pts), empirical(ref), space);
      }
      vals.push_back(w);
    }
    out.means.push_back(std::accumulate(vals.begin(), vals.end(), 0.0) /
                        static_cast<double>(trials));
    out.trials.push_back(std::move(vals));
  }
  out.slope = fit_loglog_slope(out.sizes, out.means);
  return out;
}

std::vector<RunReport> convergence_reports(const ConvergenceResult& result,
                                           const std::string& label, uint64_t seed) {
  std::vector<RunReport> out;
  for (size_t k = 0; k < result.sizes.size(); ++k) {
    RunReport r;
    r.algo = label;
    r.n = result.sizes[k];
    r.seed = seed;
    r.trial = static_cast<int>(k);
    r.actual_cost = result.means[k];
    out.push_back(std::move(r));
  }
  RunReport s;
  s.algo = label + ":slope";
  s.n = 0;
  s.seed = seed;
  s.trial = static_cast<int>(result.sizes.size());
  s.actual_cost = result.slope;
  out.push_back(std::move(s));
  return out;
}

}  // namespace omm
