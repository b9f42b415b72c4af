#include "omm/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "omm/rng.hpp"

namespace omm {

namespace {

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) {
    double d = a.v[i] - b.v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void check_point(const Point& p, int dim, const char* what) {
  if (p.dim() != dim) throw ValidationError(std::string(what) + ": inconsistent dimension");
  for (double x : p.v)
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite coordinate");
}

// Merges duplicate atoms (first-appearance order) and normalizes the masses.
DiscreteDistribution normalize_discrete(DiscreteDistribution d, const char* what) {
  if (d.atoms.empty()) throw ValidationError(std::string(what) + ": no atoms");
  if (d.masses.size() != d.atoms.size())
    throw ValidationError(std::string(what) + ": atoms and masses lengths differ");
  const int dim = d.atoms.front().dim();
  if (dim < 1) throw ValidationError(std::string(what) + ": zero-dimensional atom");
  DiscreteDistribution out;
  std::map<Point, size_t, PointLess> index;
  double total = 0.0;
  for (size_t i = 0; i < d.atoms.size(); ++i) {
    check_point(d.atoms[i], dim, what);
    double m = d.masses[i];
    if (!std::isfinite(m) || m <= 0)
      throw ValidationError(std::string(what) + ": masses must be positive");
    total += m;
    auto [it, fresh] = index.try_emplace(d.atoms[i], out.atoms.size());
    if (fresh) {
      out.atoms.push_back(d.atoms[i]);
      out.masses.push_back(m);
    } else {
      out.masses[it->second] += m;
    }
  }
  for (double& m : out.masses) m /= total;
  return out;
}

int nearest_center(const Point& x, const std::vector<Point>& centers) {
  int best = 0;
  double bd = euclid(x, centers[0]);
  for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
    double d = euclid(x, centers[c]);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

struct WeightedPoints {
  std::vector<Point> pts;
  std::vector<double> w;  // normalized to sum 1
};

double kmedian_objective(const WeightedPoints& wp, const std::vector<Point>& centers) {
  double s = 0.0;
  for (size_t i = 0; i < wp.pts.size(); ++i)
    s += wp.w[i] * euclid(wp.pts[i], centers[nearest_center(wp.pts[i], centers)]);
  return s;
}

Point weighted_median_1d(const std::vector<const Point*>& pts, const std::vector<double>& w) {
  std::vector<std::pair<double, double>> xs(pts.size());
  double total = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    xs[i] = {pts[i]->v[0], w[i]};
    total += w[i];
  }
  std::sort(xs.begin(), xs.end());
  double cum = 0.0;
  for (const auto& [x, wi] : xs) {
    cum += wi;
    if (cum >= 0.5 * total) return Point(x);
  }
  return Point(xs.back().first);
}

Point weiszfeld(const std::vector<const Point*>& pts, const std::vector<double>& w, Point y,
                int iters, double tol) {
  const int dim = y.dim();
  for (int t = 0; t < iters; ++t) {
    std::vector<double> num(dim, 0.0);
    double den = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      double d = euclid(*pts[i], y);
      double inv = w[i] / std::max(d, 1e-15);
      for (int j = 0; j < dim; ++j) num[j] += inv * pts[i]->v[j];
      den += inv;
    }
    if (den <= 0) break;
    Point next{std::vector<double>(dim)};
    for (int j = 0; j < dim; ++j) next.v[j] = num[j] / den;
    double moved = euclid(next, y);
    y = std::move(next);
    if (moved < tol) break;
  }
  return y;
}

std::vector<Point> kmedian_seed(const WeightedPoints& wp, int k, Rng& rng) {
  const int m = static_cast<int>(wp.pts.size());
  auto draw = [&](const std::vector<double>& score, double total) {
    double u = rng.uniform01() * total;
    double cum = 0.0;
    for (int i = 0; i < m; ++i) {
      cum += score[i];
      if (u < cum) return i;
    }
    return m - 1;
  };
  std::vector<Point> centers;
  centers.push_back(wp.pts[draw(wp.w, std::accumulate(wp.w.begin(), wp.w.end(), 0.0))]);
  std::vector<double> mind(m);
  for (int i = 0; i < m; ++i) mind[i] = euclid(wp.pts[i], centers[0]);
  std::vector<double> score(m);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      score[i] = wp.w[i] * mind[i];
      total += score[i];
    }
    int pick = total > 0 ? draw(score, total)
                         : draw(wp.w, std::accumulate(wp.w.begin(), wp.w.end(), 0.0));
    centers.push_back(wp.pts[pick]);
    for (int i = 0; i < m; ++i) mind[i] = std::min(mind[i], euclid(wp.pts[i], centers.back()));
  }
  return centers;
}

std::pair<std::vector<Point>, double> kmedian(const WeightedPoints& wp, int k,
                                              const QuantizerParams& params, uint64_t seed) {
  const int m = static_cast<int>(wp.pts.size());
  const int dim = wp.pts.front().dim();
  std::vector<Point> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, params.restarts); ++r) {
    Rng rng(derive_seed(seed, 1000 + static_cast<uint64_t>(r)));
    std::vector<Point> centers = kmedian_seed(wp, k, rng);
    double prev = std::numeric_limits<double>::infinity();
    std::vector<int> cell(m);
    for (int outer = 0; outer < std::max(1, params.median_iters); ++outer) {
      for (int i = 0; i < m; ++i) cell[i] = nearest_center(wp.pts[i], centers);
      for (int c = 0; c < k && c < static_cast<int>(centers.size()); ++c) {
        std::vector<const Point*> pts;
        std::vector<double> w;
        for (int i = 0; i < m; ++i) {
          if (cell[i] == c) {
            pts.push_back(&wp.pts[i]);
            w.push_back(wp.w[i]);
          }
        }
        if (pts.empty()) {
          // Relocate to the worst-served point.
          int worst = 0;
          double worst_score = -1.0;
          for (int i = 0; i < m; ++i) {
            double s = wp.w[i] * euclid(wp.pts[i], centers[nearest_center(wp.pts[i], centers)]);
            if (s > worst_score) {
              worst_score = s;
              worst = i;
            }
          }
          centers[c] = wp.pts[worst];
          continue;
        }
        centers[c] = dim == 1 ? weighted_median_1d(pts, w)
                              : weiszfeld(pts, w, centers[c], params.median_iters,
                                          params.median_tol);
      }
      double obj = kmedian_objective(wp, centers);
      if (prev - obj <= 1e-12 * std::max(1.0, prev)) {
        prev = obj;
        break;
      }
      prev = obj;
    }
    double obj = kmedian_objective(wp, centers);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(centers);
    }
  }
  // Coincident centers collapse to one.
  std::vector<Point> dedup;
  for (const auto& c : best)
    if (std::find(dedup.begin(), dedup.end(), c) == dedup.end()) dedup.push_back(c);
  return {dedup, best_obj};
}

uint64_t binomial_capped(int a, int b, uint64_t cap) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  uint64_t r = 1;
  for (int i = 1; i <= b; ++i) {
    r = r * static_cast<uint64_t>(a - b + i) / static_cast<uint64_t>(i);
    if (r > cap) return cap + 1;
  }
  return r;
}

QuantizerResult assemble_from_centers(const WeightedPoints& wp, std::vector<Point> centers,
                                      int n) {
  QuantizerResult out;
  const int k = static_cast<int>(centers.size());
  std::vector<double> cell_mass(k, 0.0);
  double residual = 0.0;
  for (size_t i = 0; i < wp.pts.size(); ++i) {
    int c = nearest_center(wp.pts[i], centers);
    cell_mass[c] += wp.w[i];
    residual += wp.w[i] * euclid(wp.pts[i], centers[c]);
  }
  for (int c = 0; c < k; ++c) {
    if (cell_mass[c] <= 0) continue;  // a center no mass chose carries no slot
    out.centers.push_back(std::move(centers[c]));
    out.cell_masses.push_back(cell_mass[c]);
  }
  out.multiplicities = proportional_counts(out.cell_masses, n);
  out.residual_w1 = residual;
  return out;
}

}  // namespace

AdviceDistribution AdviceDistribution::finite(DiscreteDistribution d) {
  AdviceDistribution a;
  a.kind_ = AdviceKind::FiniteAtoms;
  a.finite_ = normalize_discrete(std::move(d), "finite advice");
  return a;
}

AdviceDistribution AdviceDistribution::gaussian_mixture(std::vector<GaussianComponent> comps) {
  if (comps.empty()) throw ValidationError("gaussian advice: no components");
  const int dim = comps.front().mean.dim();
  if (dim < 1) throw ValidationError("gaussian advice: zero-dimensional mean");
  double total = 0.0;
  for (const auto& c : comps) {
    check_point(c.mean, dim, "gaussian advice");
    if (static_cast<int>(c.stddev.size()) != dim)
      throw ValidationError("gaussian advice: stddev length differs from dimension");
    for (double s : c.stddev)
      if (!std::isfinite(s) || s <= 0)
        throw ValidationError("gaussian advice: stddevs must be positive");
    if (!std::isfinite(c.weight) || c.weight <= 0)
      throw ValidationError("gaussian advice: weights must be positive");
    total += c.weight;
  }
  AdviceDistribution a;
  a.kind_ = AdviceKind::GaussianMixture;
  a.comps_ = std::move(comps);
  for (auto& c : a.comps_) c.weight /= total;
  return a;
}

AdviceDistribution AdviceDistribution::uniform_box(Point low, Point high) {
  const int dim = low.dim();
  if (dim < 1) throw ValidationError("box advice: zero-dimensional bounds");
  check_point(low, dim, "box advice");
  check_point(high, dim, "box advice");
  for (int j = 0; j < dim; ++j)
    if (low.v[j] > high.v[j]) throw ValidationError("box advice: low exceeds high");
  AdviceDistribution a;
  a.kind_ = AdviceKind::UniformBox;
  a.low_ = std::move(low);
  a.high_ = std::move(high);
  return a;
}

int AdviceDistribution::dim() const {
  switch (kind_) {
    case AdviceKind::FiniteAtoms:
      return finite_.dim();
    case AdviceKind::GaussianMixture:
      return comps_.front().mean.dim();
    case AdviceKind::UniformBox:
      return low_.dim();
  }
  return 0;
}

std::vector<Point> sample(const AdviceDistribution& advice, int k, uint64_t seed) {
  if (k < 1) throw ValidationError("sample: need at least one draw");
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(k);
  switch (advice.kind()) {
    case AdviceKind::FiniteAtoms: {
      const auto& d = advice.atoms();
      for (int t = 0; t < k; ++t) {
        double u = rng.uniform01();
        double cum = 0.0;
        size_t pick = d.atoms.size() - 1;
        for (size_t i = 0; i < d.atoms.size(); ++i) {
          cum += d.masses[i];
          if (u < cum) {
            pick = i;
            break;
          }
        }
        out.push_back(d.atoms[pick]);
      }
      break;
    }
    case AdviceKind::GaussianMixture: {
      const auto& comps = advice.components();
      const int dim = advice.dim();
      for (int t = 0; t < k; ++t) {
        double u = rng.uniform01();
        double cum = 0.0;
        size_t pick = comps.size() - 1;
        for (size_t i = 0; i < comps.size(); ++i) {
          cum += comps[i].weight;
          if (u < cum) {
            pick = i;
            break;
          }
        }
        Point p{std::vector<double>(dim)};
        for (int j = 0; j < dim; ++j)
          p.v[j] = comps[pick].mean.v[j] + comps[pick].stddev[j] * rng.normal();
        out.push_back(std::move(p));
      }
      break;
    }
    case AdviceKind::UniformBox: {
      const int dim = advice.dim();
      for (int t = 0; t < k; ++t) {
        Point p{std::vector<double>(dim)};
        for (int j = 0; j < dim; ++j) p.v[j] = rng.uniform(advice.low().v[j], advice.high().v[j]);
        out.push_back(std::move(p));
      }
      break;
    }
  }
  return out;
}

DiscreteDistribution empirical(const std::vector<Point>& points) {
  if (points.empty()) throw ValidationError("empirical: no points");
  DiscreteDistribution d;
  d.atoms = points;
  d.masses.assign(points.size(), 1.0);
  return normalize_discrete(std::move(d), "empirical");
}

double wasserstein1(const DiscreteDistribution& mu, const DiscreteDistribution& nu,
                    const MetricSpace& space) {
  if (mu.atoms.empty() || nu.atoms.empty()) throw ValidationError("wasserstein1: empty distribution");
  double tm = std::accumulate(mu.masses.begin(), mu.masses.end(), 0.0);
  double tn = std::accumulate(nu.masses.begin(), nu.masses.end(), 0.0);
  if (tm <= 0 || tn <= 0) throw ValidationError("wasserstein1: nonpositive total mass");
  std::vector<double> a(mu.masses), b(nu.masses);
  for (double& x : a) x /= tm;
  for (double& x : b) x /= tn;
  Matrix cost(mu.atoms.size(), std::vector<double>(nu.atoms.size()));
  for (size_t i = 0; i < mu.atoms.size(); ++i)
    for (size_t j = 0; j < nu.atoms.size(); ++j) cost[i][j] = space.distance(mu.atoms[i], nu.atoms[j]);
  return solve_transport(a, b, cost).total_cost;
}

double advice_error(const AdviceDistribution& advice, const std::vector<Point>& requests,
                    const MetricSpace& space, int resolution, uint64_t seed) {
  if (requests.empty()) throw ValidationError("advice error: no requests");
  DiscreteDistribution r = empirical(requests);
  if (advice.is_finite()) return wasserstein1(advice.atoms(), r, space);
  if (resolution < static_cast<int>(requests.size()))
    throw ValidationError("advice error: proxy resolution below the request count");
  DiscreteDistribution proxy = empirical(sample(advice, resolution, seed));
  return wasserstein1(proxy, r, space);
}

std::vector<int> proportional_counts(const std::vector<double>& masses, int k) {
  if (masses.empty()) throw ValidationError("proportional counts: no masses");
  if (k < 0) throw ValidationError("proportional counts: negative target");
  double total = 0.0;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0)
      throw ValidationError("proportional counts: masses must be finite and nonnegative");
    total += m;
  }
  if (total <= 0) throw ValidationError("proportional counts: zero total mass");
  const int m = static_cast<int>(masses.size());
  std::vector<int> counts(m, 0);
  std::vector<std::pair<double, int>> rem(m);
  long long assigned = 0;
  for (int i = 0; i < m; ++i) {
    double q = masses[i] * static_cast<double>(k) / total;
    double f = std::floor(q);
    counts[i] = static_cast<int>(f);
    assigned += counts[i];
    rem[i] = {q - f, i};
  }
  long long deficit = k - assigned;
  if (deficit < 0 || deficit > m) throw std::logic_error("proportional counts: rounding drift");
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long long t = 0; t < deficit; ++t) counts[rem[t].second] += 1;
  return counts;
}

double w1_line_exact(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
  if (mu.dim() != 1 || nu.dim() != 1) throw ValidationError("line oracle: atoms must be 1-D");
  double tm = std::accumulate(mu.masses.begin(), mu.masses.end(), 0.0);
  double tn = std::accumulate(nu.masses.begin(), nu.masses.end(), 0.0);
  if (tm <= 0 || tn <= 0) throw ValidationError("line oracle: nonpositive total mass");
  std::vector<std::pair<double, double>> events;
  events.reserve(mu.atoms.size() + nu.atoms.size());
  for (size_t i = 0; i < mu.atoms.size(); ++i) events.emplace_back(mu.atoms[i].v[0], mu.masses[i] / tm);
  for (size_t i = 0; i < nu.atoms.size(); ++i) events.emplace_back(nu.atoms[i].v[0], -nu.masses[i] / tn);
  std::sort(events.begin(), events.end());
  double area = 0.0, f = 0.0, last = events.front().first;
  for (const auto& [x, df] : events) {
    area += std::fabs(f) * (x - last);
    f += df;
    last = x;
  }
  return area;
}

QuantizerResult quantize(const AdviceDistribution& advice, int n, const QuantizerParams& params,
                         uint64_t seed) {
  if (n < 1) throw ValidationError("quantize: need at least one slot");

  if (advice.is_finite()) {
    const DiscreteDistribution& d = advice.atoms();
    const int a = static_cast<int>(d.atoms.size());
    if (a <= n) {
      QuantizerResult out;
      out.centers = d.atoms;
      out.cell_masses = d.masses;
      out.multiplicities = proportional_counts(d.masses, n);
      out.residual_w1 = 0.0;
      return out;
    }
    WeightedPoints wp{d.atoms, d.masses};
    if (binomial_capped(a, n, 100000) <= 100000) {
      // Exhaustive n-subset search over the atom set.
      Matrix dist(a, std::vector<double>(a));
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) dist[i][j] = euclid(d.atoms[i], d.atoms[j]);
      std::vector<int> pick(n);
      std::iota(pick.begin(), pick.end(), 0);
      std::vector<int> best_pick;
      double best_obj = std::numeric_limits<double>::infinity();
      for (;;) {
        double obj = 0.0;
        for (int i = 0; i < a; ++i) {
          double md = dist[i][pick[0]];
          for (int t = 1; t < n; ++t) md = std::min(md, dist[i][pick[t]]);
          obj += d.masses[i] * md;
        }
        if (obj < best_obj) {
          best_obj = obj;
          best_pick = pick;
        }
        int t = n - 1;
        while (t >= 0 && pick[t] == a - n + t) --t;
        if (t < 0) break;
        ++pick[t];
        for (int u = t + 1; u < n; ++u) pick[u] = pick[u - 1] + 1;
      }
      std::vector<Point> centers;
      centers.reserve(n);
      for (int idx : best_pick) centers.push_back(d.atoms[idx]);
      return assemble_from_centers(wp, std::move(centers), n);
    }
    auto [centers, obj] = kmedian(wp, n, params, seed);
    (void)obj;
    return assemble_from_centers(wp, std::move(centers), n);
  }

  const int proxy_n = std::max(params.proxy_samples, n);
  std::vector<Point> proxy = sample(advice, proxy_n, derive_seed(seed, 7));
  WeightedPoints wp;
  wp.pts = std::move(proxy);
  wp.w.assign(wp.pts.size(), 1.0 / static_cast<double>(wp.pts.size()));
  auto [centers, obj] = kmedian(wp, n, params, seed);
  (void)obj;
  return assemble_from_centers(wp, std::move(centers), n);
}

}  // namespace omm
