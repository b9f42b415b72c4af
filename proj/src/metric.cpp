#include "omm/metric.hpp"

#include <cmath>
#include <cstdio>

namespace omm {

namespace {

void check_finite(const Point& p) {
  for (double x : p.v) {
    if (!std::isfinite(x)) throw ValidationError("point has non-finite coordinate");
  }
}

}  // namespace

MetricSpace MetricSpace::euclidean(int dim) {
  if (dim < 1) throw ValidationError("euclidean dimension must be >= 1");
  return MetricSpace(MetricKind::Euclidean, dim);
}

MetricSpace MetricSpace::discrete() { return MetricSpace(MetricKind::Discrete, 1); }

MetricSpace MetricSpace::explicit_table(std::vector<std::vector<double>> table) {
  const size_t n = table.size();
  if (n == 0) throw ValidationError("explicit metric: empty table");
  for (size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw ValidationError("explicit metric: table is not square");
    for (size_t j = 0; j < n; ++j) {
      double d = table[i][j];
      if (!std::isfinite(d) || d < 0) throw ValidationError("explicit metric: entries must be finite and nonnegative");
    }
    if (table[i][i] != 0.0) throw ValidationError("explicit metric: nonzero diagonal");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::fabs(table[i][j] - table[j][i]) > kTol)
        throw ValidationError("explicit metric: asymmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (table[i][j] > table[i][k] + table[k][j] + kTol)
          throw ValidationError("explicit metric: triangle inequality fails for triple (" +
                                std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
  MetricSpace m(MetricKind::ExplicitTable, 1);
  m.table_ = std::move(table);
  return m;
}

int MetricSpace::label_of(const Point& p) const {
  if (p.dim() != 1) throw ValidationError("labeled metric expects single-coordinate points");
  double x = p.v[0];
  if (!std::isfinite(x) || x != std::floor(x))
    throw ValidationError("labeled metric expects integer labels");
  return static_cast<int>(x);
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  check_finite(a);
  check_finite(b);
  switch (kind_) {
    case MetricKind::Euclidean: {
      if (a.dim() != dim_ || b.dim() != dim_)
        throw ValidationError("dimension mismatch: expected " + std::to_string(dim_));
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double d = a.v[i] - b.v[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::Discrete:
      if (a.dim() != 1 || b.dim() != 1)
        throw ValidationError("discrete metric expects single-coordinate labels");
      return a == b ? 0.0 : 1.0;
    case MetricKind::ExplicitTable: {
      int i = label_of(a), j = label_of(b);
      int n = table_size();
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw ValidationError("label out of range for explicit metric");
      return table_[i][j];
    }
  }
  throw ValidationError("unknown metric kind");
}

}  // namespace omm
