#pragma once

#include <vector>

#include "omm/common.hpp"

namespace omm {

// A location: coordinate vector for euclidean spaces, or a single integer-valued
// label for discrete/table metrics.
struct Point {
  std::vector<double> v;

  Point() = default;
  explicit Point(std::vector<double> coords) : v(std::move(coords)) {}
  explicit Point(double x) : v{x} {}
  Point(double x, double y) : v{x, y} {}
  Point(double x, double y, double z) : v{x, y, z} {}

  int dim() const { return static_cast<int>(v.size()); }
  double operator[](int i) const { return v[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.v == b.v; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// Strict weak order for use as a map key; exact coordinate comparison.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
    for (size_t i = 0; i < a.v.size(); ++i) {
      if (a.v[i] < b.v[i]) return true;
      if (b.v[i] < a.v[i]) return false;
    }
    return false;
  }
};

enum class MetricKind { Euclidean, Discrete, ExplicitTable };

class MetricSpace {
 public:
  static MetricSpace euclidean(int dim);
  static MetricSpace discrete();
  // Validates symmetry, zero diagonal, nonnegativity and the triangle
  // inequality (tolerance 1e-9) before accepting the table.
  static MetricSpace explicit_table(std::vector<std::vector<double>> table);

  double distance(const Point& a, const Point& b) const;

  MetricKind kind() const { return kind_; }
  int dim() const { return dim_; }  // euclidean only; 1 otherwise
  int table_size() const { return static_cast<int>(table_.size()); }

 private:
  MetricSpace(MetricKind k, int d) : kind_(k), dim_(d) {}

  int label_of(const Point& p) const;

  MetricKind kind_;
  int dim_;
  std::vector<std::vector<double>> table_;
};

}  // namespace omm
