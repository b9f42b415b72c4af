#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omm/distributions.hpp"
#include "omm/metric.hpp"

namespace omm {

struct Instance {
  MetricSpace metric = MetricSpace::euclidean(1);
  std::vector<Point> servers;
  std::vector<Point> requests;
  std::optional<AdviceDistribution> advice;

  int n() const { return static_cast<int>(servers.size()); }
};

// Parses and validates the instance JSON schema; throws ValidationError with a
// field-level message on any violation.
Instance load_instance(const std::string& path);
Instance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const Instance& inst);

}  // namespace omm
