#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omm/assignment.hpp"

namespace omm {

// One experiment trial. Serialized fields are deterministic functions of
// (config, seed); wall_ms stays in memory only (timing goes to stderr) so
// emitted files are byte-reproducible.
struct RunReport {
  std::string algo;
  int n = 0;
  uint64_t seed = 0;
  int trial = 0;
  double actual_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  double eta_hat = 0.0;
  double residual_w1 = 0.0;
  double online_cost = 0.0;   // blackbox decomposition term
  double offline_cost = 0.0;  // advice-matching decomposition term
  double beta_emp = 0.0;
  double wall_ms = 0.0;       // not serialized; see emit()

  // Stored matching for recomputation checks; absent for aggregate rows.
  std::optional<IntegralMatching> integral;
  std::optional<FractionalMatching> fractional;
};

enum class EmitFormat { Csv, Json };

EmitFormat format_from_string(const std::string& s);

void emit(const std::vector<RunReport>& reports, EmitFormat format, std::ostream& out);
void emit_to_file(const std::vector<RunReport>& reports, EmitFormat format,
                  const std::string& path);

// Reads back what emit(Json) wrote (matchings are not serialized).
std::vector<RunReport> load_reports_json(std::istream& in);

}  // namespace omm
