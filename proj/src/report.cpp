#include "omm/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "omm/common.hpp"

namespace omm {

namespace {

// Shortest round-trip decimal form; identical across runs by construction.
std::string fmt(double x) {
  std::array<char, 40> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::logic_error("report: number formatting failed");
  return std::string(buf.data(), p);
}

void emit_csv(const std::vector<RunReport>& reports, std::ostream& out) {
  out << "algo,N,seed,trial,actual_cost,opt_cost,ratio,eta_hat,residual_w1,online_cost,"
         "offline_cost,beta_emp,ms\n";
  for (const auto& r : reports) {
    out << r.algo << ',' << r.n << ',' << r.seed << ',' << r.trial << ',' << fmt(r.actual_cost)
        << ',' << fmt(r.opt_cost) << ',' << fmt(r.ratio) << ',' << fmt(r.eta_hat) << ','
        << fmt(r.residual_w1) << ',' << fmt(r.online_cost) << ',' << fmt(r.offline_cost) << ','
        << fmt(r.beta_emp) << ",0\n";  // ms pinned: timing is reported on stderr only
  }
}

void emit_json(const std::vector<RunReport>& reports, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"algo", r.algo},
                   {"N", r.n},
                   {"seed", r.seed},
                   {"trial", r.trial},
                   {"actual_cost", r.actual_cost},
                   {"opt_cost", r.opt_cost},
                   {"ratio", r.ratio},
                   {"eta_hat", r.eta_hat},
                   {"residual_w1", r.residual_w1},
                   {"online_cost", r.online_cost},
                   {"offline_cost", r.offline_cost},
                   {"beta_emp", r.beta_emp},
                   {"ms", 0}});
  }
  out << arr.dump(2) << "\n";
}

}  // namespace

EmitFormat format_from_string(const std::string& s) {
  if (s == "csv") return EmitFormat::Csv;
  if (s == "json") return EmitFormat::Json;
  throw ValidationError("unknown output format: " + s);
}

void emit(const std::vector<RunReport>& reports, EmitFormat format, std::ostream& out) {
  if (reports.empty()) throw ValidationError("emit: no reports");
  if (format == EmitFormat::Csv)
    emit_csv(reports, out);
  else
    emit_json(reports, out);
  if (!out) throw std::runtime_error("emit: write failed");
}

void emit_to_file(const std::vector<RunReport>& reports, EmitFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open " + path);
  emit(reports, format, out);
}

std::vector<RunReport> load_reports_json(std::istream& in) {
  nlohmann::json arr;
  try {
    in >> arr;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("reports: malformed JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ValidationError("reports: top level must be an array");
  std::vector<RunReport> out;
  out.reserve(arr.size());
  for (const auto& j : arr) {
    RunReport r;
    r.algo = j.at("algo").get<std::string>();
    r.n = j.at("N").get<int>();
    r.seed = j.at("seed").get<uint64_t>();
    r.trial = j.at("trial").get<int>();
    r.actual_cost = j.at("actual_cost").get<double>();
    r.opt_cost = j.at("opt_cost").get<double>();
    r.ratio = j.at("ratio").get<double>();
    r.eta_hat = j.at("eta_hat").get<double>();
    r.residual_w1 = j.at("residual_w1").get<double>();
    r.online_cost = j.at("online_cost").get<double>();
    r.offline_cost = j.at("offline_cost").get<double>();
    r.beta_emp = j.at("beta_emp").get<double>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace omm
