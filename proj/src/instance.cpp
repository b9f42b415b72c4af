#include "omm/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace omm {

namespace {

using nlohmann::json;

Point parse_point(const json& j, const std::string& field) {
  if (j.is_number()) return Point(j.get<double>());
  if (!j.is_array() || j.empty())
    throw ValidationError("instance: " + field + " must be a number or a nonempty array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw ValidationError("instance: " + field + "[" + std::to_string(i) + "] must be a number");
    v.push_back(j[i].get<double>());
  }
  return Point(std::move(v));
}

std::vector<Point> parse_points(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ValidationError("instance: " + field + " must be a nonempty array");
  std::vector<Point> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_point(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

MetricSpace parse_metric(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "discrete") return MetricSpace::discrete();
    throw ValidationError("instance: metric string must be \"discrete\"");
  }
  if (!j.is_object() || j.size() != 1)
    throw ValidationError("instance: metric must be \"discrete\", {\"euclidean\": d} or {\"explicit\": table}");
  if (j.contains("euclidean")) {
    const json& d = j.at("euclidean");
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw ValidationError("instance: metric.euclidean must be a positive integer dimension");
    return MetricSpace::euclidean(d.get<int>());
  }
  if (j.contains("explicit")) {
    const json& t = j.at("explicit");
    if (!t.is_array()) throw ValidationError("instance: metric.explicit must be an array of rows");
    std::vector<std::vector<double>> table;
    for (size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_array())
        throw ValidationError("instance: metric.explicit[" + std::to_string(i) + "] must be an array");
      std::vector<double> row;
      for (size_t k = 0; k < t[i].size(); ++k) {
        if (!t[i][k].is_number())
          throw ValidationError("instance: metric.explicit[" + std::to_string(i) + "][" +
                                std::to_string(k) + "] must be a number");
        row.push_back(t[i][k].get<double>());
      }
      table.push_back(std::move(row));
    }
    return MetricSpace::explicit_table(std::move(table));
  }
  throw ValidationError("instance: unknown metric kind");
}

AdviceDistribution parse_advice(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ValidationError("instance: advice must be a single-key object tagging its variant");
  if (j.contains("finite_atoms")) {
    const json& f = j.at("finite_atoms");
    if (!f.is_object() || !f.contains("atoms") || !f.contains("masses"))
      throw ValidationError("instance: advice.finite_atoms needs atoms and masses");
    DiscreteDistribution d;
    d.atoms = parse_points(f.at("atoms"), "advice.finite_atoms.atoms");
    const json& m = f.at("masses");
    if (!m.is_array() || m.size() != d.atoms.size())
      throw ValidationError("instance: advice.finite_atoms.masses must match atoms in length");
    for (size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_number())
        throw ValidationError("instance: advice.finite_atoms.masses[" + std::to_string(i) +
                              "] must be a number");
      d.masses.push_back(m[i].get<double>());
    }
    return AdviceDistribution::finite(std::move(d));
  }
  if (j.contains("gaussian_mixture")) {
    const json& g = j.at("gaussian_mixture");
    if (!g.is_object() || !g.contains("components") || !g.at("components").is_array())
      throw ValidationError("instance: advice.gaussian_mixture needs a components array");
    std::vector<GaussianComponent> comps;
    const json& cs = g.at("components");
    for (size_t i = 0; i < cs.size(); ++i) {
      const std::string at = "advice.gaussian_mixture.components[" + std::to_string(i) + "]";
      const json& c = cs[i];
      if (!c.is_object() || !c.contains("mean") || !c.contains("stddev") || !c.contains("weight"))
        throw ValidationError("instance: " + at + " needs mean, stddev and weight");
      GaussianComponent comp;
      comp.mean = parse_point(c.at("mean"), at + ".mean");
      const json& sd = c.at("stddev");
      if (sd.is_number()) {
        comp.stddev.assign(comp.mean.dim(), sd.get<double>());
      } else if (sd.is_array()) {
        for (size_t k = 0; k < sd.size(); ++k) {
          if (!sd[k].is_number())
            throw ValidationError("instance: " + at + ".stddev[" + std::to_string(k) +
                                  "] must be a number");
          comp.stddev.push_back(sd[k].get<double>());
        }
      } else {
        throw ValidationError("instance: " + at + ".stddev must be a number or array");
      }
      if (!c.at("weight").is_number())
        throw ValidationError("instance: " + at + ".weight must be a number");
      comp.weight = c.at("weight").get<double>();
      comps.push_back(std::move(comp));
    }
    return AdviceDistribution::gaussian_mixture(std::move(comps));
  }
  if (j.contains("uniform_box")) {
    const json& b = j.at("uniform_box");
    if (!b.is_object() || !b.contains("low") || !b.contains("high"))
      throw ValidationError("instance: advice.uniform_box needs low and high");
    return AdviceDistribution::uniform_box(parse_point(b.at("low"), "advice.uniform_box.low"),
                                           parse_point(b.at("high"), "advice.uniform_box.high"));
  }
  throw ValidationError("instance: unknown advice variant");
}

void check_point_in_space(const MetricSpace& space, const Point& p, const std::string& field) {
  if (space.kind() == MetricKind::Euclidean && p.dim() != space.dim())
    throw ValidationError("instance: " + field + " has dimension " + std::to_string(p.dim()) +
                          ", metric expects " + std::to_string(space.dim()));
  // Discrete/explicit label checks happen inside distance(); probe against itself.
  (void)space.distance(p, p);
}

json point_to_json(const Point& p) {
  json a = json::array();
  for (double x : p.v) a.push_back(x);
  return a;
}

}  // namespace

Instance instance_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "metric" && key != "servers" && key != "requests" && key != "advice")
      throw ValidationError("instance: unknown field \"" + key + "\"");
  }
  if (!j.contains("metric")) throw ValidationError("instance: missing field \"metric\"");
  if (!j.contains("servers")) throw ValidationError("instance: missing field \"servers\"");
  if (!j.contains("requests")) throw ValidationError("instance: missing field \"requests\"");

  Instance inst;
  inst.metric = parse_metric(j.at("metric"));
  inst.servers = parse_points(j.at("servers"), "servers");
  inst.requests = parse_points(j.at("requests"), "requests");
  for (size_t i = 0; i < inst.servers.size(); ++i)
    check_point_in_space(inst.metric, inst.servers[i], "servers[" + std::to_string(i) + "]");
  for (size_t i = 0; i < inst.requests.size(); ++i)
    check_point_in_space(inst.metric, inst.requests[i], "requests[" + std::to_string(i) + "]");
  if (j.contains("advice")) inst.advice = parse_advice(j.at("advice"));
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("instance: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json_text(buf.str());
}

std::string instance_to_json_text(const Instance& inst) {
  json j;
  switch (inst.metric.kind()) {
    case MetricKind::Euclidean:
      j["metric"] = {{"euclidean", inst.metric.dim()}};
      break;
    case MetricKind::Discrete:
      j["metric"] = "discrete";
      break;
    case MetricKind::ExplicitTable: {
      json t = json::array();
      for (int i = 0; i < inst.metric.table_size(); ++i) {
        json row = json::array();
        for (int k = 0; k < inst.metric.table_size(); ++k)
          row.push_back(inst.metric.distance(Point(static_cast<double>(i)),
                                             Point(static_cast<double>(k))));
        t.push_back(std::move(row));
      }
      j["metric"] = {{"explicit", std::move(t)}};
      break;
    }
  }
  json servers = json::array();
  for (const auto& p : inst.servers) servers.push_back(point_to_json(p));
  j["servers"] = std::move(servers);
  json requests = json::array();
  for (const auto& p : inst.requests) requests.push_back(point_to_json(p));
  j["requests"] = std::move(requests);
  if (inst.advice) {
    const AdviceDistribution& a = *inst.advice;
    switch (a.kind()) {
      case AdviceKind::FiniteAtoms: {
        json atoms = json::array(), masses = json::array();
        for (const auto& p : a.atoms().atoms) atoms.push_back(point_to_json(p));
        for (double m : a.atoms().masses) masses.push_back(m);
        j["advice"] = {{"finite_atoms", {{"atoms", std::move(atoms)}, {"masses", std::move(masses)}}}};
        break;
      }
      case AdviceKind::GaussianMixture: {
        json comps = json::array();
        for (const auto& c : a.components()) {
          json sd = json::array();
          for (double s : c.stddev) sd.push_back(s);
          comps.push_back({{"mean", point_to_json(c.mean)},
                           {"stddev", std::move(sd)},
                           {"weight", c.weight}});
        }
        j["advice"] = {{"gaussian_mixture", {{"components", std::move(comps)}}}};
        break;
      }
      case AdviceKind::UniformBox:
        j["advice"] = {{"uniform_box",
                        {{"low", point_to_json(a.low())}, {"high", point_to_json(a.high())}}}};
        break;
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace omm
