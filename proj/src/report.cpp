#include "symdet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "symdet/error.hpp"

#ifndef SYMDET_VERSION
#define SYMDET_VERSION "0.0.0"
#endif

namespace symdet {

namespace {

using nlohmann::json;

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd to_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::Vector3d to_vec3(const json& j) {
  const Eigen::VectorXd v = to_vec(j);
  if (v.size() != 3) throw InputError("expected a 3-vector");
  return v;
}

CandidateSource source_from(const std::string& s) {
  if (s == source_name(CandidateSource::ZeroOfOddDM)) return CandidateSource::ZeroOfOddDM;
  if (s == source_name(CandidateSource::CriticalPointOfEvenDM)) return CandidateSource::CriticalPointOfEvenDM;
  throw InputError("unknown candidate source '" + s + "'");
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string tool_version() { return SYMDET_VERSION; }

json config_to_json(const DetectConfig& cfg) {
  return {{"max_moment_order", cfg.max_moment_order},
          {"zero_tol", cfg.zero_tol},
          {"angular_tol", cfg.angular_tol},
          {"max_fold", cfg.max_fold},
          {"split_check", cfg.split_check},
          {"moment_check", cfg.moment_check},
          {"quick_reject", cfg.quick_reject},
          {"detect_rotation", cfg.detect_rotation}};
}

DetectConfig config_from_json(const json& j) {
  try {
    DetectConfig cfg;
    cfg.max_moment_order = j.at("max_moment_order");
    cfg.zero_tol = j.at("zero_tol");
    cfg.angular_tol = j.at("angular_tol");
    cfg.max_fold = j.at("max_fold");
    cfg.split_check = j.at("split_check");
    cfg.moment_check = j.at("moment_check");
    cfg.quick_reject = j.at("quick_reject");
    cfg.detect_rotation = j.at("detect_rotation");
    return cfg;
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

json report_to_json(const SymmetryReport& r) {
  json out;
  out["dimension"] = r.dimension;
  out["shape_kind"] = r.shape_kind;
  out["mass"] = r.mass;
  out["centroid"] = vec(r.centroid);
  json inv = json::array();
  for (const auto& v : r.reflection_invariants) inv.push_back({{"name", v.name}, {"value", v.value}, {"scale", v.scale}});
  out["reflection_invariants"] = inv;
  out["quick_reject"] = r.quick_reject;
  json constant = json::object();
  for (const auto& [k, c] : r.dm_constant) constant[std::to_string(k)] = c;
  out["dm_constant"] = constant;
  out["candidate_dm_orders"] = r.candidate_dm_orders;
  out["candidate_count"] = r.candidate_count;
  json refl = json::array();
  for (const auto& e : r.reflections) {
    json item{{"direction", vec(e.direction)},
              {"residual", e.residual},
              {"split_residual", e.split_residual},
              {"moment_residual", e.moment_residual},
              {"dm_order", e.dm_order},
              {"source", std::string(source_name(e.source))}};
    if (r.dimension == 2) item["angle"] = e.angle;
    refl.push_back(item);
  }
  out[r.dimension == 2 ? "axes" : "planes"] = refl;
  json rot = json::array();
  for (const auto& e : r.rotations) rot.push_back({{"axis", vec(e.axis)}, {"fold", e.fold}});
  out["rotations"] = rot;
  out["even_rotation_hint"] = r.even_rotation_hint;
  out["even_rotation"] = r.even_rotation;
  out["timings_ms"] = r.timings_ms;
  return out;
}

SymmetryReport report_from_json(const json& j) {
  try {
    SymmetryReport r;
    r.dimension = j.at("dimension");
    r.shape_kind = j.at("shape_kind");
    r.mass = j.at("mass");
    r.centroid = to_vec(j.at("centroid"));
    for (const auto& v : j.at("reflection_invariants"))
      r.reflection_invariants.push_back({v.at("name"), v.at("value"), v.at("scale")});
    r.quick_reject = j.at("quick_reject");
    for (const auto& [k, c] : j.at("dm_constant").items()) r.dm_constant[std::stoi(k)] = c.get<bool>();
    r.candidate_dm_orders = j.at("candidate_dm_orders").get<std::vector<int>>();
    r.candidate_count = j.at("candidate_count");
    for (const auto& e : j.at(r.dimension == 2 ? "axes" : "planes")) {
      ReflectionElement el;
      el.direction = to_vec3(e.at("direction"));
      el.angle = r.dimension == 2 ? e.at("angle").get<double>() : 0.0;
      el.residual = e.at("residual");
      el.split_residual = e.at("split_residual");
      el.moment_residual = e.at("moment_residual");
      el.dm_order = e.at("dm_order");
      el.source = source_from(e.at("source"));
      r.reflections.push_back(el);
    }
    for (const auto& e : j.at("rotations")) r.rotations.push_back({to_vec3(e.at("axis")), e.at("fold")});
    r.even_rotation_hint = j.at("even_rotation_hint");
    r.even_rotation = j.at("even_rotation");
    if (j.contains("timings_ms")) r.timings_ms = j["timings_ms"].get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

json report_document(const SymmetryReport& report, const DetectConfig& cfg, const std::string& input) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", {{"name", "symdet"}, {"version", tool_version()}}},
          {"input", input},
          {"config", config_to_json(cfg)},
          {"report", report_to_json(report)}};
}

std::string axes_csv(const SymmetryReport& report) {
  std::vector<ReflectionElement> rows = report.reflections;
  std::string out;
  if (report.dimension == 2) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.angle < b.angle; });
    out = "angle_rad,residual\n";
    for (const auto& e : rows) out += fmt17(e.angle) + ',' + fmt17(e.residual) + '\n';
  } else {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.direction.data(), a.direction.data() + 3, b.direction.data(),
                                          b.direction.data() + 3);
    });
    out = "nx,ny,nz,residual\n";
    for (const auto& e : rows)
      out += fmt17(e.direction(0)) + ',' + fmt17(e.direction(1)) + ',' + fmt17(e.direction(2)) + ',' +
             fmt17(e.residual) + '\n';
  }
  return out;
}

void emit_axes(const SymmetryReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << axes_csv(report);
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace symdet
