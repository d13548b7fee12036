#include "geored/report.hpp"

#include <sstream>

namespace geo {

namespace {

const char* verdict(bool pass) { return pass ? "pass" : "fail"; }

Json stage_json(const StageResult& st) {
  Json j;
  j["verdict"] = st.verdict;
  j["witness"] = st.witness;
  j["notes"] = st.notes;
  return j;
}

}  // namespace

Json to_json(const Point& p) {
  Json j;
  for (const auto& [name, v] : p) j[name] = v.str();
  return j;
}

Json to_json(const StructureReport& rep) {
  Json j;
  j["subject"] = rep.subject;
  j["verdict"] = verdict(rep.pass);
  j["seed"] = rep.seed;
  j["notes"] = rep.notes;
  Json pts = Json::array();
  for (const auto& pc : rep.points) {
    Json e;
    e["point"] = to_json(pc.point);
    e["ranks"] = pc.ranks;
    e["verdict"] = verdict(pc.pass);
    e["witness"] = pc.witness;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j;
}

Json to_json(const ConditionReport& rep) {
  Json j;
  j["verdict"] = verdict(rep.pass);
  j["aborted"] = rep.aborted;
  j["seed"] = rep.seed;
  j["notes"] = rep.notes;
  Json smp = Json::array();
  for (const auto& cs : rep.samples) {
    Json e;
    e["point"] = to_json(cs.point);
    e["ranks"] = cs.ranks;
    e["eq1"] = cs.eq1;
    e["eq2"] = cs.eq2;
    e["verdict"] = verdict(cs.pass);
    smp.push_back(std::move(e));
  }
  j["samples"] = std::move(smp);
  return j;
}

Json to_json(const ProbeReport& rep) {
  Json j;
  j["verdict"] = verdict(rep.pass);
  j["notes"] = rep.notes;
  Json smp = Json::array();
  for (const auto& ps : rep.samples) {
    Json e;
    e["point"] = to_json(ps.point);
    e["dim_level"] = ps.dim_level;
    e["rank_kernel"] = ps.rank_kernel;
    e["rank_fix_orbit"] = ps.rank_fix_orbit;
    e["rank_ray_orbit"] = ps.rank_ray_orbit;
    e["kernel_is_ray_orbit"] = ps.kernel_is_ray_orbit;
    e["fix_orbit_strictly_smaller"] = ps.fix_orbit_strictly_smaller;
    smp.push_back(std::move(e));
  }
  j["samples"] = std::move(smp);
  return j;
}

Json to_json(const RunReport& rep, bool timings) {
  Json j;
  j["scenario"] = rep.scenario;
  j["seed"] = rep.seed;
  j["samples"] = rep.samples;
  Json st;
  st["structure"] = stage_json(rep.structure);
  st["action"] = stage_json(rep.action);
  st["momentum"] = stage_json(rep.momentum);
  st["isotropy"] = stage_json(rep.isotropy);
  st["conditions"] = stage_json(rep.conditions);
  st["reduction"] = stage_json(rep.reduction);
  st["dynamics"] = stage_json(rep.dynamics);
  j["stages"] = std::move(st);
  j["mismatches"] = rep.mismatches;
  j["pass"] = rep.pass;
  if (timings) {
    Json t;
    t["structure_ms"] = rep.structure.ms;
    t["action_ms"] = rep.action.ms;
    t["momentum_ms"] = rep.momentum.ms;
    t["isotropy_ms"] = rep.isotropy.ms;
    t["conditions_ms"] = rep.conditions.ms;
    t["reduction_ms"] = rep.reduction.ms;
    t["dynamics_ms"] = rep.dynamics.ms;
    j["timings"] = std::move(t);
  }
  return j;
}

namespace {

void text_points(std::ostringstream& out, const std::vector<PointCheck>& points) {
  int fails = 0;
  for (const auto& pc : points)
    if (!pc.pass) ++fails;
  out << "  samples: " << points.size() << ", failing: " << fails << "\n";
  for (const auto& pc : points) {
    if (pc.pass) continue;
    out << "    at";
    for (const auto& [name, v] : pc.point) out << " " << name << "=" << v.str();
    out << ": " << pc.witness << "\n";
  }
}

}  // namespace

std::string to_text(const StructureReport& rep) {
  std::ostringstream out;
  out << rep.subject << ": " << verdict(rep.pass) << " (seed " << rep.seed << ")\n";
  for (const auto& n : rep.notes) out << "  " << n << "\n";
  text_points(out, rep.points);
  return out.str();
}

std::string to_text(const ConditionReport& rep) {
  std::ostringstream out;
  out << "reduction conditions: " << verdict(rep.pass && !rep.aborted) << " (seed "
      << rep.seed << ")\n";
  if (rep.aborted) out << "  aborted before sampling finished\n";
  for (const auto& n : rep.notes) out << "  " << n << "\n";
  int fails = 0;
  for (const auto& cs : rep.samples)
    if (!cs.pass) ++fails;
  out << "  samples: " << rep.samples.size() << ", failing: " << fails << "\n";
  return out.str();
}

std::string to_text(const ProbeReport& rep) {
  std::ostringstream out;
  out << "reduction group probe: " << verdict(rep.pass) << "\n";
  for (const auto& n : rep.notes) out << "  " << n << "\n";
  out << "  samples: " << rep.samples.size() << "\n";
  if (!rep.samples.empty()) {
    const auto& ps = rep.samples.front();
    out << "  level dim " << ps.dim_level << ", kernel rank " << ps.rank_kernel
        << ", fix-orbit rank " << ps.rank_fix_orbit << ", ray-orbit rank "
        << ps.rank_ray_orbit << "\n";
  }
  return out.str();
}

std::string to_text(const RunReport& rep) {
  std::ostringstream out;
  out << "scenario " << rep.scenario << ": " << (rep.pass ? "PASS" : "FAIL") << " (seed "
      << rep.seed << ", " << rep.samples << " samples)\n";
  auto stage = [&](const char* name, const StageResult& st) {
    out << "  " << name << ": " << st.verdict;
    if (!st.witness.empty()) out << "  [" << st.witness << "]";
    out << "\n";
    for (const auto& n : st.notes) out << "      " << n << "\n";
  };
  stage("structure", rep.structure);
  stage("action", rep.action);
  stage("momentum", rep.momentum);
  stage("isotropy", rep.isotropy);
  stage("conditions", rep.conditions);
  stage("reduction", rep.reduction);
  stage("dynamics", rep.dynamics);
  for (const auto& m : rep.mismatches) out << "  mismatch: " << m << "\n";
  return out.str();
}

}  // namespace geo
