#include "alp/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace alp {

using nlohmann::json;

namespace {

template <class T>
T field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw FormatError(std::string("missing field '") + name + "'", 0);
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field '") + name + "': " + e.what(), 0);
  }
}

void check_schema(const json& doc) {
  if (!doc.is_object()) throw FormatError("expected a JSON object", 0);
  if (doc.contains("schema") && doc.at("schema") != kSchemaTag)
    throw FormatError("unsupported schema " + doc.at("schema").dump(), 0);
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json planes = json::array();
  for (const Aircraft& a : inst.aircraft()) {
    planes.push_back({{"index", a.index},
                      {"appearance", a.appearance},
                      {"earliest", a.earliest},
                      {"target", a.target},
                      {"latest", a.latest},
                      {"early_penalty", a.early_penalty},
                      {"late_penalty", a.late_penalty}});
  }
  json sep = json::array();
  for (AircraftId i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (AircraftId j = 0; j < inst.n(); ++j) row.push_back(inst.separation(i, j));
    sep.push_back(std::move(row));
  }
  return {{"schema", kSchemaTag},
          {"n", inst.n()},
          {"freeze_time", inst.freeze_time()},
          {"aircraft", std::move(planes)},
          {"separation", std::move(sep)},
          {"cross_separation", inst.cross_separation()}};
}

Instance instance_from_json(const json& doc) {
  check_schema(doc);
  const auto n = field<int>(doc, "n");
  const auto& planes = doc.contains("aircraft") ? doc.at("aircraft") : json();
  if (n < 1 || !planes.is_array() || static_cast<int>(planes.size()) != n)
    throw FormatError("'aircraft' must list exactly n entries", 0);
  std::vector<Aircraft> aircraft;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const json& p = planes[i];
    Aircraft a;
    a.index = p.contains("index") ? field<int>(p, "index") : static_cast<int>(i) + 1;
    a.appearance = p.contains("appearance") ? field<Time>(p, "appearance") : 0;
    a.earliest = field<Time>(p, "earliest");
    a.target = field<Time>(p, "target");
    a.latest = field<Time>(p, "latest");
    a.early_penalty = field<Cost>(p, "early_penalty");
    a.late_penalty = field<Cost>(p, "late_penalty");
    aircraft.push_back(a);
  }
  const json& rows = doc.contains("separation") ? doc.at("separation") : json();
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw FormatError("'separation' must have n rows", 0);
  std::vector<Time> sep;
  sep.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw FormatError("separation rows must have n entries", 0);
    for (const json& v : row) {
      if (!v.is_number_integer()) throw FormatError("separation entries must be integers", 0);
      sep.push_back(v.get<Time>());
    }
  }
  const Time freeze = doc.contains("freeze_time") ? field<Time>(doc, "freeze_time") : 0;
  const Time cross = doc.contains("cross_separation") ? field<Time>(doc, "cross_separation") : 0;
  Instance inst(std::move(aircraft), std::move(sep), freeze, cross);
  for (const Aircraft& a : inst.aircraft())
    if (a.earliest > a.target || a.target > a.latest)
      throw ValidationError("aircraft " + std::to_string(a.index) + ": window violates E <= T <= L");
  return inst;
}

Instance instance_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return instance_from_json(doc);
}

FeasibilityReport combined_feasibility(const Instance& inst, const std::vector<Schedule>& runways, SeparationMode mode) {
  FeasibilityReport total;
  for (const Schedule& s : runways) {
    FeasibilityReport r = feasibility_check(inst, s.sequence, s.times, mode);
    total.feasible_windows = total.feasible_windows && r.feasible_windows;
    total.feasible_adjacent = total.feasible_adjacent && r.feasible_adjacent;
    total.feasible_all_pairs = total.feasible_all_pairs && r.feasible_all_pairs;
    total.violations.insert(total.violations.end(), r.violations.begin(), r.violations.end());
  }
  return total;
}

SolutionDoc make_solution_doc(const Instance& inst, const MultiRunwaySchedule& plan, SeparationMode mode,
                              std::string instance_path) {
  SolutionDoc doc;
  doc.instance = std::move(instance_path);
  doc.mode = mode;
  doc.runways = plan.runways;
  doc.penalty = plan.total_penalty;
  doc.optimality_flag = plan.certified_optimal;
  doc.feasibility = combined_feasibility(inst, doc.runways, mode);
  return doc;
}

json solution_to_json(const SolutionDoc& doc) {
  json runways = json::array();
  for (std::size_t r = 0; r < doc.runways.size(); ++r) {
    const Schedule& s = doc.runways[r];
    json seq = json::array();
    for (AircraftId id : s.sequence) seq.push_back(id + 1);
    runways.push_back({{"runway", r + 1}, {"sequence", std::move(seq)}, {"times", s.times}, {"penalty", s.penalty}});
  }
  return {{"schema", kSchemaTag},
          {"instance", doc.instance},
          {"mode", std::string(to_string(doc.mode))},
          {"penalty", doc.penalty},
          {"runways", std::move(runways)},
          {"feasibility",
           {{"windows", doc.feasibility.feasible_windows},
            {"adjacent", doc.feasibility.feasible_adjacent},
            {"all_pairs", doc.feasibility.feasible_all_pairs}}},
          {"optimality_flag", doc.optimality_flag},
          {"trace", doc.trace ? json(*doc.trace) : json(nullptr)}};
}

SolutionDoc solution_from_json(const json& doc) {
  check_schema(doc);
  SolutionDoc out;
  out.instance = doc.contains("instance") && doc.at("instance").is_string() ? doc.at("instance").get<std::string>() : "";
  if (doc.contains("mode")) {
    try {
      out.mode = parse_separation_mode(field<std::string>(doc, "mode"));
    } catch (const ArgumentError& e) {
      throw FormatError(e.what(), 0);
    }
  }
  out.penalty = field<Cost>(doc, "penalty");
  out.optimality_flag = doc.contains("optimality_flag") && doc.at("optimality_flag").is_boolean() &&
                        doc.at("optimality_flag").get<bool>();
  if (doc.contains("trace") && doc.at("trace").is_string()) out.trace = doc.at("trace").get<std::string>();
  if (!doc.contains("runways") || !doc.at("runways").is_array()) throw FormatError("missing 'runways' array", 0);
  for (const json& r : doc.at("runways")) {
    Schedule s;
    s.mode = out.mode;
    for (int id : field<std::vector<int>>(r, "sequence")) s.sequence.push_back(id - 1);
    s.times = field<std::vector<Time>>(r, "times");
    s.penalty = r.contains("penalty") ? field<Cost>(r, "penalty") : 0.0;
    out.runways.push_back(std::move(s));
  }
  return out;
}

VerifyResult verify_solution(const Instance& inst, const SolutionDoc& doc, SeparationMode mode, double tolerance) {
  VerifyResult res;
  auto fail = [&res](std::string msg) {
    res.ok = false;
    res.problems.push_back(std::move(msg));
  };
  auto close = [tolerance](Cost a, Cost b) { return std::abs(a - b) <= tolerance * std::max(1.0, std::abs(b)); };

  std::vector<int> seen(static_cast<std::size_t>(inst.n()), 0);
  for (const Schedule& s : doc.runways) {
    if (s.sequence.size() != s.times.size()) {
      fail("runway lists " + std::to_string(s.sequence.size()) + " aircraft but " + std::to_string(s.times.size()) + " times");
      return res;
    }
    for (AircraftId id : s.sequence) {
      if (id < 0 || id >= inst.n()) {
        fail("unknown aircraft " + std::to_string(id + 1));
        return res;
      }
      ++seen[static_cast<std::size_t>(id)];
    }
  }
  for (AircraftId id = 0; id < inst.n(); ++id)
    if (seen[static_cast<std::size_t>(id)] != 1)
      fail("aircraft " + std::to_string(id + 1) + " scheduled " + std::to_string(seen[static_cast<std::size_t>(id)]) + " times");
  if (!res.ok) return res;

  Cost total = 0.0;
  for (std::size_t r = 0; r < doc.runways.size(); ++r) {
    const Schedule& s = doc.runways[r];
    const FeasibilityReport rep = feasibility_check(inst, s.sequence, s.times, mode);
    for (const auto& b : rep.violations) {
      std::ostringstream os;
      os << "runway " << r + 1 << ": ";
      if (b.kind == FeasibilityReport::Breach::Kind::window)
        os << "aircraft " << b.first + 1 << " outside its window by " << b.magnitude;
      else
        os << "aircraft " << b.second + 1 << " lands " << b.magnitude << " too soon after aircraft " << b.first + 1;
      fail(os.str());
    }
    const Cost runway_cost = evaluate_penalty(inst, s);
    if (!close(runway_cost, s.penalty)) {
      std::ostringstream os;
      os.precision(12);
      os << "runway " << r + 1 << ": declared penalty " << s.penalty << " but recomputed " << runway_cost;
      fail(os.str());
    }
    total += runway_cost;
  }
  if (!close(total, doc.penalty)) {
    std::ostringstream os;
    os.precision(12);
    os << "declared total penalty " << doc.penalty << " but recomputed " << total;
    fail(os.str());
  }
  return res;
}

}  // namespace alp
