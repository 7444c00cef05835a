#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alp/runway.hpp"

namespace alp {

inline constexpr const char* kSchemaTag = "alp/1";

// Instance <-> JSON. Aircraft carry 1-based "index"; field names follow the
// Aircraft struct.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);
Instance instance_from_json_text(const std::string& text);

/// A solved (or user-supplied) landing plan as exchanged by the CLI.
struct SolutionDoc {
  std::string instance;  ///< source path, informational
  SeparationMode mode = SeparationMode::all_pairs;
  std::vector<Schedule> runways;  ///< sequences hold 0-based ids in memory, 1-based on disk
  Cost penalty = 0.0;
  bool optimality_flag = false;
  std::optional<std::string> trace;
  FeasibilityReport feasibility;  ///< aggregated over runways
};

nlohmann::json solution_to_json(const SolutionDoc& doc);
/// Throws FormatError on a malformed document or unknown schema.
SolutionDoc solution_from_json(const nlohmann::json& doc);

/// Packs an optimized plan; empty runways are kept so runway numbers stay
/// stable. optimality_flag is the plan's certified_optimal.
SolutionDoc make_solution_doc(const Instance& inst, const MultiRunwaySchedule& plan, SeparationMode mode,
                              std::string instance_path);

/// Aggregated window/separation flags across runways.
FeasibilityReport combined_feasibility(const Instance& inst, const std::vector<Schedule>& runways, SeparationMode mode);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> problems;  ///< human-readable diffs
};

/// Re-checks a plan against the instance: every aircraft exactly once, each
/// runway feasible under `mode`, and the declared penalties within `tolerance`.
VerifyResult verify_solution(const Instance& inst, const SolutionDoc& doc, SeparationMode mode, double tolerance = 1e-6);

}  // namespace alp
