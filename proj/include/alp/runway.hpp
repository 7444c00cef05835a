#pragma once

#include <variant>
#include <vector>

#include "alp/scheduler.hpp"

namespace alp {

/// Partition of a global landing order over R runways.
struct RunwayPlan {
  int runways = 0;
  std::vector<Sequence> per_runway_sequence;  ///< order preserved from the global sequence
  std::vector<int> runway_of;                 ///< indexed by aircraft id
  std::vector<Time> provisional_times;        ///< indexed by aircraft id

  int count(int runway) const { return static_cast<int>(per_runway_sequence[static_cast<std::size_t>(runway)].size()); }
};

/// Greedy runway assignment for a fixed global order: the first R aircraft
/// open one runway each at their targets; every later aircraft stays with its
/// predecessor's runway when it can land there on target, else takes the
/// lowest runway that offers its target, else the runway with the smallest
/// delay (lowest index on ties). No aircraft lands before its predecessor in
/// the global order.
RunwayPlan assign_runways(const Instance& inst, std::span<const AircraftId> sequence, int runways, SeparationMode mode);

using Assignment = std::variant<RunwayPlan, InfeasibleAssignmentError>;
Assignment try_assign_runways(const Instance& inst, std::span<const AircraftId> sequence, int runways,
                              SeparationMode mode);

struct MultiRunwaySchedule {
  std::vector<Schedule> runways;  ///< one per runway, by runway index
  Cost total_penalty = 0.0;
  Cost provisional_penalty = 0.0;  ///< penalty at the assignment's provisional times
  bool certified_optimal = false;  ///< every runway certified (the assignment itself is heuristic)
};

/// Assigns runways, then optimizes each runway's order independently with
/// zero cross-runway separation. R == 1 reduces to optimize_sequence.
MultiRunwaySchedule optimize_multi(const Instance& inst, std::span<const AircraftId> sequence, int runways,
                                   SeparationMode mode);

/// Non-throwing variant for search loops; std::nullopt when either the
/// assignment or a runway order is infeasible.
std::optional<MultiRunwaySchedule> try_optimize_multi(const Instance& inst, std::span<const AircraftId> sequence,
                                                      int runways, SeparationMode mode);

}  // namespace alp
