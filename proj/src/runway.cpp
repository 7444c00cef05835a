#include "alp/runway.hpp"

#include <algorithm>
#include <limits>

namespace alp {

namespace {

/// Earliest time the runway's current occupants allow for `next`.
Time runway_bound(const Instance& inst, const Sequence& occupants, const std::vector<Time>& times, AircraftId next,
                  SeparationMode mode) {
  Time bound = std::numeric_limits<Time>::min() / 4;
  if (occupants.empty()) return bound;
  if (mode == SeparationMode::adjacent) {
    const AircraftId last = occupants.back();
    return times[static_cast<std::size_t>(last)] + inst.separation(last, next);
  }
  for (AircraftId prev : occupants) bound = std::max(bound, times[static_cast<std::size_t>(prev)] + inst.separation(prev, next));
  return bound;
}

}  // namespace

Assignment try_assign_runways(const Instance& inst, std::span<const AircraftId> sequence, int runways,
                              SeparationMode mode) {
  if (runways < 1) throw ArgumentError("runway count must be positive");
  if (!is_permutation_of_all(inst, sequence)) throw ArgumentError("sequence must be a permutation of all aircraft");
  if (runways >= inst.n())
    throw ArgumentError("runway count " + std::to_string(runways) + " must be below the aircraft count " +
                        std::to_string(inst.n()));
  if (inst.cross_separation() != 0) throw ArgumentError("nonzero cross-runway separation is not supported");

  RunwayPlan plan;
  plan.runways = runways;
  plan.per_runway_sequence.assign(static_cast<std::size_t>(runways), {});
  plan.runway_of.assign(static_cast<std::size_t>(inst.n()), -1);
  plan.provisional_times.assign(static_cast<std::size_t>(inst.n()), 0);

  auto place = [&](AircraftId id, int r, Time t) {
    plan.per_runway_sequence[static_cast<std::size_t>(r)].push_back(id);
    plan.runway_of[static_cast<std::size_t>(id)] = r;
    plan.provisional_times[static_cast<std::size_t>(id)] = t;
  };

  const auto r_count = static_cast<std::size_t>(runways);
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const AircraftId id = sequence[k];
    const Aircraft& a = inst[id];
    if (k < r_count) {
      // Opening landings land at target; the global order still holds
      // because a later opener never lands before an earlier one.
      const Time floor = k == 0 ? a.target : plan.provisional_times[static_cast<std::size_t>(sequence[k - 1])];
      const Time t = std::max(a.target, floor);
      if (t > a.latest) return InfeasibleAssignmentError(id, t, a.latest);
      place(id, static_cast<int>(k), t);
      continue;
    }
    const AircraftId prev = sequence[k - 1];
    const Time order_floor = plan.provisional_times[static_cast<std::size_t>(prev)];
    std::vector<Time> earliest(r_count);
    for (std::size_t r = 0; r < r_count; ++r)
      earliest[r] = std::max(order_floor, runway_bound(inst, plan.per_runway_sequence[r], plan.provisional_times, id, mode));

    const int prev_runway = plan.runway_of[static_cast<std::size_t>(prev)];
    if (earliest[static_cast<std::size_t>(prev_runway)] <= a.target) {
      place(id, prev_runway, a.target);
      continue;
    }
    int chosen = -1;
    for (std::size_t r = 0; r < r_count && chosen < 0; ++r)
      if (earliest[r] <= a.target) chosen = static_cast<int>(r);
    if (chosen >= 0) {
      place(id, chosen, a.target);
      continue;
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < r_count; ++r)
      if (earliest[r] < earliest[best]) best = r;
    if (earliest[best] > a.latest) return InfeasibleAssignmentError(id, earliest[best], a.latest);
    place(id, static_cast<int>(best), earliest[best]);
  }
  return plan;
}

RunwayPlan assign_runways(const Instance& inst, std::span<const AircraftId> sequence, int runways, SeparationMode mode) {
  Assignment r = try_assign_runways(inst, sequence, runways, mode);
  if (auto* err = std::get_if<InfeasibleAssignmentError>(&r)) throw *err;
  return std::get<RunwayPlan>(std::move(r));
}

std::optional<MultiRunwaySchedule> try_optimize_multi(const Instance& inst, std::span<const AircraftId> sequence,
                                                      int runways, SeparationMode mode) {
  MultiRunwaySchedule out;
  if (runways == 1) {
    if (!is_permutation_of_all(inst, sequence)) throw ArgumentError("sequence must be a permutation of all aircraft");
    Timing t = try_optimize_sequence(inst, sequence, mode);
    if (std::holds_alternative<Infeasible>(t)) return std::nullopt;
    out.runways.push_back(std::get<Schedule>(std::move(t)));
    out.total_penalty = out.runways.front().penalty;
    out.provisional_penalty = out.total_penalty;
    out.certified_optimal = out.runways.front().certified_optimal;
    return out;
  }

  Assignment a = try_assign_runways(inst, sequence, runways, mode);
  if (std::holds_alternative<InfeasibleAssignmentError>(a)) return std::nullopt;
  const RunwayPlan& plan = std::get<RunwayPlan>(a);

  out.certified_optimal = true;
  for (const Sequence& order : plan.per_runway_sequence) {
    std::vector<Time> provisional;
    provisional.reserve(order.size());
    for (AircraftId id : order) provisional.push_back(plan.provisional_times[static_cast<std::size_t>(id)]);
    const Cost provisional_cost = evaluate_penalty(inst, order, provisional);
    out.provisional_penalty += provisional_cost;

    Timing t = try_optimize_sequence(inst, order, mode);
    if (std::holds_alternative<Infeasible>(t))
      throw InternalError("runway order infeasible although its provisional times are feasible");
    Schedule s = std::get<Schedule>(std::move(t));
    if (provisional_cost < s.penalty) {
      // all-pairs optimizer is heuristic; the provisional times are feasible
      s.times = std::move(provisional);
      s.penalty = provisional_cost;
    }
    out.certified_optimal = out.certified_optimal && s.certified_optimal;
    out.total_penalty += s.penalty;
    out.runways.push_back(std::move(s));
  }
  return out;
}

MultiRunwaySchedule optimize_multi(const Instance& inst, std::span<const AircraftId> sequence, int runways,
                                   SeparationMode mode) {
  if (runways > 1) {
    // surface the assignment error with its aircraft
    Assignment a = try_assign_runways(inst, sequence, runways, mode);
    if (auto* err = std::get_if<InfeasibleAssignmentError>(&a)) throw *err;
  } else if (runways == 1) {
    Timing t = try_optimize_sequence(inst, sequence, mode);
    if (auto* bad = std::get_if<Infeasible>(&t)) throw InfeasibleSequenceError(*bad);
  } else {
    throw ArgumentError("runway count must be positive");
  }
  auto r = try_optimize_multi(inst, sequence, runways, mode);
  if (!r) throw InternalError("multi-runway optimization failed after a feasible assignment");
  return *std::move(r);
}

}  // namespace alp
