#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "alp/instance.hpp"

namespace alp {

/// Landing order and times for one runway.
struct Schedule {
  Sequence sequence;        ///< aircraft ids in landing order
  std::vector<Time> times;  ///< ST, aligned with sequence
  Cost penalty = 0.0;
  SeparationMode mode = SeparationMode::adjacent;
  /// Adjacent mode: always true. All-pairs mode: true when the penalty equals
  /// the adjacent-regime optimum of the same order, which lower-bounds it.
  bool certified_optimal = false;

  bool operator==(const Schedule&) const = default;
};

/// Per-position quantities the timing optimizer works on. All vectors are
/// indexed by position in the landing order, not by aircraft id.
struct DerivedState {
  std::vector<Time> deviation;    ///< D = ST - T
  std::vector<Time> extra_sep;    ///< ES: slack to the binding predecessor/earliest bound
  std::vector<Time> sigma;        ///< ST - E
  std::vector<Cost> net_penalty;  ///< PL: -g when D <= 0, h when D > 0
  std::vector<Time> sp;           ///< earliest time allowed by predecessors (position 0: E)
  std::vector<Time> ps;           ///< latest time allowed by successors (last position: L)

  std::size_t size() const { return deviation.size(); }
  bool operator==(const DerivedState&) const = default;
};

/// A consecutive run of landings that can be shifted earlier together.
struct GammaSet {
  std::size_t first = 0;  ///< position of the run head (positive slack)
  std::size_t last = 0;   ///< last position in the run (inclusive)
  std::optional<std::size_t> mu;  ///< last member with D <= 0, if any
  Time gamma = 0;         ///< min sigma over the run
  Time pos = 0;           ///< shift applied by apply_reduction
  Cost gain = 0.0;        ///< sum of PL over the run, the penalty drop per unit shift
};

using Timing = std::variant<Schedule, Infeasible>;

DerivedState derive_state(const Instance& inst, const Schedule& schedule);

/// Latest-possible times for a fixed order: the last aircraft at L, every
/// earlier one as late as its window and successors allow.
Timing try_initialize_latest(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode);
Schedule initialize_latest(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode);

/// One left-to-right pass pulling each late aircraft toward its target by
/// min(D, ES).
void improve_individual(const Instance& inst, Schedule& schedule, DerivedState& state);

/// Smallest non-negative element of values[lo..hi], if any.
std::optional<Time> sng(std::span<const Time> values, std::size_t lo, std::size_t hi);

std::vector<GammaSet> find_gamma_sets(const Instance& inst, const Schedule& schedule, const DerivedState& state);

/// Shifts the run earlier by g.pos and refreshes the derived state.
/// Throws InternalError when g no longer satisfies its defining conditions.
void apply_reduction(const Instance& inst, Schedule& schedule, DerivedState& state, const GammaSet& g);

/// Optional instrumentation of one optimizer run.
struct OptimizeTrace {
  DerivedState after_improve;
  Cost initial_penalty = 0.0;
  Cost improved_penalty = 0.0;
  std::vector<Cost> pass_penalties;  ///< penalty after each while-loop pass
  std::vector<Time> applied_pos;     ///< every reduction amount applied
  int passes = 0;
  int pass_cap = 0;
};

/// Optimal times for a fixed single-runway order. In adjacent mode the result
/// is exact. In all-pairs mode the result is feasible and certified optimal
/// when it matches the adjacent-regime optimum.
Timing try_optimize_sequence(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode,
                             OptimizeTrace* trace = nullptr);
Schedule optimize_sequence(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode,
                           OptimizeTrace* trace = nullptr);

Cost evaluate_penalty(const Instance& inst, std::span<const AircraftId> sequence, std::span<const Time> times);
Cost evaluate_penalty(const Instance& inst, const Schedule& schedule);
/// Sum of D * PL.
Cost evaluate_penalty_compact(const DerivedState& state);

/// Sign pattern of (D, ES) after the individual-improvement pass.
enum class SignCase { late_tight, on_target_slack, on_target_tight, early_tight, early_slack, none };
SignCase classify_sign_case(Time deviation, Time extra_sep);

}  // namespace alp
