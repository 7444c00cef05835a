#include "alp/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace alp {

namespace {

constexpr Time kNoBound = std::numeric_limits<Time>::max() / 4;

AircraftId at(const Schedule& s, std::size_t k) { return s.sequence[k]; }

/// Earliest time position k may take given predecessors (not its window).
Time predecessor_bound(const Instance& inst, const Schedule& s, std::size_t k) {
  if (k == 0) return -kNoBound;
  if (s.mode == SeparationMode::adjacent) return s.times[k - 1] + inst.separation(at(s, k - 1), at(s, k));
  Time bound = -kNoBound;
  for (std::size_t j = 0; j < k; ++j) bound = std::max(bound, s.times[j] + inst.separation(at(s, j), at(s, k)));
  return bound;
}

Time successor_bound(const Instance& inst, const Schedule& s, std::size_t k) {
  const std::size_t m = s.sequence.size();
  if (k + 1 >= m) return kNoBound;
  if (s.mode == SeparationMode::adjacent) return s.times[k + 1] - inst.separation(at(s, k), at(s, k + 1));
  Time bound = kNoBound;
  for (std::size_t j = k + 1; j < m; ++j) bound = std::min(bound, s.times[j] - inst.separation(at(s, k), at(s, j)));
  return bound;
}

Cost net_penalty(const Aircraft& a, Time deviation) { return deviation > 0 ? a.late_penalty : -a.early_penalty; }

/// Recompute every derived quantity of position k from the times.
void refresh_position(const Instance& inst, const Schedule& s, DerivedState& st, std::size_t k) {
  const Aircraft& a = inst[at(s, k)];
  const Time t = s.times[k];
  st.deviation[k] = t - a.target;
  st.sigma[k] = t - a.earliest;
  st.net_penalty[k] = net_penalty(a, st.deviation[k]);
  st.sp[k] = k == 0 ? a.earliest : predecessor_bound(inst, s, k);
  st.ps[k] = k + 1 == s.sequence.size() ? a.latest : successor_bound(inst, s, k);
  st.extra_sep[k] = k == 0 ? t - a.earliest : t - std::max(st.sp[k], a.earliest);
}

Cost sum_penalty(const DerivedState& st) {
  Cost total = 0.0;
  for (std::size_t k = 0; k < st.size(); ++k) total += static_cast<Cost>(st.deviation[k]) * st.net_penalty[k];
  return total;
}

void check_sequence(const Instance& inst, std::span<const AircraftId> sequence) {
  if (sequence.empty()) throw ArgumentError("landing sequence is empty");
  std::vector<char> seen(static_cast<std::size_t>(inst.n()), 0);
  for (AircraftId id : sequence) {
    if (id < 0 || id >= inst.n()) throw ArgumentError("aircraft id out of range: " + std::to_string(id + 1));
    if (seen[static_cast<std::size_t>(id)]++) throw ArgumentError("aircraft " + std::to_string(id + 1) + " repeated in sequence");
  }
}

}  // namespace

DerivedState derive_state(const Instance& inst, const Schedule& schedule) {
  const std::size_t m = schedule.sequence.size();
  DerivedState st;
  st.deviation.resize(m);
  st.extra_sep.resize(m);
  st.sigma.resize(m);
  st.net_penalty.resize(m);
  st.sp.resize(m);
  st.ps.resize(m);
  for (std::size_t k = 0; k < m; ++k) refresh_position(inst, schedule, st, k);
  return st;
}

Timing try_initialize_latest(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode) {
  check_sequence(inst, sequence);
  Schedule s;
  s.sequence.assign(sequence.begin(), sequence.end());
  s.mode = mode;
  const std::size_t m = sequence.size();
  s.times.assign(m, 0);
  for (std::size_t k = m; k-- > 0;) {
    const Aircraft& a = inst[sequence[k]];
    const Time t = std::min(successor_bound(inst, s, k), a.latest);
    if (t < a.earliest) return Infeasible{k, sequence[k], t, a.earliest};
    s.times[k] = t;
  }
  s.penalty = evaluate_penalty(inst, s);
  return s;
}

Schedule initialize_latest(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode) {
  Timing r = try_initialize_latest(inst, sequence, mode);
  if (auto* bad = std::get_if<Infeasible>(&r)) throw InfeasibleSequenceError(*bad);
  return std::get<Schedule>(std::move(r));
}

void improve_individual(const Instance& inst, Schedule& schedule, DerivedState& state) {
  const std::size_t m = schedule.sequence.size();
  for (std::size_t k = 0; k < m; ++k) {
    // ES of k depends on the already-updated predecessors.
    refresh_position(inst, schedule, state, k);
    if (state.deviation[k] > 0) {
      const Time cut = std::min(state.deviation[k], state.extra_sep[k]);
      schedule.times[k] -= cut;
      refresh_position(inst, schedule, state, k);
    }
  }
  // successor bounds moved with the pass
  for (std::size_t k = 0; k < m; ++k) refresh_position(inst, schedule, state, k);
  schedule.penalty = evaluate_penalty(inst, schedule);
}

std::optional<Time> sng(std::span<const Time> values, std::size_t lo, std::size_t hi) {
  if (lo > hi || hi >= values.size())
    throw ArgumentError("sng: bounds [" + std::to_string(lo) + ", " + std::to_string(hi) + "] outside vector of size " +
                        std::to_string(values.size()));
  std::optional<Time> best;
  for (std::size_t k = lo; k <= hi; ++k)
    if (values[k] >= 0 && (!best || values[k] < *best)) best = values[k];
  return best;
}

std::vector<GammaSet> find_gamma_sets(const Instance& inst, const Schedule& schedule, const DerivedState& state) {
  const std::size_t m = schedule.sequence.size();
  std::vector<GammaSet> out;
  std::size_t i = 0;
  while (i < m) {
    if (state.extra_sep[i] <= 0) {
      ++i;
      continue;
    }
    // maximal run: head with slack, followers tight against their predecessor bound
    std::size_t j = i;
    while (j + 1 < m && state.extra_sep[j + 1] == 0) ++j;
    const std::size_t next = j + 1;

    // A member sitting at its earliest time pins itself and everything after
    // it in the run; the part in front of it can still move.
    std::size_t end = i;  // one past the last usable member
    for (std::size_t k = i; k <= j; ++k) {
      if (state.sigma[k] <= 0) break;
      if (schedule.mode == SeparationMode::all_pairs && k > i) {
        // followers must also clear every aircraft landing before the head
        Time slack = kNoBound;
        for (std::size_t p = 0; p < i; ++p)
          slack = std::min(slack, schedule.times[k] - schedule.times[p] - inst.separation(at(schedule, p), at(schedule, k)));
        if (slack <= 0) break;
      }
      end = k + 1;
    }
    if (end == i) {
      i = next;
      continue;
    }
    std::size_t last = end - 1;

    // mu-shrinkage: drop the tail from the last non-late member when that tail
    // carries no net tardiness.
    for (;;) {
      std::optional<std::size_t> mu;
      for (std::size_t k = last + 1; k-- > i;)
        if (state.deviation[k] <= 0) {
          mu = k;
          break;
        }
      if (!mu) break;
      Cost tail = 0.0;
      for (std::size_t k = *mu; k <= last; ++k) tail += state.net_penalty[k];
      if (tail > 0.0 || *mu == i) break;
      last = *mu - 1;
    }

    // Keep the prefix with the largest net tardiness (shortest among ties).
    // Shifting a longer prefix would drag members whose earliness outweighs
    // the tardiness removed, and the optimizer never moves times back later.
    Cost running = 0.0, magnitude = 0.0, best_gain = 0.0;
    std::optional<std::size_t> best_last;
    for (std::size_t k = i; k <= last; ++k) {
      running += state.net_penalty[k];
      magnitude += std::abs(state.net_penalty[k]);
      if (running > best_gain) {
        best_gain = running;
        best_last = k;
      }
    }
    if (!best_last || best_gain <= kCostTolerance * std::max(1.0, magnitude)) {
      i = next;
      continue;
    }
    last = *best_last;

    GammaSet g;
    g.first = i;
    g.last = last;
    g.gain = best_gain;
    g.gamma = kNoBound;
    Time smallest_positive_dev = kNoBound;
    for (std::size_t k = i; k <= last; ++k) {
      g.gamma = std::min(g.gamma, state.sigma[k]);
      if (state.deviation[k] <= 0) g.mu = k;
      if (state.deviation[k] > 0) smallest_positive_dev = std::min(smallest_positive_dev, state.deviation[k]);
    }
    // The reduction uses the smallest strictly positive deviation: a member
    // already on target (D = 0) would otherwise force a zero shift.
    g.pos = std::min({smallest_positive_dev, state.extra_sep[i], g.gamma});
    if (schedule.mode == SeparationMode::all_pairs) {
      Time slack = kNoBound;
      for (std::size_t k = i + 1; k <= last; ++k)
        for (std::size_t p = 0; p < i; ++p)
          slack = std::min(slack, schedule.times[k] - schedule.times[p] - inst.separation(at(schedule, p), at(schedule, k)));
      g.pos = std::min(g.pos, slack);
    }
    out.push_back(g);
    i = next;
  }
  return out;
}

void apply_reduction(const Instance& inst, Schedule& schedule, DerivedState& state, const GammaSet& g) {
  const std::size_t m = schedule.sequence.size();
  if (g.last >= m || g.first > g.last) throw InternalError("gamma set outside the schedule");
  if (g.pos <= 0) throw InternalError("gamma set with non-positive reduction " + std::to_string(g.pos));
  if (state.extra_sep[g.first] < g.pos) throw InternalError("stale gamma set: head slack below reduction");
  Cost gain = 0.0;
  for (std::size_t k = g.first; k <= g.last; ++k) {
    if (k > g.first && state.extra_sep[k] != 0) throw InternalError("stale gamma set: follower not tight");
    if (state.sigma[k] < g.pos) throw InternalError("stale gamma set: reduction crosses an earliest time");
    gain += state.net_penalty[k];
  }
  if (gain <= 0.0) throw InternalError("stale gamma set: no net tardiness");

  for (std::size_t k = g.first; k <= g.last; ++k) schedule.times[k] -= g.pos;

  if (schedule.mode == SeparationMode::adjacent) {
    // Only the run, its left neighbour (PS) and right neighbour (SP, ES) change.
    const std::size_t lo = g.first == 0 ? 0 : g.first - 1;
    const std::size_t hi = std::min(m - 1, g.last + 1);
    for (std::size_t k = lo; k <= hi; ++k) refresh_position(inst, schedule, state, k);
  } else {
    state = derive_state(inst, schedule);
  }
  schedule.penalty = evaluate_penalty_compact(state);
}

namespace {

Timing run_timing(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode,
                  OptimizeTrace* trace) {
  Timing init = try_initialize_latest(inst, sequence, mode);
  if (std::holds_alternative<Infeasible>(init)) return init;
  Schedule s = std::get<Schedule>(std::move(init));
  DerivedState st = derive_state(inst, s);
  if (trace) {
    *trace = OptimizeTrace{};
    trace->initial_penalty = s.penalty;
  }

  improve_individual(inst, s, st);
  Cost penalty = evaluate_penalty_compact(st);
  const int cap = 10 * static_cast<int>(s.sequence.size());
  if (trace) {
    trace->after_improve = st;
    trace->improved_penalty = penalty;
    trace->pass_cap = cap;
  }

  int passes = 0;
  if (s.sequence.size() > 1) {
    for (;;) {
      const std::vector<GammaSet> sets = find_gamma_sets(inst, s, st);
      if (sets.empty()) break;
      if (++passes > cap)
        throw InternalError("timing optimizer exceeded its pass cap of " + std::to_string(cap));
      for (const GammaSet& g : sets) {
        apply_reduction(inst, s, st, g);
        if (trace) trace->applied_pos.push_back(g.pos);
      }
      const Cost updated = evaluate_penalty_compact(st);
      if (!(updated < penalty))
        throw InternalError("timing optimizer pass did not decrease the penalty (" + std::to_string(penalty) + " -> " +
                            std::to_string(updated) + ")");
      penalty = updated;
      if (trace) trace->pass_penalties.push_back(penalty);
    }
  }
  if (trace) trace->passes = passes;
  s.penalty = evaluate_penalty(inst, s);
  s.certified_optimal = mode == SeparationMode::adjacent;
  return s;
}

}  // namespace

Timing try_optimize_sequence(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode,
                             OptimizeTrace* trace) {
  if (mode == SeparationMode::adjacent) return run_timing(inst, sequence, mode, trace);

  // The adjacent-regime optimum lower-bounds the all-pairs optimum of the
  // same order; when it is already all-pairs feasible it is the answer.
  Timing relaxed = run_timing(inst, sequence, SeparationMode::adjacent, trace);
  if (std::holds_alternative<Infeasible>(relaxed)) {
    Timing strict = try_initialize_latest(inst, sequence, SeparationMode::all_pairs);
    if (std::holds_alternative<Infeasible>(strict)) return strict;
    throw InternalError("all-pairs order initializes although the adjacent relaxation does not");
  }
  Schedule& bound = std::get<Schedule>(relaxed);
  if (feasibility_check(inst, bound.sequence, bound.times, SeparationMode::all_pairs).feasible_all_pairs) {
    bound.mode = SeparationMode::all_pairs;
    bound.certified_optimal = true;
    return relaxed;
  }
  Timing strict = run_timing(inst, sequence, SeparationMode::all_pairs, trace);
  if (auto* s = std::get_if<Schedule>(&strict)) s->certified_optimal = costs_equal(s->penalty, bound.penalty);
  return strict;
}

Schedule optimize_sequence(const Instance& inst, std::span<const AircraftId> sequence, SeparationMode mode,
                           OptimizeTrace* trace) {
  Timing r = try_optimize_sequence(inst, sequence, mode, trace);
  if (auto* bad = std::get_if<Infeasible>(&r)) throw InfeasibleSequenceError(*bad);
  return std::get<Schedule>(std::move(r));
}

Cost evaluate_penalty(const Instance& inst, std::span<const AircraftId> sequence, std::span<const Time> times) {
  if (sequence.size() != times.size()) throw ArgumentError("sequence and times differ in length");
  Cost total = 0.0;
  for (std::size_t k = 0; k < sequence.size(); ++k) total += inst.landing_cost(sequence[k], times[k]);
  return total;
}

Cost evaluate_penalty(const Instance& inst, const Schedule& schedule) {
  return evaluate_penalty(inst, schedule.sequence, schedule.times);
}

Cost evaluate_penalty_compact(const DerivedState& state) { return sum_penalty(state); }

SignCase classify_sign_case(Time deviation, Time extra_sep) {
  if (deviation > 0 && extra_sep == 0) return SignCase::late_tight;
  if (deviation == 0 && extra_sep > 0) return SignCase::on_target_slack;
  if (deviation == 0 && extra_sep == 0) return SignCase::on_target_tight;
  if (deviation < 0 && extra_sep == 0) return SignCase::early_tight;
  if (deviation < 0 && extra_sep > 0) return SignCase::early_slack;
  return SignCase::none;
}

}  // namespace alp
