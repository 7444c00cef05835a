#include "alp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alp::oracle {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::infinity();

Time horizon_of(const Instance& inst, std::span<const AircraftId> sequence) {
  Time lo = std::numeric_limits<Time>::max(), hi = std::numeric_limits<Time>::min();
  for (AircraftId id : sequence) {
    lo = std::min(lo, inst[id].earliest);
    hi = std::max(hi, inst[id].latest);
  }
  return hi - lo;
}

void check_order(const Instance& inst, std::span<const AircraftId> sequence) {
  if (sequence.empty()) throw ArgumentError("landing sequence is empty");
  std::vector<char> seen(static_cast<std::size_t>(inst.n()), 0);
  for (AircraftId id : sequence) {
    if (id < 0 || id >= inst.n() || seen[static_cast<std::size_t>(id)]++)
      throw ArgumentError("sequence is not a list of distinct aircraft ids");
  }
}

/// Cost-to-come tables over each aircraft's window; choice[k][t] is the
/// predecessor time index achieving f_k(t).
struct Tables {
  std::vector<std::vector<Cost>> cost;
  std::vector<std::vector<std::int32_t>> choice;
};

Timing reconstruct(const Instance& inst, std::span<const AircraftId> sequence, const Tables& tab) {
  const std::size_t m = sequence.size();
  const auto& final_row = tab.cost.back();
  std::size_t best = 0;
  for (std::size_t t = 1; t < final_row.size(); ++t)
    if (final_row[t] < final_row[best]) best = t;
  if (final_row.empty() || final_row[best] == kInf) {
    Timing verdict = try_initialize_latest(inst, sequence, SeparationMode::adjacent);
    if (std::holds_alternative<Schedule>(verdict))
      throw InternalError("DP found no reachable time although the order initializes feasibly");
    return verdict;
  }
  Schedule s;
  s.sequence.assign(sequence.begin(), sequence.end());
  s.mode = SeparationMode::adjacent;
  s.times.assign(m, 0);
  std::int32_t idx = static_cast<std::int32_t>(best);
  for (std::size_t k = m; k-- > 0;) {
    s.times[k] = inst[sequence[k]].earliest + idx;
    if (k > 0) idx = tab.choice[k][static_cast<std::size_t>(idx)];
  }
  s.penalty = evaluate_penalty(inst, s);
  s.certified_optimal = true;
  return s;
}

Tables initial_tables(const Instance& inst, std::span<const AircraftId> sequence) {
  Tables tab;
  tab.cost.resize(sequence.size());
  tab.choice.resize(sequence.size());
  const Aircraft& a = inst[sequence[0]];
  auto& row = tab.cost[0];
  row.resize(static_cast<std::size_t>(a.latest - a.earliest + 1));
  for (Time t = a.earliest; t <= a.latest; ++t) row[static_cast<std::size_t>(t - a.earliest)] = inst.landing_cost(sequence[0], t);
  return tab;
}

bool row_empty(const std::vector<Cost>& row) {
  return std::none_of(row.begin(), row.end(), [](Cost c) { return c < kInf; });
}

}  // namespace

Timing dp_optimal_times(const Instance& inst, std::span<const AircraftId> sequence, Time horizon_cap) {
  check_order(inst, sequence);
  const Time horizon = horizon_of(inst, sequence);
  if (horizon > horizon_cap) throw HorizonTooLarge(horizon, horizon_cap);

  Tables tab = initial_tables(inst, sequence);
  std::vector<Cost> prefix_min;
  std::vector<std::int32_t> prefix_arg;
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    const Aircraft& prev = inst[sequence[k - 1]];
    const Aircraft& cur = inst[sequence[k]];
    const auto& prev_row = tab.cost[k - 1];

    prefix_min.resize(prev_row.size());
    prefix_arg.resize(prev_row.size());
    for (std::size_t t = 0; t < prev_row.size(); ++t) {
      if (t == 0 || prev_row[t] < prefix_min[t - 1]) {
        prefix_min[t] = prev_row[t];
        prefix_arg[t] = static_cast<std::int32_t>(t);
      } else {
        prefix_min[t] = prefix_min[t - 1];
        prefix_arg[t] = prefix_arg[t - 1];
      }
    }

    const Time gap = inst.separation(sequence[k - 1], sequence[k]);
    auto& row = tab.cost[k];
    auto& choice = tab.choice[k];
    row.assign(static_cast<std::size_t>(cur.latest - cur.earliest + 1), kInf);
    choice.assign(row.size(), -1);
    for (Time t = cur.earliest; t <= cur.latest; ++t) {
      const Time reach = std::min(t - gap, prev.latest);
      if (reach < prev.earliest) continue;
      const auto idx = static_cast<std::size_t>(reach - prev.earliest);
      if (prefix_min[idx] == kInf) continue;
      const auto slot = static_cast<std::size_t>(t - cur.earliest);
      row[slot] = inst.landing_cost(sequence[k], t) + prefix_min[idx];
      choice[slot] = prefix_arg[idx];
    }
    if (row_empty(row)) {
      tab.cost.resize(k + 1);
      break;
    }
  }
  return reconstruct(inst, sequence, tab);
}

Timing dp_optimal_times_naive(const Instance& inst, std::span<const AircraftId> sequence, Time horizon_cap) {
  check_order(inst, sequence);
  const Time horizon = horizon_of(inst, sequence);
  if (horizon > horizon_cap) throw HorizonTooLarge(horizon, horizon_cap);

  Tables tab = initial_tables(inst, sequence);
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    const Aircraft& prev = inst[sequence[k - 1]];
    const Aircraft& cur = inst[sequence[k]];
    const Time gap = inst.separation(sequence[k - 1], sequence[k]);
    auto& row = tab.cost[k];
    auto& choice = tab.choice[k];
    row.assign(static_cast<std::size_t>(cur.latest - cur.earliest + 1), kInf);
    choice.assign(row.size(), -1);
    for (Time t = cur.earliest; t <= cur.latest; ++t) {
      Cost best = kInf;
      std::int32_t arg = -1;
      for (Time u = prev.earliest; u <= prev.latest && u <= t - gap; ++u) {
        const Cost c = tab.cost[k - 1][static_cast<std::size_t>(u - prev.earliest)];
        if (c < best) {
          best = c;
          arg = static_cast<std::int32_t>(u - prev.earliest);
        }
      }
      if (best == kInf) continue;
      const auto slot = static_cast<std::size_t>(t - cur.earliest);
      row[slot] = inst.landing_cost(sequence[k], t) + best;
      choice[slot] = arg;
    }
    if (row_empty(row)) {
      tab.cost.resize(k + 1);
      break;
    }
  }
  return reconstruct(inst, sequence, tab);
}

int default_brute_force_cap(int runways) { return runways <= 1 ? 7 : 6; }

namespace {

struct SubsetBest {
  Cost penalty = kInf;
  Schedule schedule;
};

SubsetBest best_order_for(const Instance& inst, std::uint32_t mask) {
  Sequence members;
  for (AircraftId id = 0; id < inst.n(); ++id)
    if (mask & (1u << id)) members.push_back(id);
  SubsetBest out;
  // next_permutation walks orders lexicographically; strict improvement keeps
  // the lexicographically smallest optimal order.
  do {
    Timing t = dp_optimal_times(inst, members);
    if (auto* s = std::get_if<Schedule>(&t); s && s->penalty < out.penalty - kCostTolerance * std::max(1.0, s->penalty)) {
      out.penalty = s->penalty;
      out.schedule = std::move(*s);
    }
  } while (std::next_permutation(members.begin(), members.end()));
  return out;
}

}  // namespace

GlobalOptimum brute_force_global(const Instance& inst, int runways, int max_n, Execution exec) {
  if (runways < 1) throw ArgumentError("runway count must be positive");
  if (max_n < 0) max_n = default_brute_force_cap(runways);
  if (inst.n() > max_n)
    throw ArgumentError("brute force limited to " + std::to_string(max_n) + " aircraft (instance has " +
                        std::to_string(inst.n()) + ")");
  if (inst.n() > 20) throw ArgumentError("brute force cannot enumerate more than 20 aircraft");

  const std::uint32_t full = (1u << inst.n()) - 1u;
  std::vector<std::uint32_t> masks;
  if (runways == 1) {
    masks.push_back(full);
  } else {
    for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  }

  std::vector<SubsetBest> best(masks.size());
  const auto count = static_cast<std::ptrdiff_t>(masks.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) best[static_cast<std::size_t>(i)] = best_order_for(inst, masks[static_cast<std::size_t>(i)]);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) best[static_cast<std::size_t>(i)] = best_order_for(inst, masks[static_cast<std::size_t>(i)]);
  }

  GlobalOptimum out;
  if (runways == 1) {
    if (best[0].penalty < kInf) {
      out.feasible = true;
      out.penalty = best[0].penalty;
      out.runways.push_back(best[0].schedule);
    }
    return out;
  }

  // best[m - 1] holds subset m. Split the aircraft into at most R groups;
  // fixing the lowest remaining aircraft in the next group avoids counting
  // permuted runway labels twice.
  const auto subset = [&](std::uint32_t m) -> const SubsetBest& { return best[m - 1]; };
  std::vector<std::vector<Cost>> split(static_cast<std::size_t>(runways) + 1, std::vector<Cost>(full + 1, kInf));
  std::vector<std::vector<std::uint32_t>> pick(split.size(), std::vector<std::uint32_t>(full + 1, 0));
  split[0][0] = 0.0;
  for (std::size_t r = 1; r < split.size(); ++r) {
    split[r][0] = 0.0;
    for (std::uint32_t m = 1; m <= full; ++m) {
      const std::uint32_t low = m & (~m + 1u);
      for (std::uint32_t s = m; s > 0; s = (s - 1) & m) {
        if (!(s & low)) continue;
        const Cost c = subset(s).penalty + split[r - 1][m & ~s];
        if (c < split[r][m] - kCostTolerance * std::max(1.0, c)) {
          split[r][m] = c;
          pick[r][m] = s;
        }
      }
    }
  }
  const Cost total = split[static_cast<std::size_t>(runways)][full];
  if (total == kInf) return out;
  out.feasible = true;
  out.penalty = total;
  std::uint32_t rest = full;
  for (std::size_t r = static_cast<std::size_t>(runways); r > 0 && rest; --r) {
    const std::uint32_t s = pick[r][rest];
    if (s == 0) break;
    out.runways.push_back(subset(s).schedule);
    rest &= ~s;
  }
  return out;
}

}  // namespace alp::oracle
