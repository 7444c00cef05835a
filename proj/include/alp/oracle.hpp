#pragma once

#include <variant>
#include <vector>

#include "alp/scheduler.hpp"

namespace alp::oracle {

inline constexpr Time kDefaultHorizonCap = 20000;

/// Thrown when the instance's time grid exceeds the configured cap.
class HorizonTooLarge : public AlpError {
 public:
  HorizonTooLarge(Time required, Time cap)
      : AlpError("time horizon " + std::to_string(required) + " exceeds oracle cap " + std::to_string(cap)),
        required_(required) {}
  Time required() const { return required_; }

 private:
  Time required_;
};

/// Exact minimum-cost times for a fixed order under adjacent-only separation,
/// by dynamic programming over the integer time grid with a running prefix
/// minimum. Integer data guarantees an integer optimum exists, so the grid
/// optimum is also the optimum over real-valued times.
Timing dp_optimal_times(const Instance& inst, std::span<const AircraftId> sequence,
                        Time horizon_cap = kDefaultHorizonCap);

/// Same recurrence with an explicit inner loop over predecessor times,
/// O(n * H^2). Self-check for dp_optimal_times on small horizons.
Timing dp_optimal_times_naive(const Instance& inst, std::span<const AircraftId> sequence,
                              Time horizon_cap = 500);

struct GlobalOptimum {
  Cost penalty = 0.0;
  std::vector<Schedule> runways;  ///< witness, one schedule per runway (empty runways omitted)
  bool feasible = false;
};

/// Default size limits for exhaustive search.
int default_brute_force_cap(int runways);

/// Enumerates every landing order (and, for R > 1, every split of the
/// aircraft over runways) and scores each runway by dp_optimal_times. The
/// per-subset minima are independent and may be computed in parallel; the
/// reduction is deterministic (lexicographically smallest witness on ties).
GlobalOptimum brute_force_global(const Instance& inst, int runways, int max_n = -1,
                                 Execution exec = Execution::serial);

}  // namespace alp::oracle
