#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alp/types.hpp"

namespace alp {

struct Aircraft {
  int index = 0;  ///< 1-based ordinal as it appears in the source file
  Time earliest = 0;
  Time target = 0;
  Time latest = 0;
  Cost early_penalty = 0.0;
  Cost late_penalty = 0.0;
  Time appearance = 0;  ///< parsed and kept as metadata; the static problem ignores it

  bool operator==(const Aircraft&) const = default;
};

/// Immutable problem statement: aircraft windows, penalty rates and the
/// same-runway separation matrix. Cross-runway separation is carried for
/// completeness and is zero in every supported configuration.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Aircraft> aircraft, std::vector<Time> separation, Time freeze_time = 0,
           Time cross_separation = 0);

  int n() const { return static_cast<int>(aircraft_.size()); }
  const Aircraft& operator[](AircraftId i) const { return aircraft_[static_cast<std::size_t>(i)]; }
  const std::vector<Aircraft>& aircraft() const { return aircraft_; }

  /// S(i, j): required gap when i lands before j on the same runway.
  Time separation(AircraftId i, AircraftId j) const {
    return separation_[static_cast<std::size_t>(i) * aircraft_.size() + static_cast<std::size_t>(j)];
  }
  const std::vector<Time>& separation_matrix() const { return separation_; }

  Time cross_separation() const { return cross_separation_; }
  Time freeze_time() const { return freeze_time_; }

  /// Landing cost of aircraft i at time t: g * earliness + h * tardiness.
  Cost landing_cost(AircraftId i, Time t) const;

  /// Aircraft ids ordered by target time (ties by id).
  Sequence target_order() const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<Aircraft> aircraft_;
  std::vector<Time> separation_;  // row-major n x n
  Time freeze_time_ = 0;
  Time cross_separation_ = 0;
};

// ---------------------------------------------------------------------------
// OR-Library airland text format

/// Parse a whitespace-separated airland stream: N, freeze time, then per
/// aircraft `appearance E T L g h` followed by N separation entries.
/// Throws FormatError (with token position) or ValidationError.
Instance parse_airland(std::istream& in);
Instance parse_airland_text(const std::string& text);
Instance load_airland(const std::string& path);

/// Inverse of parse_airland; separation rows are written one per line.
std::string serialize_airland(const Instance& inst);

/// Load either airland text or the JSON instance encoding (sniffed by the
/// first non-blank character).
Instance load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// validation

struct Violation {
  enum class Kind { window_order, negative_penalty, negative_separation, empty_instance, nonzero_cross_separation };
  Kind kind;
  int aircraft = -1;  ///< 0-based, -1 when not aircraft specific
  int other = -1;     ///< second aircraft for pairwise violations
  std::string describe() const;
};

/// Empty iff every Aircraft/Instance invariant holds. Never throws.
std::vector<Violation> validate_instance(const Instance& inst);

// ---------------------------------------------------------------------------
// random instances

struct GeneratorParams {
  int n = 5;
  std::uint64_t seed = 0;
  Time window_span = 60;  ///< E = T - U[0, span], L = T + U[0, span]
  std::pair<Time, Time> sep_range{1, 20};
  std::pair<int, int> penalty_range{1, 10};
  /// Targets drawn in [0, target_span]; 0 picks n * mean separation.
  Time target_span = 0;
  int retry_cap = 1000;
};

/// Wide windows and short separations resembling the larger benchmark files:
/// windows up to 600 units either side of the target, separations 3..15.
GeneratorParams wide_window_params(int n, std::uint64_t seed);

/// Deterministic for a fixed seed. Retries until the target-ordered sequence
/// initializes feasibly under all-pairs separation; throws AlpError once the
/// retry cap is exhausted.
Instance generate_random_instance(const GeneratorParams& params);

// ---------------------------------------------------------------------------
// feasibility

struct FeasibilityReport {
  struct Breach {
    enum class Kind { window, separation };
    Kind kind;
    AircraftId first = -1;   ///< aircraft in breach (window) or the leading aircraft (separation)
    AircraftId second = -1;  ///< trailing aircraft for separation breaches
    Time magnitude = 0;
    bool adjacent = false;   ///< separation breach between consecutive landings
  };

  bool feasible_windows = true;
  bool feasible_adjacent = true;
  bool feasible_all_pairs = true;
  std::vector<Breach> violations;

  bool feasible(SeparationMode mode) const {
    return feasible_windows && (mode == SeparationMode::adjacent ? feasible_adjacent : feasible_all_pairs);
  }
};

/// Checks windows and separations for one runway's landing order. `mode`
/// selects which separation breaches are listed; both flags are always set.
FeasibilityReport feasibility_check(const Instance& inst, std::span<const AircraftId> sequence,
                                    std::span<const Time> times, SeparationMode mode);

/// True when, along this order, the adjacent separations imply all-pairs
/// separation for every time vector (S(a,c) <= sum of consecutive gaps).
bool adjacent_implies_all_pairs(const Instance& inst, std::span<const AircraftId> sequence);

bool is_permutation_of_all(const Instance& inst, std::span<const AircraftId> sequence);

}  // namespace alp
