#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alp {

/// Landing times and separations are integral time units.
using Time = std::int64_t;

/// Penalty rates and totals. Benchmark files carry fractional rates.
using Cost = double;

/// Aircraft are addressed by 0-based position in Instance::aircraft internally;
/// files, JSON and the CLI use 1-based ordinals.
using AircraftId = int;
using Sequence = std::vector<AircraftId>;

/// Which pairs of aircraft on the same runway must respect the separation matrix.
enum class SeparationMode {
  adjacent,   ///< only consecutive landings (exact regime of the timing optimizer)
  all_pairs,  ///< every ordered pair i before j
};

std::string_view to_string(SeparationMode mode);
SeparationMode parse_separation_mode(std::string_view text);

/// Serial reference path or the OpenMP kernel; both produce identical results.
enum class Execution { serial, parallel };

/// Relative tolerance used when comparing penalty totals.
inline constexpr double kCostTolerance = 1e-9;

bool costs_equal(Cost a, Cost b, double rel_tol = kCostTolerance);

class AlpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (airland stream, JSON document).
class FormatError : public AlpError {
 public:
  FormatError(const std::string& what, std::size_t token_position)
      : AlpError(what), position_(token_position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that breaks a domain invariant (e.g. E > T).
class ValidationError : public AlpError {
 public:
  using AlpError::AlpError;
};

/// Caller broke a precondition (bad bounds, length mismatch, R >= N, ...).
class ArgumentError : public AlpError {
 public:
  using AlpError::AlpError;
};

/// A solver invariant failed; indicates a bug, never swallowed.
class InternalError : public AlpError {
 public:
  using AlpError::AlpError;
};

/// Reason a fixed landing order admits no schedule.
struct Infeasible {
  std::size_t position = 0;  ///< position in the sequence of the first violating aircraft
  AircraftId aircraft = 0;   ///< 0-based aircraft id
  Time latest_allowed = 0;   ///< latest time compatible with successors and window
  Time earliest = 0;         ///< the aircraft's earliest landing time

  std::string message() const;
};

class InfeasibleSequenceError : public AlpError {
 public:
  explicit InfeasibleSequenceError(Infeasible verdict)
      : AlpError(verdict.message()), verdict_(verdict) {}
  const Infeasible& verdict() const { return verdict_; }

 private:
  Infeasible verdict_;
};

/// The search found no feasible landing order to start from.
class NoFeasibleOrderError : public AlpError {
 public:
  using AlpError::AlpError;
};

/// Greedy runway assignment found no runway within the aircraft's window.
class InfeasibleAssignmentError : public AlpError {
 public:
  InfeasibleAssignmentError(AircraftId aircraft, Time best_time, Time latest)
      : AlpError("no runway can land aircraft " + std::to_string(aircraft + 1) + " by its latest time " +
                 std::to_string(latest) + " (best available " + std::to_string(best_time) + ")"),
        aircraft_(aircraft) {}
  AircraftId aircraft() const { return aircraft_; }

 private:
  AircraftId aircraft_;
};

}  // namespace alp
