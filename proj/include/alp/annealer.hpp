#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "alp/oracle.hpp"
#include "alp/runway.hpp"

namespace alp {

using Rng = std::mt19937_64;

struct SAConfig {
  int ensemble_size = 20;
  double cooling_rate = 0.999;
  double constant_accept = 0.07;
  std::optional<int> perturbation_size;  ///< default 3 + floor(sqrt(N / 50)), clamped to N
  int temperature_samples = 100;
  long max_iterations = 20000;
  std::optional<double> max_seconds;
  std::uint64_t seed = 1;
  int elitism_interval = 50;
  std::optional<Cost> known_optimum;  ///< stop as soon as the elite reaches it
  int runways = 1;
  SeparationMode mode = SeparationMode::all_pairs;
  Execution execution = Execution::serial;

  /// Throws ArgumentError on an out-of-range field.
  void validate() const;
};

int default_perturbation_size(int n);

/// One member of the ensemble: an order and its optimized penalty.
struct Candidate {
  Sequence sequence;
  Cost penalty = 0.0;  ///< +infinity for infeasible orders
};

struct TraceRow {
  long iteration = 0;
  double temperature = 0.0;
  Cost best_penalty = 0.0;
  int current_best_member = 0;
};

struct AnnealState {
  std::vector<Candidate> population;
  double temperature = 0.0;
  Candidate elite;
  long iteration = 0;
  std::vector<Rng> rng_streams;  ///< one independent stream per member
};

struct AnnealResult {
  Candidate best;
  MultiRunwaySchedule schedule;  ///< timing of the best order
  double initial_temperature = 0.0;
  long iterations = 0;
  long evaluations = 0;
  std::vector<TraceRow> trace;
};

/// Energy of an order: the optimized total penalty, +infinity if infeasible.
Cost score_sequence(const Instance& inst, std::span<const AircraftId> sequence, int runways, SeparationMode mode);

/// Independent per-member streams derived from one seed.
std::vector<Rng> split_streams(std::uint64_t seed, int count);

/// Twice the standard deviation of the energy over randomly sampled feasible
/// orders. Uniform permutations are tried first; when none of a sample's
/// draws is feasible the sample comes from an infinite-temperature walk over
/// feasible orders starting from the target order.
double estimate_initial_temperature(const Instance& inst, int runways, int samples, std::uint64_t seed,
                                    SeparationMode mode = SeparationMode::all_pairs);

/// Picks k distinct positions and applies a uniformly random non-identity
/// permutation to the aircraft there.
Sequence perturb(std::span<const AircraftId> sequence, int k, Rng& rng);

/// Metropolis test, then the constant-probability second chance.
bool accept(double delta, double temperature, Rng& rng, double constant_accept = 0.07);

/// Scores every proposal. Serial reference and OpenMP kernel; both produce
/// identical results because each proposal is a pure function of its order.
void score_proposals(const Instance& inst, std::vector<Candidate>& proposals, int runways, SeparationMode mode,
                     Execution exec);

AnnealResult anneal(const Instance& inst, const SAConfig& config);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace alp
