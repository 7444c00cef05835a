#include "alp/annealer.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <ostream>

namespace alp {

namespace {

constexpr Cost kInfeasible = std::numeric_limits<Cost>::infinity();
constexpr int kUniformDrawsPerSample = 20;
constexpr int kWalkStepsPerSample = 5;
constexpr int kWalkProposalCap = 200;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

/// The first feasible of: target order, earliest-time order, latest-time order.
std::optional<Candidate> starting_order(const Instance& inst, int runways, SeparationMode mode) {
  std::vector<Sequence> orders{inst.target_order()};
  for (auto key : {&Aircraft::earliest, &Aircraft::latest}) {
    Sequence s(static_cast<std::size_t>(inst.n()));
    std::iota(s.begin(), s.end(), 0);
    std::stable_sort(s.begin(), s.end(), [&](AircraftId a, AircraftId b) { return inst[a].*key < inst[b].*key; });
    orders.push_back(std::move(s));
  }
  for (Sequence& s : orders) {
    const Cost e = score_sequence(inst, s, runways, mode);
    if (e < kInfeasible) return Candidate{std::move(s), e};
  }
  return std::nullopt;
}

}  // namespace

void SAConfig::validate() const {
  if (ensemble_size < 1) throw ArgumentError("ensemble size must be at least 1");
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) throw ArgumentError("cooling rate must lie in (0, 1)");
  if (!(constant_accept >= 0.0 && constant_accept < 1.0)) throw ArgumentError("constant acceptance must lie in [0, 1)");
  if (perturbation_size && *perturbation_size < 2) throw ArgumentError("perturbation size must be at least 2");
  if (temperature_samples < 2) throw ArgumentError("temperature estimation needs at least 2 samples");
  if (max_iterations < 0) throw ArgumentError("iteration budget must be non-negative");
  if (max_seconds && !(*max_seconds > 0.0)) throw ArgumentError("time budget must be positive");
  if (elitism_interval < 1) throw ArgumentError("elitism interval must be positive");
  if (runways < 1) throw ArgumentError("runway count must be positive");
}

int default_perturbation_size(int n) {
  return 3 + static_cast<int>(std::floor(std::sqrt(static_cast<double>(n) / 50.0)));
}

Cost score_sequence(const Instance& inst, std::span<const AircraftId> sequence, int runways, SeparationMode mode) {
  if (runways == 1) {
    Timing t = try_optimize_sequence(inst, sequence, mode);
    if (auto* s = std::get_if<Schedule>(&t)) return s->penalty;
    return kInfeasible;
  }
  auto multi = try_optimize_multi(inst, sequence, runways, mode);
  return multi ? multi->total_penalty : kInfeasible;
}

std::vector<Rng> split_streams(std::uint64_t seed, int count) {
  std::vector<Rng> streams;
  streams.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m), 0x5A17u};
    streams.emplace_back(seq);
  }
  return streams;
}

Sequence perturb(std::span<const AircraftId> sequence, int k, Rng& rng) {
  const std::size_t n = sequence.size();
  if (k < 2) throw ArgumentError("perturbation needs at least 2 positions");
  if (static_cast<std::size_t>(k) > n)
    throw ArgumentError("perturbation size " + std::to_string(k) + " exceeds sequence length " + std::to_string(n));

  // k distinct positions by a partial Fisher-Yates shuffle
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
    std::swap(positions[i], positions[i + uniform_index(rng, n - i)]);
  positions.resize(static_cast<std::size_t>(k));
  std::sort(positions.begin(), positions.end());

  // uniform non-identity permutation of the chosen slots, by rejection
  std::vector<std::size_t> perm(positions.size());
  do {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
  } while (std::is_sorted(perm.begin(), perm.end()));

  Sequence out(sequence.begin(), sequence.end());
  for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] = sequence[positions[perm[i]]];
  return out;
}

bool accept(double delta, double temperature, Rng& rng, double constant_accept) {
  if (delta <= 0.0) return true;
  const double metropolis = temperature > 0.0 ? std::exp(-delta / temperature) : 0.0;
  if (uniform01(rng) < metropolis) return true;
  return uniform01(rng) < constant_accept;
}

double estimate_initial_temperature(const Instance& inst, int runways, int samples, std::uint64_t seed,
                                    SeparationMode mode) {
  if (samples < 2) throw ArgumentError("temperature estimation needs at least 2 samples");
  Rng rng(seed);
  const int n = inst.n();
  if (n < 2) return 0.0;

  std::optional<Candidate> walk = starting_order(inst, runways, mode);
  const int k = std::min(n, default_perturbation_size(n));

  std::vector<Cost> energies;
  energies.reserve(static_cast<std::size_t>(samples));
  Sequence draw(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    bool found = false;
    for (int attempt = 0; attempt < kUniformDrawsPerSample && !found; ++attempt) {
      std::iota(draw.begin(), draw.end(), 0);
      std::shuffle(draw.begin(), draw.end(), rng);
      const Cost e = score_sequence(inst, draw, runways, mode);
      if (e < kInfeasible) {
        energies.push_back(e);
        found = true;
      }
    }
    if (found) continue;
    if (!walk) throw NoFeasibleOrderError("no feasible landing order found while estimating the initial temperature");
    for (int step = 0; step < kWalkStepsPerSample; ++step) {
      for (int tries = 0; tries < kWalkProposalCap; ++tries) {
        Sequence next = perturb(walk->sequence, k, rng);
        const Cost e = score_sequence(inst, next, runways, mode);
        if (e < kInfeasible) {
          *walk = Candidate{std::move(next), e};
          break;
        }
      }
    }
    energies.push_back(walk->penalty);
  }

  const double count = static_cast<double>(energies.size());
  const double mean = std::accumulate(energies.begin(), energies.end(), 0.0) / count;
  double var = 0.0;
  for (Cost e : energies) var += (e - mean) * (e - mean);
  var /= count;
  return 2.0 * std::sqrt(std::max(0.0, var));
}

void score_proposals(const Instance& inst, std::vector<Candidate>& proposals, int runways, SeparationMode mode,
                     Execution exec) {
  const auto count = static_cast<std::ptrdiff_t>(proposals.size());
  if (exec == Execution::serial) {
    for (auto& c : proposals) c.penalty = score_sequence(inst, c.sequence, runways, mode);
    return;
  }
  std::vector<std::exception_ptr> errors(proposals.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& c = proposals[static_cast<std::size_t>(i)];
    try {
      c.penalty = score_sequence(inst, c.sequence, runways, mode);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

AnnealResult anneal(const Instance& inst, const SAConfig& config) {
  config.validate();
  if (config.runways > 1 && config.runways >= inst.n())
    throw ArgumentError("runway count must be below the aircraft count");
  const auto clock_start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  };

  std::optional<Candidate> start = starting_order(inst, config.runways, config.mode);
  if (!start) throw NoFeasibleOrderError("annealing cannot start: target, earliest and latest orders are all infeasible");

  AnnealResult result;
  AnnealState state;
  const auto members = static_cast<std::size_t>(config.ensemble_size);
  state.population.assign(members, *start);
  state.elite = *start;
  state.rng_streams = split_streams(config.seed, config.ensemble_size);
  result.evaluations = 1;

  const int n = inst.n();
  const int k = std::min(n, config.perturbation_size.value_or(default_perturbation_size(n)));
  const bool searchable = n >= 2;
  state.temperature = searchable ? estimate_initial_temperature(inst, config.runways, config.temperature_samples,
                                                                config.seed ^ 0x9E3779B97F4A7C15ull, config.mode)
                                 : 0.0;
  result.initial_temperature = state.temperature;

  auto reached_target = [&] {
    return config.known_optimum && state.elite.penalty <= *config.known_optimum + kCostTolerance * std::max(1.0, std::abs(*config.known_optimum));
  };
  result.trace.push_back({0, state.temperature, state.elite.penalty, 0});

  std::vector<Candidate> proposals(members);
  while (searchable && state.iteration < config.max_iterations && !reached_target()) {
    if (config.max_seconds && elapsed() >= *config.max_seconds) break;
    ++state.iteration;

    for (std::size_t m = 0; m < members; ++m)
      proposals[m].sequence = perturb(state.population[m].sequence, k, state.rng_streams[m]);
    score_proposals(inst, proposals, config.runways, config.mode, config.execution);
    result.evaluations += static_cast<long>(members);

    std::optional<std::size_t> best_proposal;
    for (std::size_t m = 0; m < members; ++m) {
      const Candidate& p = proposals[m];
      if (p.penalty == kInfeasible) continue;
      if (!best_proposal || p.penalty < proposals[*best_proposal].penalty) best_proposal = m;
      if (accept(p.penalty - state.population[m].penalty, state.temperature, state.rng_streams[m],
                 config.constant_accept))
        state.population[m] = p;
    }
    // lowest member index wins ties within an iteration; the elite only moves on strict improvement
    if (best_proposal && proposals[*best_proposal].penalty < state.elite.penalty) state.elite = proposals[*best_proposal];

    state.temperature *= config.cooling_rate;

    if (state.iteration % config.elitism_interval == 0) {
      std::size_t worst = 0;
      for (std::size_t m = 1; m < members; ++m)
        if (state.population[m].penalty >= state.population[worst].penalty) worst = m;
      state.population[worst] = state.elite;
    }

    std::size_t leader = 0;
    for (std::size_t m = 1; m < members; ++m)
      if (state.population[m].penalty < state.population[leader].penalty) leader = m;
    result.trace.push_back({state.iteration, state.temperature, state.elite.penalty, static_cast<int>(leader)});
  }

  result.best = state.elite;
  result.iterations = state.iteration;
  auto timing = try_optimize_multi(inst, result.best.sequence, config.runways, config.mode);
  if (!timing) throw InternalError("elite order became infeasible");
  result.schedule = *std::move(timing);
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  // shortest text that reads back to the same double
  auto num = [](double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  };
  out << "iteration,temperature,best_penalty,current_best_member\n";
  for (const TraceRow& r : trace)
    out << r.iteration << ',' << num(r.temperature) << ',' << num(r.best_penalty) << ',' << r.current_best_member
        << '\n';
}

}  // namespace alp
