#pragma once

// Shared helpers for the test suites: compact instance builders and a
// library-independent exhaustive timing search for very small cases.

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "alp/scheduler.hpp"

namespace testing_support {

using namespace alp;

struct Spec {
  std::vector<Time> e, t, l;
  std::vector<Cost> g, h;
};

/// Builds an instance with the given windows/rates and an n x n separation
/// matrix (diagonal ignored).
inline Instance make_instance(const Spec& s, const std::vector<std::vector<Time>>& sep) {
  const std::size_t n = s.t.size();
  std::vector<Aircraft> planes(n);
  for (std::size_t i = 0; i < n; ++i)
    planes[i] = Aircraft{static_cast<int>(i) + 1, s.e[i], s.t[i], s.l[i], s.g[i], s.h[i], 0};
  std::vector<Time> flat(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = i == j ? 0 : sep[i][j];
  return Instance(std::move(planes), std::move(flat));
}

/// Same separation for every ordered pair.
inline Instance make_instance(const Spec& s, Time uniform_sep) {
  const std::size_t n = s.t.size();
  return make_instance(s, std::vector<std::vector<Time>>(n, std::vector<Time>(n, uniform_sep)));
}

/// The two-aircraft instance used throughout: E=0, T=(10,20), L=100, S=15, g=h=1.
inline Instance pair_instance() { return make_instance({{0, 0}, {10, 20}, {100, 100}, {1, 1}, {1, 1}}, 15); }

/// Random order that initializes feasibly; falls back to the target order.
inline Sequence random_feasible_sequence(const Instance& inst, std::mt19937_64& rng, SeparationMode mode,
                                         int attempts = 200) {
  Sequence s(static_cast<std::size_t>(inst.n()));
  std::iota(s.begin(), s.end(), 0);
  for (int a = 0; a < attempts; ++a) {
    std::shuffle(s.begin(), s.end(), rng);
    if (std::holds_alternative<Schedule>(try_initialize_latest(inst, s, mode))) return s;
  }
  return inst.target_order();
}

/// Exhaustive search over every integer time vector for a fixed order.
/// Independent of the library's optimizer and DP; only for tiny cases.
/// Returns +infinity when no feasible vector exists.
inline Cost exhaustive_times(const Instance& inst, const Sequence& seq, SeparationMode mode) {
  const std::size_t n = seq.size();
  std::vector<Time> st(n);
  Cost best = std::numeric_limits<Cost>::infinity();
  std::function<void(std::size_t, Cost)> rec = [&](std::size_t k, Cost acc) {
    if (acc >= best) return;
    if (k == n) {
      best = acc;
      return;
    }
    const Aircraft& a = inst[seq[k]];
    for (Time t = a.earliest; t <= a.latest; ++t) {
      bool ok = true;
      for (std::size_t p = (mode == SeparationMode::adjacent && k > 0) ? k - 1 : 0; p < k && ok; ++p)
        ok = t >= st[p] + inst.separation(seq[p], seq[k]);
      if (!ok) continue;
      st[k] = t;
      const Cost c = a.early_penalty * static_cast<Cost>(std::max<Time>(0, a.target - t)) +
                     a.late_penalty * static_cast<Cost>(std::max<Time>(0, t - a.target));
      rec(k + 1, acc + c);
    }
  };
  rec(0, 0.0);
  return best;
}

inline GeneratorParams small_params(int n, std::uint64_t seed) {
  GeneratorParams p;
  p.n = n;
  p.seed = seed;
  p.window_span = 60;
  p.sep_range = {1, 20};
  p.penalty_range = {0, 10};
  return p;
}

}  // namespace testing_support
