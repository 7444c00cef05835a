#include <doctest.h>

#include "alp/oracle.hpp"
#include "support.hpp"

using namespace alp;
using namespace testing_support;

namespace {

const SeparationMode kAdj = SeparationMode::adjacent;
const SeparationMode kAll = SeparationMode::all_pairs;

Schedule improved(const Instance& inst, const Sequence& seq, DerivedState* out = nullptr) {
  Schedule s = initialize_latest(inst, seq, kAdj);
  DerivedState st = derive_state(inst, s);
  improve_individual(inst, s, st);
  if (out) *out = st;
  return s;
}

}  // namespace

TEST_CASE("initialize_latest") {
  SUBCASE("single aircraft lands at its latest time") {
    const Instance one = make_instance({{0}, {5}, {9}, {1}, {2}}, 0);
    CHECK(initialize_latest(one, Sequence{0}, kAdj).times == std::vector<Time>{9});
  }
  SUBCASE("two aircraft back-propagate from the last latest time") {
    CHECK(initialize_latest(pair_instance(), Sequence{0, 1}, kAdj).times == std::vector<Time>{85, 100});
  }
  SUBCASE("infeasible order is reported with the first violating aircraft") {
    const Instance inst = make_instance({{90, 0}, {95, 10}, {100, 50}, {1, 1}, {1, 1}}, 15);
    const Timing t = try_initialize_latest(inst, Sequence{0, 1}, kAdj);
    REQUIRE(std::holds_alternative<Infeasible>(t));
    const Infeasible& v = std::get<Infeasible>(t);
    CHECK(v.aircraft == 0);
    CHECK(v.position == 0);
    CHECK(v.latest_allowed == 35);
    CHECK(v.earliest == 90);
    CHECK_THROWS_AS(initialize_latest(inst, Sequence{0, 1}, kAdj), InfeasibleSequenceError);
  }
  SUBCASE("empty order is an argument error") {
    CHECK_THROWS_AS(try_initialize_latest(pair_instance(), Sequence{}, kAdj), ArgumentError);
  }
}

TEST_CASE("property: after initialization no single landing can move later") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Instance inst = generate_random_instance(small_params(2 + static_cast<int>(seed % 6), seed));
    for (SeparationMode mode : {kAdj, kAll}) {
      const Sequence seq = random_feasible_sequence(inst, rng, mode);
      const Timing t = try_initialize_latest(inst, seq, mode);
      if (!std::holds_alternative<Schedule>(t)) continue;
      const Schedule& s = std::get<Schedule>(t);
      for (std::size_t k = 0; k < seq.size(); ++k) {
        auto times = s.times;
        times[k] += 1;
        CHECK_FALSE(feasibility_check(inst, seq, times, mode).feasible(mode));
      }
    }
  }
}

TEST_CASE("improve_individual") {
  SUBCASE("worked pair reaches the optimum on its own") {
    const Schedule s = improved(pair_instance(), Sequence{0, 1});
    CHECK(s.times == std::vector<Time>{10, 25});
    CHECK(evaluate_penalty(pair_instance(), s) == 5.0);
  }
  SUBCASE("single late aircraft drops to its target") {
    const Instance one = make_instance({{0}, {5}, {9}, {1}, {2}}, 0);
    const Schedule s = improved(one, Sequence{0});
    CHECK(s.times == std::vector<Time>{5});
    CHECK(evaluate_penalty(one, s) == 0.0);
  }
  SUBCASE("nothing late means nothing moves") {
    // targets equal latest times, so initialization leaves every D <= 0
    const Instance inst = make_instance({{0, 0}, {85, 100}, {85, 100}, {1, 1}, {1, 1}}, 15);
    Schedule s = initialize_latest(inst, Sequence{0, 1}, kAdj);
    DerivedState st = derive_state(inst, s);
    const Schedule before = s;
    improve_individual(inst, s, st);
    CHECK(s == before);
  }
}

TEST_CASE("sng") {
  const std::vector<Time> v{-3, 0, 5, 2};
  CHECK(sng(v, 0, 3) == 0);
  CHECK(sng(v, 2, 3) == 2);
  CHECK_FALSE(sng(std::vector<Time>{-3, -1}, 0, 1).has_value());
  CHECK(sng(std::vector<Time>{7}, 0, 0) == 7);
  CHECK_THROWS_AS(sng(v, 2, 1), ArgumentError);
  CHECK_THROWS_AS(sng(v, 0, 4), ArgumentError);
}

TEST_CASE("find_gamma_sets") {
  SUBCASE("worked pair: the only candidate run has zero gain") {
    const Instance inst = pair_instance();
    DerivedState st;
    const Schedule s = improved(inst, Sequence{0, 1}, &st);
    CHECK(find_gamma_sets(inst, s, st).empty());
  }
  SUBCASE("no slack anywhere means no run can start") {
    // everyone pinned at earliest = target, back to back
    const Instance inst = make_instance({{0, 5, 10}, {0, 5, 10}, {0, 5, 10}, {1, 1, 1}, {1, 1, 1}}, 5);
    Schedule s = initialize_latest(inst, Sequence{0, 1, 2}, kAdj);
    const DerivedState st = derive_state(inst, s);
    CHECK(find_gamma_sets(inst, s, st).empty());
  }
  SUBCASE("three aircraft: one run, and the loop lands on the exact optimum") {
    const Instance inst = make_instance({{0, 0, 0}, {0, 10, 12}, {30, 30, 30}, {1, 1, 1}, {5, 5, 5}}, 5);
    const Sequence seq{0, 1, 2};
    DerivedState st;
    const Schedule s = improved(inst, seq, &st);
    const auto sets = find_gamma_sets(inst, s, st);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].pos > 0);
    CHECK(sets[0].gain > 0.0);
    const Cost exact = exhaustive_times(inst, seq, kAdj);
    CHECK(optimize_sequence(inst, seq, kAdj).penalty == exact);
    CHECK(std::get<Schedule>(oracle::dp_optimal_times(inst, seq)).penalty == exact);
  }
}

TEST_CASE("property: every gamma set satisfies its defining conditions") {
  std::mt19937_64 rng(3);
  int seen = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Instance inst = generate_random_instance(small_params(3 + static_cast<int>(seed % 6), seed));
    const Sequence seq = random_feasible_sequence(inst, rng, kAdj);
    if (!std::holds_alternative<Schedule>(try_initialize_latest(inst, seq, kAdj))) continue;
    DerivedState st;
    Schedule s = improved(inst, seq, &st);
    for (int pass = 0; pass < 10 * inst.n(); ++pass) {
      const auto sets = find_gamma_sets(inst, s, st);
      if (sets.empty()) break;
      std::size_t prev_last = 0;
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const GammaSet& g = sets[k];
        ++seen;
        CHECK(g.first <= g.last);
        if (k > 0) CHECK(g.first > prev_last);
        prev_last = g.last;
        CHECK(st.extra_sep[g.first] > 0);
        Cost gain = 0.0;
        Time gamma = st.sigma[g.first];
        for (std::size_t p = g.first; p <= g.last; ++p) {
          if (p > g.first) CHECK(st.extra_sep[p] == 0);
          CHECK(st.sigma[p] > 0);
          gain += st.net_penalty[p];
          gamma = std::min(gamma, st.sigma[p]);
        }
        CHECK(gain > 0.0);
        CHECK(g.gamma == gamma);
        CHECK(g.pos > 0);
        CHECK(g.pos <= st.extra_sep[g.first]);
        CHECK(g.pos <= gamma);
        if (g.mu) {
          Cost tail = 0.0;
          for (std::size_t p = *g.mu; p <= g.last; ++p) tail += st.net_penalty[p];
          CHECK(tail > 0.0);
        }
      }
      const Cost before = s.penalty;
      for (const GammaSet& g : sets) apply_reduction(inst, s, st, g);
      CHECK(s.penalty < before);
      CHECK(st == derive_state(inst, s));
      CHECK(feasibility_check(inst, s.sequence, s.times, kAdj).feasible(kAdj));
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("apply_reduction binding cases and stale sets") {
  // one late aircraft behind an early one with a short window: pos bound by sigma
  const Instance inst = make_instance({{0, 12}, {10, 20}, {30, 40}, {1, 1}, {1, 3}}, 10);
  Schedule s = initialize_latest(inst, Sequence{0, 1}, kAdj);
  DerivedState st = derive_state(inst, s);
  improve_individual(inst, s, st);
  auto sets = find_gamma_sets(inst, s, st);
  while (!sets.empty()) {
    const GammaSet g = sets.front();
    const Time es_first = st.extra_sep[g.first];
    apply_reduction(inst, s, st, g);
    bool sigma_hit = false;
    for (std::size_t p = g.first; p <= g.last; ++p) sigma_hit = sigma_hit || st.sigma[p] == 0;
    if (g.pos == g.gamma) CHECK(sigma_hit);
    if (g.pos == es_first) CHECK(st.extra_sep[g.first] == 0);
    CHECK_THROWS_AS(apply_reduction(inst, s, st, g), InternalError);
    sets = find_gamma_sets(inst, s, st);
  }
  CHECK(s.penalty == exhaustive_times(inst, Sequence{0, 1}, kAdj));
}

TEST_CASE("optimize_sequence examples") {
  const Instance one = make_instance({{0}, {5}, {9}, {1}, {2}}, 0);
  const Schedule single = optimize_sequence(one, Sequence{0}, kAdj);
  CHECK(single.times == std::vector<Time>{5});
  CHECK(single.penalty == 0.0);

  const Schedule pair = optimize_sequence(pair_instance(), Sequence{0, 1}, kAdj);
  CHECK(pair.penalty == 5.0);
  CHECK(pair.times == std::vector<Time>{10, 25});
  CHECK(pair.certified_optimal);
}

TEST_CASE("property: adjacent mode matches exhaustive search on tiny cases") {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorParams p = small_params(2 + static_cast<int>(seed % 3), seed);
    p.window_span = 15;
    p.sep_range = {1, 8};
    const Instance inst = generate_random_instance(p);
    const Sequence seq = random_feasible_sequence(inst, rng, kAdj);
    const Timing t = try_optimize_sequence(inst, seq, kAdj);
    const Cost exact = exhaustive_times(inst, seq, kAdj);
    if (auto* s = std::get_if<Schedule>(&t))
      CHECK(s->penalty == exact);
    else
      CHECK(exact == std::numeric_limits<Cost>::infinity());
  }
}

TEST_CASE("property: all-pairs mode is feasible, bounded below, and honest about certification") {
  std::mt19937_64 rng(29);
  int certified = 0, uncertified = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GeneratorParams p = small_params(3 + static_cast<int>(seed % 2), seed);
    p.window_span = 12;
    p.sep_range = {1, 12};
    const Instance inst = generate_random_instance(p);
    const Sequence seq = random_feasible_sequence(inst, rng, kAll);
    const Timing t = try_optimize_sequence(inst, seq, kAll);
    const Cost exact_all = exhaustive_times(inst, seq, kAll);
    auto* s = std::get_if<Schedule>(&t);
    if (!s) {
      CHECK(exact_all == std::numeric_limits<Cost>::infinity());
      continue;
    }
    CHECK(feasibility_check(inst, s->sequence, s->times, kAll).feasible(kAll));
    CHECK(s->penalty >= exact_all);
    CHECK(s->penalty >= exhaustive_times(inst, seq, kAdj));
    if (s->certified_optimal) {
      CHECK(s->penalty == exact_all);
      ++certified;
    } else {
      ++uncertified;
    }
  }
  CHECK(certified > 0);
  MESSAGE("all-pairs certified " << certified << ", uncertified " << uncertified);
}

TEST_CASE("evaluate_penalty forms") {
  const Instance one = make_instance({{0}, {5}, {20}, {2}, {2}}, 0);
  Schedule on_target{{0}, {5}, 0.0, kAdj, true};
  CHECK(evaluate_penalty(one, on_target) == 0.0);
  Schedule late{{0}, {10}, 0.0, kAdj, false};
  CHECK(evaluate_penalty(one, late) == 10.0);
  CHECK(evaluate_penalty_compact(derive_state(one, late)) == 10.0);
  Schedule early{{0}, {0}, 0.0, kAdj, false};
  const DerivedState st = derive_state(one, early);
  CHECK(st.deviation[0] == -5);
  CHECK(st.net_penalty[0] == -2.0);
  CHECK(evaluate_penalty(one, early) == 10.0);
  CHECK(evaluate_penalty_compact(st) == 10.0);
}

TEST_CASE("sign case classification") {
  CHECK(classify_sign_case(3, 0) == SignCase::late_tight);
  CHECK(classify_sign_case(0, 4) == SignCase::on_target_slack);
  CHECK(classify_sign_case(0, 0) == SignCase::on_target_tight);
  CHECK(classify_sign_case(-2, 0) == SignCase::early_tight);
  CHECK(classify_sign_case(-2, 7) == SignCase::early_slack);
  CHECK(classify_sign_case(3, 1) == SignCase::none);
}
