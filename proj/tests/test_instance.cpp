#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "alp/json_io.hpp"
#include "support.hpp"

using namespace alp;
using namespace testing_support;

TEST_CASE("parse a one-aircraft stream") {
  const Instance inst = parse_airland_text("1 10  0 0 5 9 1.0 2.0  99999");
  REQUIRE(inst.n() == 1);
  CHECK(inst[0].earliest == 0);
  CHECK(inst[0].target == 5);
  CHECK(inst[0].latest == 9);
  CHECK(inst[0].early_penalty == 1.0);
  CHECK(inst[0].late_penalty == 2.0);
  CHECK(inst[0].index == 1);
  CHECK(inst.freeze_time() == 10);
}

TEST_CASE("tokens may wrap lines arbitrarily") {
  const Instance a = parse_airland_text("2 0\n0 0 10 100 1 1 99999 15\n0 0 20 100 1 1 15 99999\n");
  const Instance b = parse_airland_text("2\n0 0\n0\n10 100 1\n1 99999\n15 0 0 20\n100 1 1 15\n99999");
  CHECK(a == b);
  CHECK(a.separation(0, 1) == 15);
}

TEST_CASE("truncated separation rows are a format error at the missing token") {
  const std::string text = "3 0\n 0 0 5 9 1 1  99999 3 3\n 0 1 6 10 1 1  3 99999 3\n 0 2 7 11 1 1  3 3\n";
  try {
    parse_airland_text(text);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    // positions are 1-based: 2 header tokens + 3 * (6 + 3) entries, the last missing
    CHECK(e.position() == 2 + 3 * 9);
  }
}

TEST_CASE("non-numeric and surplus tokens are rejected") {
  CHECK_THROWS_AS(parse_airland_text("1 0 0 0 five 9 1 1 99999"), FormatError);
  CHECK_THROWS_AS(parse_airland_text("1 0 0 0 5 9 1 1 99999 7"), FormatError);
  CHECK_THROWS_AS(parse_airland_text("1.5 0 0 0 5 9 1 1 99999"), FormatError);
  CHECK_THROWS_AS(parse_airland_text(""), FormatError);
}

TEST_CASE("window order violation names the aircraft") {
  const std::string text = "2 0  0 0 5 9 1 1  99999 3  0 8 6 10 1 1  3 99999";
  try {
    parse_airland_text(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("aircraft 2") != std::string::npos);
  }
}

TEST_CASE("validate_instance") {
  CHECK(validate_instance(make_instance({{0}, {5}, {9}, {1}, {1}}, 0)).empty());

  const Instance bad_window = make_instance({{0, 8}, {5, 6}, {9, 10}, {1, 1}, {1, 1}}, 3);
  auto v = validate_instance(bad_window);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::window_order);
  CHECK(v[0].aircraft == 1);

  const Instance neg = make_instance({{0, 0}, {5, 6}, {9, 10}, {1, 1}, {1, 1}}, {{0, -3}, {2, 0}});
  v = validate_instance(neg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::negative_separation);
  CHECK(v[0].aircraft == 0);
  CHECK(v[0].other == 1);

  const Instance neg_rate = make_instance({{0}, {5}, {9}, {-1}, {1}}, 0);
  CHECK(validate_instance(neg_rate).at(0).kind == Violation::Kind::negative_penalty);
  CHECK(validate_instance(Instance{}).at(0).kind == Violation::Kind::empty_instance);
}

TEST_CASE("serialize and parse round trip") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = generate_random_instance(small_params(1 + static_cast<int>(seed % 8), seed));
    CHECK(parse_airland_text(serialize_airland(inst)) == inst);
  }
  // fractional rates survive the text form exactly
  const Instance frac = parse_airland_text("2 0  0 0 5 9 1.37 2.05  99999 3  0 1 6 10 0.1 30.33  3 99999");
  CHECK(parse_airland_text(serialize_airland(frac)) == frac);
}

TEST_CASE("JSON instance encoding round trips and is sniffed by load_instance") {
  const Instance inst = generate_random_instance(small_params(5, 11));
  CHECK(instance_from_json(instance_to_json(inst)) == inst);

  const auto dir = std::filesystem::temp_directory_path() / "alp_instance_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "i.json") << instance_to_json(inst).dump();
    std::ofstream(dir / "i.txt") << serialize_airland(inst);
  }
  CHECK(load_instance((dir / "i.json").string()) == inst);
  CHECK(load_instance((dir / "i.txt").string()) == inst);
  CHECK_THROWS_AS(load_instance((dir / "missing.txt").string()), AlpError);
  CHECK_THROWS_AS(instance_from_json_text("{\"schema\":\"alp/9\",\"n\":1}"), FormatError);
  CHECK_THROWS_AS(instance_from_json_text("{not json"), FormatError);
}

TEST_CASE("generator") {
  SUBCASE("deterministic for a fixed seed") {
    CHECK(generate_random_instance(small_params(5, 42)) == generate_random_instance(small_params(5, 42)));
    CHECK_FALSE(generate_random_instance(small_params(5, 42)) == generate_random_instance(small_params(5, 43)));
  }
  SUBCASE("single aircraft") {
    const Instance one = generate_random_instance(small_params(1, 7));
    CHECK(one.n() == 1);
    CHECK(std::holds_alternative<Schedule>(try_initialize_latest(one, Sequence{0}, SeparationMode::all_pairs)));
  }
  SUBCASE("every output is valid and its target order initializes") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Instance inst = generate_random_instance(small_params(8, seed));
      CHECK(validate_instance(inst).empty());
      CHECK(std::holds_alternative<Schedule>(
          try_initialize_latest(inst, inst.target_order(), SeparationMode::all_pairs)));
    }
  }
  SUBCASE("impossible parameters exhaust the retry cap") {
    GeneratorParams p = small_params(6, 1);
    p.window_span = 0;
    p.sep_range = {50, 60};
    p.target_span = 5;
    p.retry_cap = 20;
    CHECK_THROWS_AS(generate_random_instance(p), AlpError);
  }
}

TEST_CASE("feasibility_check examples") {
  const Instance inst = pair_instance();
  const Sequence seq{0, 1};

  auto ok = feasibility_check(inst, seq, std::vector<Time>{10, 25}, SeparationMode::all_pairs);
  CHECK(ok.feasible_adjacent);
  CHECK(ok.feasible_all_pairs);
  CHECK(ok.violations.empty());

  auto tight = feasibility_check(inst, seq, std::vector<Time>{10, 24}, SeparationMode::adjacent);
  CHECK_FALSE(tight.feasible_adjacent);
  REQUIRE(tight.violations.size() == 1);
  CHECK(tight.violations[0].kind == FeasibilityReport::Breach::Kind::separation);
  CHECK(tight.violations[0].magnitude == 1);

  const Instance short_window = make_instance({{0, 0}, {10, 20}, {100, 20}, {1, 1}, {1, 1}}, 15);
  auto late = feasibility_check(short_window, seq, std::vector<Time>{10, 25}, SeparationMode::adjacent);
  CHECK_FALSE(late.feasible_windows);
  REQUIRE(late.violations.size() == 1);
  CHECK(late.violations[0].kind == FeasibilityReport::Breach::Kind::window);
  CHECK(late.violations[0].first == 1);
  CHECK(late.violations[0].magnitude == 5);

  CHECK_THROWS_AS(feasibility_check(inst, seq, std::vector<Time>{10}, SeparationMode::adjacent), ArgumentError);
}

TEST_CASE("a non-adjacent breach only fails all-pairs") {
  // S(1,3) = 30 while consecutive gaps are 10 + 10
  const Instance inst = make_instance({{0, 0, 0}, {0, 10, 20}, {100, 100, 100}, {1, 1, 1}, {1, 1, 1}},
                                      {{0, 10, 30}, {10, 0, 10}, {10, 10, 0}});
  const Sequence seq{0, 1, 2};
  const std::vector<Time> times{0, 10, 20};
  auto adj = feasibility_check(inst, seq, times, SeparationMode::adjacent);
  CHECK(adj.feasible(SeparationMode::adjacent));
  CHECK_FALSE(adj.feasible(SeparationMode::all_pairs));
  CHECK(adj.violations.empty());
  auto all = feasibility_check(inst, seq, times, SeparationMode::all_pairs);
  REQUIRE(all.violations.size() == 1);
  CHECK_FALSE(all.violations[0].adjacent);
  CHECK(all.violations[0].magnitude == 10);
  CHECK_FALSE(adjacent_implies_all_pairs(inst, seq));
}

TEST_CASE("property: all-pairs feasible implies adjacent feasible") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance inst = generate_random_instance(small_params(2 + trial % 6, static_cast<std::uint64_t>(trial)));
    Sequence seq = random_feasible_sequence(inst, rng, SeparationMode::adjacent, 5);
    std::vector<Time> times;
    Time t = std::uniform_int_distribution<Time>(-20, 40)(rng);
    for (std::size_t k = 0; k < seq.size(); ++k) {
      times.push_back(t);
      t += std::uniform_int_distribution<Time>(0, 25)(rng);
    }
    const auto r = feasibility_check(inst, seq, times, SeparationMode::all_pairs);
    if (r.feasible_all_pairs) CHECK(r.feasible_adjacent);
  }
}
