// alp: command-line front end for the landing scheduler.
//
//   alp solve    --instance F [--runways R] [--seed S] [--budget-iters N] [--budget-seconds X]
//                [--mode adjacent|all-pairs] [--out F] [--trace F] [--parallel]
//   alp sequence --instance F --sequence 1,2,3 [--runways R] [--mode M] [--out F]
//   alp bench    [--suite small|large|all] [--replications K] [--seeds BASE] [--reference F]
//                [--data-dir D] [--solutions D] [--out F] ...
//   alp verify   --instance F --schedule F [--mode M]
//
// Exit codes: 0 success, 1 usage or I/O error, 2 infeasible, 3 verification mismatch.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "alp/bench.hpp"
#include "alp/json_io.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kMismatch = 3 };

#ifndef ALP_DEFAULT_DATA_DIR
#define ALP_DEFAULT_DATA_DIR "data"
#endif

std::string default_data_dir() {
  if (const char* env = std::getenv("ALP_DATA_DIR")) return env;
  return std::string(ALP_DEFAULT_DATA_DIR) + "/orlib";
}

alp::SeparationMode mode_from(const std::string& text) { return alp::parse_separation_mode(text); }

void emit_json(const nlohmann::json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw alp::AlpError("cannot write " + out_path);
  out << doc.dump(2) << '\n';
}

alp::Sequence parse_sequence_arg(const std::string& text, int n) {
  alp::Sequence seq;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(tok, &used);
    } catch (const std::logic_error&) {
      throw alp::ArgumentError("bad sequence entry '" + tok + "'");
    }
    if (used != tok.size()) throw alp::ArgumentError("bad sequence entry '" + tok + "'");
    if (id < 1 || id > n) throw alp::ArgumentError("aircraft " + tok + " out of range 1.." + std::to_string(n));
    seq.push_back(id - 1);
  }
  return seq;
}

struct SolveOpts {
  std::string instance, mode = "all-pairs", out, trace;
  int runways = 1;
  std::uint64_t seed = 1;
  long budget_iters = 20000;
  double budget_seconds = 0.0;
  bool parallel = false;
};

int cmd_solve(const SolveOpts& o) {
  const alp::Instance inst = alp::load_instance(o.instance);
  alp::SAConfig cfg;
  cfg.runways = o.runways;
  cfg.seed = o.seed;
  cfg.max_iterations = o.budget_iters;
  if (o.budget_seconds > 0.0) cfg.max_seconds = o.budget_seconds;
  cfg.mode = mode_from(o.mode);
  cfg.execution = o.parallel ? alp::Execution::parallel : alp::Execution::serial;
  const alp::AnnealResult res = alp::anneal(inst, cfg);

  alp::SolutionDoc doc = alp::make_solution_doc(inst, res.schedule, cfg.mode, o.instance);
  if (!o.trace.empty()) {
    std::ofstream t(o.trace);
    if (!t) throw alp::AlpError("cannot write " + o.trace);
    alp::write_trace_csv(t, res.trace);
    doc.trace = o.trace;
  }
  emit_json(alp::solution_to_json(doc), o.out);
  return kOk;
}

struct SequenceOpts {
  std::string instance, sequence, mode = "all-pairs", out;
  int runways = 1;
};

int cmd_sequence(const SequenceOpts& o) {
  const alp::Instance inst = alp::load_instance(o.instance);
  const alp::Sequence seq = parse_sequence_arg(o.sequence, inst.n());
  if (!alp::is_permutation_of_all(inst, seq))
    throw alp::ArgumentError("sequence must list every aircraft exactly once");
  const alp::SeparationMode mode = mode_from(o.mode);
  const alp::MultiRunwaySchedule plan = alp::optimize_multi(inst, seq, o.runways, mode);
  emit_json(alp::solution_to_json(alp::make_solution_doc(inst, plan, mode, o.instance)), o.out);
  return kOk;
}

struct VerifyOpts {
  std::string instance, schedule, mode;
};

int cmd_verify(const VerifyOpts& o) {
  const alp::Instance inst = alp::load_instance(o.instance);
  std::ifstream in(o.schedule);
  if (!in) throw alp::AlpError("cannot open " + o.schedule);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw alp::FormatError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  const alp::SolutionDoc doc = alp::solution_from_json(j);
  const alp::SeparationMode mode = o.mode.empty() ? doc.mode : mode_from(o.mode);
  const alp::VerifyResult r = alp::verify_solution(inst, doc, mode);
  if (r.ok) {
    std::cout << "ok: feasible (" << alp::to_string(mode) << "), penalty " << doc.penalty << '\n';
    return kOk;
  }
  for (const auto& p : r.problems) std::cerr << "mismatch: " << p << '\n';
  return kMismatch;
}

struct BenchOpts {
  std::string suite = "small", reference, data_dir, solutions, out, mode = "all-pairs";
  int replications = 10;
  std::uint64_t seeds = 1;
  long budget_iters = 20000;
  double budget_seconds = 0.0;
  bool parallel = false;
};

int cmd_bench(const BenchOpts& o) {
  const auto entries = alp::bench::suite(o.suite);
  alp::bench::ReferenceTable refs;
  if (!o.reference.empty()) refs = alp::bench::load_reference_file(o.reference);
  const std::string data_dir = o.data_dir.empty() ? default_data_dir() : o.data_dir;

  alp::SAConfig cfg;
  cfg.max_iterations = o.budget_iters;
  if (o.budget_seconds > 0.0) cfg.max_seconds = o.budget_seconds;
  cfg.mode = mode_from(o.mode);
  cfg.execution = o.parallel ? alp::Execution::parallel : alp::Execution::serial;

  std::ofstream file;
  if (!o.out.empty() && o.out != "-") {
    file.open(o.out);
    if (!file) throw alp::AlpError("cannot write " + o.out);
  }
  std::ostream& csv = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  if (!o.solutions.empty()) fs::create_directories(o.solutions);

  alp::bench::write_csv_header(csv);
  int loaded = 0;
  bool all_verified = true;
  for (const auto& e : entries) {
    const fs::path path = fs::path(data_dir) / (e.name + ".txt");
    if (!fs::exists(path)) {
      std::cerr << "skipping " << e.name << ": " << path.string() << " not found\n";
      continue;
    }
    const alp::Instance inst = alp::load_airland(path.string());
    ++loaded;
    for (int r : e.runways) {
      std::optional<alp::bench::Reference> ref;
      if (auto it = refs.find({e.name, r}); it != refs.end()) ref = it->second;
      const auto row = alp::bench::run_row(inst, e.name, r, o.replications, o.seeds, cfg, ref);
      alp::bench::write_csv_row(csv, row);
      csv.flush();
      if (!o.solutions.empty()) {
        const auto doc = alp::make_solution_doc(inst, row.best_result.schedule, cfg.mode, path.string());
        const fs::path sol = fs::path(o.solutions) / (e.name + "_R" + std::to_string(r) + ".json");
        emit_json(alp::solution_to_json(doc), sol.string());
        const auto check = alp::verify_solution(inst, doc, cfg.mode);
        if (!check.ok) {
          all_verified = false;
          for (const auto& p : check.problems) std::cerr << e.name << " R=" << r << ": " << p << '\n';
        }
      }
    }
  }
  if (loaded == 0) {
    std::cerr << "no benchmark files found under " << data_dir << '\n';
    return kUsage;
  }
  return all_verified ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aircraft landing scheduler"};
  app.require_subcommand(1);
  const std::vector<std::string> modes{"adjacent", "all-pairs", "all_pairs"};

  SolveOpts solve;
  auto* s = app.add_subcommand("solve", "search for a low-penalty landing plan");
  s->add_option("--instance", solve.instance, "airland text or alp/1 JSON instance")->required();
  s->add_option("--runways", solve.runways, "number of runways")->check(CLI::PositiveNumber);
  s->add_option("--seed", solve.seed, "random seed");
  s->add_option("--budget-iters", solve.budget_iters, "iteration budget")->check(CLI::NonNegativeNumber);
  s->add_option("--budget-seconds", solve.budget_seconds, "wall-clock budget (0 = none)")->check(CLI::NonNegativeNumber);
  s->add_option("--mode", solve.mode, "separation regime")->check(CLI::IsMember(modes));
  s->add_option("--out", solve.out, "output JSON path (default stdout)");
  s->add_option("--trace", solve.trace, "write the per-iteration trace as CSV");
  s->add_flag("--parallel", solve.parallel, "score the ensemble with OpenMP");

  SequenceOpts seq;
  auto* q = app.add_subcommand("sequence", "optimize landing times for a fixed order");
  q->add_option("--instance", seq.instance, "airland text or alp/1 JSON instance")->required();
  q->add_option("--sequence", seq.sequence, "comma-separated 1-based aircraft order")->required();
  q->add_option("--runways", seq.runways, "number of runways")->check(CLI::PositiveNumber);
  q->add_option("--mode", seq.mode, "separation regime")->check(CLI::IsMember(modes));
  q->add_option("--out", seq.out, "output JSON path (default stdout)");

  BenchOpts bench;
  auto* b = app.add_subcommand("bench", "run the benchmark suite and print CSV");
  b->add_option("--suite", bench.suite, "small, large or all")->check(CLI::IsMember({"small", "large", "all"}));
  b->add_option("--replications", bench.replications, "seeded runs per row")->check(CLI::PositiveNumber);
  b->add_option("--seeds", bench.seeds, "first seed; replication k uses seeds + k");
  b->add_option("--reference", bench.reference, "CSV of known optima / best-known values");
  b->add_option("--data-dir", bench.data_dir, "directory holding airland*.txt (default $ALP_DATA_DIR or data/orlib)");
  b->add_option("--solutions", bench.solutions, "write and verify the best plan of each row here");
  b->add_option("--budget-iters", bench.budget_iters, "iteration budget per run")->check(CLI::NonNegativeNumber);
  b->add_option("--budget-seconds", bench.budget_seconds, "wall-clock budget per run (0 = none)")->check(CLI::NonNegativeNumber);
  b->add_option("--mode", bench.mode, "separation regime")->check(CLI::IsMember(modes));
  b->add_option("--out", bench.out, "CSV path (default stdout)");
  b->add_flag("--parallel", bench.parallel, "score the ensemble with OpenMP");

  VerifyOpts verify;
  auto* v = app.add_subcommand("verify", "re-check a plan produced by solve or sequence");
  v->add_option("--instance", verify.instance, "airland text or alp/1 JSON instance")->required();
  v->add_option("--schedule", verify.schedule, "plan JSON")->required();
  v->add_option("--mode", verify.mode, "separation regime (default: the plan's own)")->check(CLI::IsMember(modes));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*q) return cmd_sequence(seq);
    if (*b) return cmd_bench(bench);
    if (*v) return cmd_verify(verify);
  } catch (const alp::InfeasibleSequenceError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const alp::InfeasibleAssignmentError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const alp::NoFeasibleOrderError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const alp::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
