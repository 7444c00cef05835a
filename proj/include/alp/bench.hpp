#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alp/annealer.hpp"

namespace alp::bench {

/// Known optimum or best-known value for one (instance, runways) pair.
struct Reference {
  Cost value = 0.0;
  bool optimal = false;  ///< proven optimum rather than best known
};

using ReferenceTable = std::map<std::pair<std::string, int>, Reference>;

/// Reads `instance,N,R,reference,kind` rows; '#' starts a comment line.
/// kind is "optimal" or "best_known".
ReferenceTable load_reference(std::istream& in);
ReferenceTable load_reference_file(const std::string& path);

/// One benchmark instance and the runway counts it is run with.
struct SuiteEntry {
  std::string name;  ///< file stem, e.g. "airland1"
  int n = 0;
  std::vector<int> runways;
};

/// "small", "large" or "all". Throws ArgumentError for anything else.
std::vector<SuiteEntry> suite(const std::string& name);

/// Gap column: empty without a reference, "n/d" when the reference is 0 and
/// best is positive, otherwise 100 * (best - ref) / ref (0 when both are 0).
std::string gap_percent(Cost best, std::optional<Cost> reference);

struct BenchRow {
  std::string instance;
  int n = 0;
  int runways = 1;
  Cost best = 0.0;
  std::optional<Cost> reference;
  double avg_seconds = 0.0;  ///< search only; parsing is excluded
  int replications = 0;
  std::uint64_t best_seed = 0;
  long total_iterations = 0;
  AnnealResult best_result;  ///< replication that produced `best`
};

/// Runs K replications with seeds base_seed, base_seed + 1, ... and keeps the
/// lowest penalty (earliest seed on ties). `config.seed` is overwritten.
BenchRow run_row(const Instance& inst, const std::string& name, int runways, int replications,
                 std::uint64_t base_seed, SAConfig config, std::optional<Reference> reference);

inline constexpr const char* kCsvHeader = "instance,N,R,best,reference,gap_percent,avg_seconds,replications";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchRow& row);

/// Penalties print with up to two decimals, trailing zeros dropped.
std::string format_cost(Cost value);

}  // namespace alp::bench
