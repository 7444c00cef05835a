#include "alp/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace alp::bench {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> r;
  for (int i = lo; i <= hi; ++i) r.push_back(i);
  return r;
}

}  // namespace

ReferenceTable load_reference(std::istream& in) {
  ReferenceTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    if (!header_seen && !cells.empty() && cells[0] == "instance") {
      header_seen = true;
      continue;
    }
    if (cells.size() < 4) throw FormatError("reference line " + std::to_string(lineno) + ": expected at least 4 columns", lineno);
    try {
      const int r = std::stoi(cells[2]);
      Reference ref;
      ref.value = std::stod(cells[3]);
      ref.optimal = cells.size() > 4 && cells[4] == "optimal";
      table[{cells[0], r}] = ref;
    } catch (const std::logic_error&) {
      throw FormatError("reference line " + std::to_string(lineno) + ": bad number", lineno);
    }
  }
  return table;
}

ReferenceTable load_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlpError("cannot open reference file " + path);
  return load_reference(in);
}

std::vector<SuiteEntry> suite(const std::string& name) {
  static const std::vector<SuiteEntry> small{
      {"airland1", 10, range(1, 3)}, {"airland2", 15, range(1, 3)}, {"airland3", 20, range(1, 3)},
      {"airland4", 20, range(1, 4)}, {"airland5", 20, range(1, 4)}, {"airland6", 30, range(1, 3)},
      {"airland7", 44, range(1, 2)}, {"airland8", 50, range(1, 3)},
  };
  static const std::vector<SuiteEntry> large{
      {"airland9", 100, range(1, 4)},  {"airland10", 150, range(1, 5)}, {"airland11", 200, range(1, 5)},
      {"airland12", 250, range(1, 5)}, {"airland13", 500, range(1, 5)},
  };
  if (name == "small") return small;
  if (name == "large") return large;
  if (name == "all") {
    auto all = small;
    all.insert(all.end(), large.begin(), large.end());
    return all;
  }
  throw ArgumentError("unknown suite '" + name + "' (expected small, large or all)");
}

std::string format_cost(Cost value) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << value;
  std::string s = os.str();
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string gap_percent(Cost best, std::optional<Cost> reference) {
  if (!reference) return "";
  if (*reference == 0.0) return costs_equal(best, 0.0) ? "0" : "n/d";
  return format_cost(100.0 * (best - *reference) / *reference);
}

BenchRow run_row(const Instance& inst, const std::string& name, int runways, int replications,
                 std::uint64_t base_seed, SAConfig config, std::optional<Reference> reference) {
  if (replications < 1) throw ArgumentError("replications must be at least 1");
  BenchRow row;
  row.instance = name;
  row.n = inst.n();
  row.runways = runways;
  row.replications = replications;
  if (reference) row.reference = reference->value;
  config.runways = runways;
  if (reference && reference->optimal) config.known_optimum = reference->value;

  double seconds = 0.0;
  bool have = false;
  for (int k = 0; k < replications; ++k) {
    config.seed = base_seed + static_cast<std::uint64_t>(k);
    const auto start = std::chrono::steady_clock::now();
    AnnealResult res = anneal(inst, config);
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.total_iterations += res.iterations;
    if (!have || res.best.penalty < row.best) {
      row.best = res.best.penalty;
      row.best_seed = config.seed;
      row.best_result = std::move(res);
      have = true;
    }
  }
  row.avg_seconds = seconds / replications;
  return row;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const BenchRow& row) {
  std::ostringstream secs;
  secs << std::fixed << std::setprecision(4) << row.avg_seconds;
  out << row.instance << ',' << row.n << ',' << row.runways << ',' << format_cost(row.best) << ','
      << (row.reference ? format_cost(*row.reference) : "") << ',' << gap_percent(row.best, row.reference) << ','
      << secs.str() << ',' << row.replications << '\n';
}

}  // namespace alp::bench
