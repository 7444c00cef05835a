#include "alp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "alp/json_io.hpp"
#include "alp/scheduler.hpp"

namespace alp {

std::string_view to_string(SeparationMode mode) {
  return mode == SeparationMode::adjacent ? "adjacent" : "all-pairs";
}

SeparationMode parse_separation_mode(std::string_view text) {
  if (text == "adjacent") return SeparationMode::adjacent;
  if (text == "all-pairs" || text == "all_pairs") return SeparationMode::all_pairs;
  throw ArgumentError("unknown separation mode '" + std::string(text) + "' (expected adjacent|all-pairs)");
}

bool costs_equal(Cost a, Cost b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string Infeasible::message() const {
  std::ostringstream os;
  os << "infeasible sequence: aircraft " << aircraft + 1 << " at position " << position + 1
     << " must land by " << latest_allowed << " but its earliest time is " << earliest;
  return os.str();
}

Instance::Instance(std::vector<Aircraft> aircraft, std::vector<Time> separation, Time freeze_time,
                   Time cross_separation)
    : aircraft_(std::move(aircraft)),
      separation_(std::move(separation)),
      freeze_time_(freeze_time),
      cross_separation_(cross_separation) {
  if (separation_.size() != aircraft_.size() * aircraft_.size())
    throw ArgumentError("separation matrix must be n x n");
}

Cost Instance::landing_cost(AircraftId i, Time t) const {
  const Aircraft& a = (*this)[i];
  if (t < a.target) return a.early_penalty * static_cast<Cost>(a.target - t);
  return a.late_penalty * static_cast<Cost>(t - a.target);
}

Sequence Instance::target_order() const {
  Sequence seq(aircraft_.size());
  std::iota(seq.begin(), seq.end(), 0);
  std::stable_sort(seq.begin(), seq.end(), [&](AircraftId a, AircraftId b) { return (*this)[a].target < (*this)[b].target; });
  return seq;
}

// ---------------------------------------------------------------------------

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  double number(const char* what) {
    std::string tok;
    if (!(in_ >> tok))
      throw FormatError("unexpected end of input at token " + std::to_string(count_ + 1) + " (expected " + what + ")",
                        count_ + 1);
    ++count_;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v))
      throw FormatError("non-numeric token '" + tok + "' at token " + std::to_string(count_) + " (expected " + what + ")",
                        count_);
    return v;
  }

  Time integer(const char* what) {
    double v = number(what);
    if (v != std::floor(v) || std::abs(v) > 9.0e15)
      throw FormatError("expected an integral " + std::string(what) + " at token " + std::to_string(count_), count_);
    return static_cast<Time>(v);
  }

  bool exhausted() {
    std::string tok;
    return !(in_ >> tok);
  }
  std::size_t count() const { return count_; }

 private:
  std::istream& in_;
  std::size_t count_ = 0;
};

}  // namespace

Instance parse_airland(std::istream& in) {
  TokenReader rd(in);
  const Time n = rd.integer("aircraft count");
  if (n < 1) throw FormatError("aircraft count must be positive", 1);
  if (n > 100000) throw FormatError("aircraft count too large", 1);
  const Time freeze = rd.integer("freeze time");

  const auto count = static_cast<std::size_t>(n);
  std::vector<Aircraft> planes(count);
  std::vector<Time> sep(count * count);
  for (std::size_t i = 0; i < count; ++i) {
    Aircraft& a = planes[i];
    a.index = static_cast<int>(i) + 1;
    a.appearance = rd.integer("appearance time");
    a.earliest = rd.integer("earliest time");
    a.target = rd.integer("target time");
    a.latest = rd.integer("latest time");
    a.early_penalty = rd.number("early penalty");
    a.late_penalty = rd.number("late penalty");
    for (std::size_t j = 0; j < count; ++j) sep[i * count + j] = rd.integer("separation");
  }
  if (!rd.exhausted())
    throw FormatError("trailing tokens after " + std::to_string(rd.count()) + " expected tokens", rd.count() + 1);

  Instance inst(std::move(planes), std::move(sep), freeze, 0);
  for (const Aircraft& a : inst.aircraft()) {
    if (a.earliest > a.target || a.target > a.latest)
      throw ValidationError("aircraft " + std::to_string(a.index) + ": window violates E <= T <= L (" +
                            std::to_string(a.earliest) + ", " + std::to_string(a.target) + ", " +
                            std::to_string(a.latest) + ")");
  }
  return inst;
}

Instance parse_airland_text(const std::string& text) {
  std::istringstream in(text);
  return parse_airland(in);
}

Instance load_airland(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlpError("cannot open instance file '" + path + "'");
  return parse_airland(in);
}

std::string serialize_airland(const Instance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << ' ' << inst.n() << ' ' << inst.freeze_time() << '\n';
  for (AircraftId i = 0; i < inst.n(); ++i) {
    const Aircraft& a = inst[i];
    os << ' ' << a.appearance << ' ' << a.earliest << ' ' << a.target << ' ' << a.latest << ' ' << a.early_penalty << ' '
       << a.late_penalty << '\n';
    for (AircraftId j = 0; j < inst.n(); ++j) os << ' ' << inst.separation(i, j);
    os << '\n';
  }
  return os.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlpError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return instance_from_json_text(text);
  return parse_airland_text(text);
}

// ---------------------------------------------------------------------------

std::string Violation::describe() const {
  switch (kind) {
    case Kind::window_order:
      return "window-order violation at aircraft " + std::to_string(aircraft + 1);
    case Kind::negative_penalty:
      return "negative penalty at aircraft " + std::to_string(aircraft + 1);
    case Kind::negative_separation:
      return "negative-separation violation at (" + std::to_string(aircraft + 1) + "," + std::to_string(other + 1) + ")";
    case Kind::empty_instance:
      return "instance has no aircraft";
    case Kind::nonzero_cross_separation:
      return "cross-runway separation must be zero";
  }
  return "unknown violation";
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  if (inst.n() < 1) out.push_back({Violation::Kind::empty_instance});
  for (AircraftId i = 0; i < inst.n(); ++i) {
    const Aircraft& a = inst[i];
    if (a.earliest > a.target || a.target > a.latest) out.push_back({Violation::Kind::window_order, i});
    if (a.early_penalty < 0 || a.late_penalty < 0) out.push_back({Violation::Kind::negative_penalty, i});
  }
  for (AircraftId i = 0; i < inst.n(); ++i)
    for (AircraftId j = 0; j < inst.n(); ++j)
      if (i != j && inst.separation(i, j) < 0) out.push_back({Violation::Kind::negative_separation, i, j});
  if (inst.cross_separation() != 0) out.push_back({Violation::Kind::nonzero_cross_separation});
  return out;
}

// ---------------------------------------------------------------------------

GeneratorParams wide_window_params(int n, std::uint64_t seed) {
  GeneratorParams p;
  p.n = n;
  p.seed = seed;
  p.window_span = 600;
  p.sep_range = {3, 15};
  p.penalty_range = {1, 30};
  p.target_span = static_cast<Time>(n) * 12;
  return p;
}

Instance generate_random_instance(const GeneratorParams& p) {
  if (p.n < 1) throw ArgumentError("generator needs n >= 1");
  if (p.window_span < 0 || p.sep_range.first < 0 || p.sep_range.first > p.sep_range.second ||
      p.penalty_range.first < 0 || p.penalty_range.first > p.penalty_range.second)
    throw ArgumentError("generator ranges must be non-negative and ordered");

  const auto n = static_cast<std::size_t>(p.n);
  const Time target_span =
      p.target_span > 0 ? p.target_span : std::max<Time>(1, p.n * (p.sep_range.first + p.sep_range.second) / 2);

  std::mt19937_64 rng(p.seed);
  auto uniform = [&rng](Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); };

  for (int attempt = 0; attempt < p.retry_cap; ++attempt) {
    std::vector<Aircraft> planes(n);
    for (std::size_t i = 0; i < n; ++i) {
      Aircraft& a = planes[i];
      a.index = static_cast<int>(i) + 1;
      a.target = uniform(0, target_span);
      a.earliest = a.target - uniform(0, p.window_span);
      a.latest = a.target + uniform(0, p.window_span);
      a.early_penalty = static_cast<Cost>(uniform(p.penalty_range.first, p.penalty_range.second));
      a.late_penalty = static_cast<Cost>(uniform(p.penalty_range.first, p.penalty_range.second));
    }
    std::vector<Time> sep(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) sep[i * n + j] = uniform(p.sep_range.first, p.sep_range.second);

    Instance inst(std::move(planes), std::move(sep));
    const Sequence order = inst.target_order();
    if (std::holds_alternative<Schedule>(try_initialize_latest(inst, order, SeparationMode::all_pairs))) return inst;
  }
  throw AlpError("random instance generation exceeded retry cap of " + std::to_string(p.retry_cap));
}

// ---------------------------------------------------------------------------

FeasibilityReport feasibility_check(const Instance& inst, std::span<const AircraftId> sequence,
                                    std::span<const Time> times, SeparationMode mode) {
  if (sequence.size() != times.size())
    throw ArgumentError("sequence has " + std::to_string(sequence.size()) + " aircraft but " +
                        std::to_string(times.size()) + " times");
  for (AircraftId id : sequence)
    if (id < 0 || id >= inst.n()) throw ArgumentError("aircraft id out of range: " + std::to_string(id + 1));

  using Breach = FeasibilityReport::Breach;
  FeasibilityReport rep;
  const std::size_t m = sequence.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Aircraft& a = inst[sequence[k]];
    if (times[k] < a.earliest || times[k] > a.latest) {
      rep.feasible_windows = false;
      const Time mag = times[k] < a.earliest ? a.earliest - times[k] : times[k] - a.latest;
      rep.violations.push_back({Breach::Kind::window, sequence[k], -1, mag, false});
    }
  }
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const Time gap = times[k] - times[j] - inst.separation(sequence[j], sequence[k]);
      if (gap >= 0) continue;
      const bool adjacent = (j + 1 == k);
      if (adjacent) rep.feasible_adjacent = false;
      rep.feasible_all_pairs = false;
      if (adjacent || mode == SeparationMode::all_pairs)
        rep.violations.push_back({Breach::Kind::separation, sequence[j], sequence[k], -gap, adjacent});
    }
  }
  return rep;
}

bool adjacent_implies_all_pairs(const Instance& inst, std::span<const AircraftId> sequence) {
  const std::size_t m = sequence.size();
  for (std::size_t a = 0; a < m; ++a) {
    Time chain = 0;
    for (std::size_t c = a + 1; c < m; ++c) {
      chain += inst.separation(sequence[c - 1], sequence[c]);
      if (inst.separation(sequence[a], sequence[c]) > chain) return false;
    }
  }
  return true;
}

bool is_permutation_of_all(const Instance& inst, std::span<const AircraftId> sequence) {
  if (static_cast<int>(sequence.size()) != inst.n()) return false;
  std::vector<char> seen(sequence.size(), 0);
  for (AircraftId id : sequence) {
    if (id < 0 || id >= inst.n() || seen[static_cast<std::size_t>(id)]) return false;
    seen[static_cast<std::size_t>(id)] = 1;
  }
  return true;
}

}  // namespace alp
