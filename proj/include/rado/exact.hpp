#pragma once

#include "rado/colorability.hpp"
#include "rado/equations.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rado {

struct RadoOptions {
  Value max_n = 1000;
  /// Wall-clock budget for the whole computation.
  std::chrono::milliseconds budget{60'000};
  unsigned threads = 1;
  /// Interval search for the linear equation is refused above this k.
  unsigned max_linear_k = 8;
  std::uint64_t max_solutions = 100'000'000;
};

struct LevelStats {
  Value n = 0;
  std::size_t new_solutions = 0;
  std::uint64_t nodes = 0;
  bool warm_start = false;  // extended the previous coloring without search
  double seconds = 0;
};

struct RadoResult {
  Equation equation = Equation::linear(2);
  unsigned r = 2;
  Value value = 0;
  Coloring certificate_low;  // valid coloring of [1, value-1]
  std::vector<LevelStats> stats;
};

/// The search stopped before finding the Rado number.
struct Exhausted {
  Equation equation = Equation::linear(2);
  unsigned r = 2;
  Value best_colorable_n = 0;        // [1, n] has a valid coloring
  std::optional<Value> undecided_n;  // level whose search was cut short
  Coloring best;
  std::string reason;
  std::vector<LevelStats> stats;
};

using RadoOutcome = std::variant<RadoResult, Exhausted>;

/// Smallest n such that every r-coloring of [1, n] has a monochromatic
/// solution. Grows n one step at a time, adding the solutions whose largest
/// value is n and re-solving with a warm start from the previous coloring.
RadoOutcome rado_number(const Equation& eq, unsigned r, const RadoOptions& options = {});

/// Solution hypergraph of [1, n]: supports of every solution in the interval.
std::vector<Hyperedge> interval_hypergraph(const Equation& eq, Value n,
                                           const EnumerationLimits& limits = {});

/// Block coloring of [1, k^r - 1]: x gets color i where k^i <= x < k^(i+1).
/// DomainError if k^r - 1 exceeds domain_cap.
Coloring lower_bound_coloring(unsigned k, unsigned r, Value domain_cap = 10'000'000);

/// First monochromatic solution in canonical order, or nullopt if none.
/// Only solutions lying inside one color class are enumerated.
std::optional<SolutionInstance> verify_no_mono(const Equation& eq, const Coloring& coloring,
                                               const EnumerationLimits& limits = {});

/// Re-checks a result: certificate_low covers [1, value-1] with no
/// monochromatic solution and the hypergraph on [1, value] is not colorable.
bool verify_rado_result(const RadoResult& result, const SearchOptions& options = {});

}  // namespace rado
