#pragma once

#include "rado/equations.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rado {

/// An r-coloring of a finite set of positive integers.
class Coloring {
 public:
  Coloring() = default;
  /// domain values must be distinct; colors[i] is the color of domain[i].
  Coloring(std::vector<Value> domain, std::vector<unsigned> colors, unsigned r);

  const std::vector<Value>& domain() const { return domain_; }
  const std::vector<unsigned>& colors() const { return colors_; }
  unsigned r() const { return r_; }
  std::size_t size() const { return domain_.size(); }

  std::optional<unsigned> color_of(Value v) const;
  /// Color classes, each ascending. classes()[c] holds the values of color c.
  std::vector<std::vector<Value>> classes() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Value> domain_;  // ascending
  std::vector<unsigned> colors_;
  unsigned r_ = 0;
};

std::string to_string(const Coloring& c);

/// True iff every value of e is colored and all share one color.
bool is_monochromatic(const Coloring& c, const Hyperedge& e);
/// First monochromatic edge in input order, if any.
std::optional<Hyperedge> first_monochromatic_edge(const Coloring& c, std::span<const Hyperedge> edges);

struct SearchStats {
  std::uint64_t nodes = 0;
  /// Search: hyperedges after subsumption reduction. Brute force: number of
  /// color classes found to contain a solution.
  std::uint64_t edges = 0;
  double seconds = 0;
};

struct SearchOptions {
  unsigned threads = 1;
  /// 0 means unlimited.
  std::uint64_t node_cap = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class SearchStatus { Colorable, NotColorable, Unknown };

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<Coloring> coloring;  // present iff Colorable
  SearchStats stats;
};

/// Drops every edge that is a superset of another edge and duplicate edges.
/// Each edge is returned sorted ascending; relative order is kept.
std::vector<Hyperedge> reduce_subsumed(std::span<const Hyperedge> edges);

/// Finds an r-coloring of domain with no monochromatic edge, or proves none
/// exists. Backtracking over a degree-descending static order with
/// forward checking (unit propagation when r == 2) and color-permutation
/// symmetry breaking. Unknown is returned only when a cap or deadline hits.
SearchResult find_coloring(std::span<const Hyperedge> edges, std::span<const Value> domain, unsigned r,
                           const SearchOptions& options = {});

enum class Outcome { IsWitness, NotWitness };

struct WitnessVerdict {
  Outcome outcome = Outcome::NotWitness;
  std::optional<Coloring> counterexample;  // present iff NotWitness
  SearchStats stats;
};

/// Every r-coloring of A has a monochromatic solution? Builds the solution
/// hypergraph on A and runs find_coloring. Throws BudgetExceeded if the
/// search is cut short.
WitnessVerdict is_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                          const SearchOptions& options = {});

/// Same contract as is_witness, by trying all colorings of A (first element
/// fixed to color 0) and testing each class with exists_mono_solution.
WitnessVerdict brute_force_is_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                                      std::uint64_t cap = 10'000'000);

/// DIMACS CNF for "domain admits an r-coloring with no monochromatic edge".
/// Variable of (position i, color c) is i*r + c + 1.
std::string export_cnf(std::span<const Hyperedge> edges, std::span<const Value> domain, unsigned r);

}  // namespace rado
