#pragma once

#include "rado/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

enum class Family {
  LinearSum,        // x_1 + ... + x_k = y
  UnitFraction,     // 1/x_1 + ... + 1/x_k = 1/y
  FractionalPower,  // 1/x_1^(1/ell) + ... + 1/x_k^(1/ell) = 1/y^(1/ell)
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// An equation family with its term count and root exponent.
class Equation {
 public:
  static Equation linear(unsigned k) { return {Family::LinearSum, k, 1}; }
  static Equation unit_fraction(unsigned k) { return {Family::UnitFraction, k, 1}; }
  static Equation fractional_power(unsigned k, unsigned ell) {
    return {Family::FractionalPower, k, ell};
  }

  /// Throws DomainError unless k >= 2, ell >= 1 and ell == 1 outside
  /// FractionalPower.
  Equation(Family family, unsigned k, unsigned ell = 1);

  Family family() const { return family_; }
  unsigned k() const { return k_; }
  unsigned ell() const { return ell_; }

  friend bool operator==(const Equation&, const Equation&) = default;

 private:
  Family family_;
  unsigned k_;
  unsigned ell_;
};

/// Multiset of x-values, value -> multiplicity.
using Counts = std::map<Value, unsigned>;

/// One solution; the x side as a multiset plus the target y.
struct SolutionInstance {
  Counts counts;
  Value target = 0;

  /// Distinct values appearing in the solution, target included, ascending.
  std::vector<Value> support() const;
  unsigned term_count() const;

  friend bool operator==(const SolutionInstance&, const SolutionInstance&) = default;
};

/// Canonical order: ascending target, then counts compared as the
/// ascending sequence of (value, multiplicity) pairs.
bool operator<(const SolutionInstance& a, const SolutionInstance& b);

std::string to_string(const SolutionInstance& s);

/// Support of a solution. A solution is monochromatic iff its support is.
using Hyperedge = std::vector<Value>;

struct EnumerationLimits {
  std::size_t max_set_size = 64;
  std::uint64_t max_solutions = 100'000'000;
};

/// Exact check of one instance. Returns false (not an error) when the
/// multiplicities do not sum to k. FractionalPower instances must consist of
/// perfect ell-th powers, otherwise FractionalPowerNotAPower is thrown.
bool check_solution(const Equation& eq, const Counts& counts, Value target);

/// Every solution whose values and target lie in A, in canonical order.
/// UnitFraction goes through the lcm transform a -> lcm(A)/a.
std::vector<SolutionInstance> enumerate_solutions_in_set(const Equation& eq,
                                                         std::span<const Value> A,
                                                         const EnumerationLimits& limits = {});

/// Every solution with all values in [1, n], in canonical order.
/// UnitFraction uses Egyptian-fraction recursion with exact rationals.
std::vector<SolutionInstance> enumerate_solutions_in_interval(const Equation& eq, Value n,
                                                              const EnumerationLimits& limits = {});

/// Streams the solutions whose values all lie in `values` (any order, any
/// size) in canonical order. The callback returns false to stop early.
/// Uses direct recursion, not the lcm transform, so it scales to large
/// intervals. Throws BudgetExceeded past limits.max_solutions.
void for_each_solution_within(const Equation& eq, std::span<const Value> values,
                              const std::function<bool(const SolutionInstance&)>& visit,
                              const EnumerationLimits& limits = {});

/// Solutions within [1, n] whose largest value is exactly n. The union over
/// n' <= n equals enumerate_solutions_in_interval(eq, n).
std::vector<SolutionInstance> solutions_with_max(const Equation& eq, Value n,
                                                 const EnumerationLimits& limits = {});

/// True iff some solution has all values and target in S. Dynamic
/// programming over exactly-j-term reachable sums; never lists solutions.
bool exists_mono_solution(const Equation& eq, std::span<const Value> S);

/// Distinct supports of the given solutions, in first-seen order.
std::vector<Hyperedge> supports_of(std::span<const SolutionInstance> solutions);

/// Sorted, deduplicated copy; throws DomainError on zero.
std::vector<Value> normalize_set(std::span<const Value> A);

}  // namespace rado
