#pragma once

#include "rado/arith.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

/// The explicit witness sets for x_1 + ... + x_k = y.
///
///   Base      12 expressions in k, k >= 4; every 2-coloring has a
///             monochromatic solution and the lcm divides 6k(k+1)(k+2).
///   Even      variant of Base with 2k in place of 3k, k >= 4 even; its lcm
///             is exactly 2k(k+1)(k+2).
///   Chi       30 expressions, k >= 3; every 3-coloring has a monochromatic
///             solution.
///   Interval  {1, ..., n}.
enum class WitnessFamily { Base, Even, Chi, Interval };

/// CLI names: lemma31, lemma33, chi, interval.
std::string_view witness_family_name(WitnessFamily f);
WitnessFamily parse_witness_family(std::string_view name);

struct FamilySpec {
  WitnessFamily family;
  Value param;  // k, or n for Interval
};

/// Evaluated set, duplicates merged, ascending. DomainError on bad k.
std::vector<Value> family_set(const FamilySpec& spec);

std::vector<Value> base_witness_set(Value k);
std::vector<Value> even_witness_set(Value k);
std::vector<Value> chi_set(Value k);
std::vector<Value> interval_set(Value n);

/// The unmerged expression list for a family, paired with a label for each
/// expression (e.g. "k^2+k+1").
struct LabeledValue {
  std::string label;
  Value value;
};
std::vector<LabeledValue> family_expressions(const FamilySpec& spec);

/// Groups of expressions that evaluate to the same value; empty when all
/// expressions are distinct.
std::vector<std::vector<LabeledValue>> collisions(const FamilySpec& spec);

/// {L/a : a in A} with L = lcm(A). Throws DomainError if L exceeds 64 bits.
std::vector<Value> dual_set(std::span<const Value> A);

}  // namespace rado
