#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace rado {

/// Domain integers (elements of colored sets).
using Value = std::uint64_t;

/// Arbitrary-precision nonnegative integer used for every lcm and bound.
using Natural = boost::multiprecision::cpp_int;

/// Thrown by the fixed-width arithmetic helpers when a result would not fit.
/// Callers catch it and rerun on Natural.
struct ArithmeticOverflow {};

namespace arith {

// Overflow-checked helpers. The Natural overloads never throw.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticOverflow{};
  return out;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow{};
  return out;
}
inline Natural mul(const Natural& a, const Natural& b) { return a * b; }
inline Natural add(const Natural& a, const Natural& b) { return a + b; }

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}
inline Natural gcd(const Natural& a, const Natural& b) {
  return boost::multiprecision::gcd(a, b);
}

}  // namespace arith

/// Least common multiple of a nonempty set of positive integers.
Natural lcm_of(std::span<const Value> values);

/// base^exp, exact.
Natural pow_natural(const Natural& base, unsigned exp);

/// Returns r with r^ell == v, or nullopt when v is not a perfect ell-th power.
std::optional<Value> exact_root(Value v, unsigned ell);

/// Narrows to Value, or nullopt when n does not fit.
std::optional<Value> to_value(const Natural& n);

inline std::string to_decimal(const Natural& n) { return n.str(); }

}  // namespace rado
