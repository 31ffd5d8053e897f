#include "rado/arith.hpp"

#include "rado/errors.hpp"

#include <limits>

namespace rado {

Natural lcm_of(std::span<const Value> values) {
  if (values.empty()) throw DomainError("lcm of an empty set");
  Natural acc = 1;
  for (Value v : values) {
    if (v == 0) throw DomainError("lcm: values must be positive");
    const Natural nv = v;
    acc = acc / arith::gcd(acc, nv) * nv;
  }
  return acc;
}

Natural pow_natural(const Natural& base, unsigned exp) {
  Natural result = 1;
  Natural b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

std::optional<Value> exact_root(Value v, unsigned ell) {
  if (ell == 0) throw DomainError("root exponent must be >= 1");
  if (ell == 1 || v <= 1) return v;
  // Binary search on r in [1, 2^(64/ell)+1]; compare r^ell against v exactly.
  Value lo = 1;
  Value hi = (ell >= 64) ? 2 : (Value{1} << (64 / ell + 1 > 63 ? 63 : 64 / ell + 1));
  while (lo < hi) {
    const Value mid = lo + (hi - lo + 1) / 2;
    if (pow_natural(mid, ell) <= v) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (pow_natural(lo, ell) == v) return lo;
  return std::nullopt;
}

std::optional<Value> to_value(const Natural& n) {
  if (n < 0 || n > std::numeric_limits<Value>::max()) return std::nullopt;
  return static_cast<Value>(n);
}

}  // namespace rado
