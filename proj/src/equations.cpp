#include "rado/equations.hpp"

#include "rado/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace rado {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::LinearSum:
      return "linear";
    case Family::UnitFraction:
      return "unit-fraction";
    case Family::FractionalPower:
      return "fractional-power";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "linear" || name == "linear-sum") return Family::LinearSum;
  if (name == "unit-fraction") return Family::UnitFraction;
  if (name == "fractional-power") return Family::FractionalPower;
  throw DomainError("unknown equation family '" + std::string(name) + "'");
}

Equation::Equation(Family family, unsigned k, unsigned ell) : family_(family), k_(k), ell_(ell) {
  if (k < 2) throw DomainError("term count k must be at least 2");
  if (ell < 1) throw DomainError("root exponent must be at least 1");
  if (family != Family::FractionalPower && ell != 1) {
    throw DomainError("root exponent is only meaningful for the fractional-power family");
  }
}

std::vector<Value> SolutionInstance::support() const {
  std::vector<Value> s;
  s.reserve(counts.size() + 1);
  for (const auto& [v, c] : counts) s.push_back(v);
  s.insert(std::lower_bound(s.begin(), s.end(), target), target);
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

unsigned SolutionInstance::term_count() const {
  unsigned n = 0;
  for (const auto& [v, c] : counts) n += c;
  return n;
}

bool operator<(const SolutionInstance& a, const SolutionInstance& b) {
  if (a.target != b.target) return a.target < b.target;
  return a.counts < b.counts;
}

std::string to_string(const SolutionInstance& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, c] : s.counts) {
    if (!first) os << ", ";
    first = false;
    os << v << ':' << c;
  }
  os << "}->" << s.target;
  return os.str();
}

std::vector<Value> normalize_set(std::span<const Value> A) {
  std::vector<Value> out(A.begin(), A.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.front() == 0) throw DomainError("set elements must be positive");
  return out;
}

namespace {

Value root_or_throw(Value v, unsigned ell) {
  auto r = exact_root(v, ell);
  if (!r) {
    throw FractionalPowerNotAPower(std::to_string(v) + " is not a perfect " + std::to_string(ell) +
                                   "-th power; such solutions are not classified");
  }
  return *r;
}

std::vector<Value> roots_of(std::span<const Value> values, unsigned ell) {
  std::vector<Value> out;
  out.reserve(values.size());
  for (Value v : values) out.push_back(root_or_throw(v, ell));
  return out;
}

Value power_of(Value v, unsigned ell) {
  auto p = to_value(pow_natural(v, ell));
  if (!p) throw DomainError("power overflows 64 bits");
  return *p;
}

SolutionInstance lift_instance(const SolutionInstance& s, unsigned ell) {
  SolutionInstance out;
  for (const auto& [v, c] : s.counts) out.counts[power_of(v, ell)] = c;
  out.target = power_of(s.target, ell);
  return out;
}

using Visit = std::function<bool(const SolutionInstance&)>;

// Shared emission and bookkeeping for the recursive enumerators. Indices in
// `parts` refer to positions in `out_values`.
struct Emitter {
  Emitter(std::span<const Value> values, const Visit* v, std::uint64_t c) : out_values(values), visit(v), cap(c) {}

  std::span<const Value> out_values;
  const Visit* visit = nullptr;
  std::uint64_t cap = 0;
  std::uint64_t skip = 0;  // already emitted by an aborted fixed-width run
  std::uint64_t emitted = 0;
  bool stopped = false;
  std::vector<std::pair<std::size_t, unsigned>> parts;
  Value extra_value = 0;
  unsigned extra_mult = 0;

  void emit(Value target) {
    ++emitted;
    if (emitted > cap) throw BudgetExceeded("solution enumeration exceeded cap of " + std::to_string(cap));
    if (emitted <= skip) return;
    SolutionInstance s;
    for (const auto& [i, c] : parts) s.counts[out_values[i]] += c;
    if (extra_mult != 0) s.counts[extra_value] += extra_mult;
    s.target = target;
    if (!(*visit)(s)) stopped = true;
  }
};

// Exactly-k nondecreasing representations of each target as a sum of values.
template <class Int>
class LinearEngine {
 public:
  LinearEngine(const std::vector<Int>& vals, unsigned k, Emitter& em)
      : vals_(vals), k_(k), em_(em), max_(vals.empty() ? Int(0) : vals.back()) {}

  void run_all() {
    for (std::size_t t = 0; t < vals_.size() && !em_.stopped; ++t) run_target(t);
  }

  void run_target(std::size_t t) {
    target_ = em_.out_values[t];
    rec(vals_[t], k_, 0);
  }

 private:
  void rec(const Int& rem, unsigned j, std::size_t start) {
    if (start >= vals_.size()) return;
    if (arith::mul(Int(j), max_) < rem) return;
    for (std::size_t i = start; i < vals_.size(); ++i) {
      const Int& x = vals_[i];
      if (arith::mul(Int(j), x) > rem) break;
      Int cx = 0;
      for (unsigned c = 1; c <= j; ++c) {
        cx = arith::add(cx, x);
        if (cx > rem) break;
        const Int left = rem - cx;
        const unsigned jl = j - c;
        em_.parts.emplace_back(i, c);
        if (jl == 0) {
          if (left == 0) em_.emit(target_);
        } else if (left > 0) {
          rec(left, jl, i + 1);
        }
        em_.parts.pop_back();
        if (em_.stopped) return;
      }
    }
  }

  const std::vector<Int>& vals_;
  unsigned k_;
  Emitter& em_;
  Int max_;
  Value target_ = 0;
};

// Egyptian-fraction recursion: represent num/den as a sum of j unit
// fractions with nondecreasing denominators drawn from vals.
template <class Int>
class UnitEngine {
 public:
  UnitEngine(std::span<const Value> vals, unsigned k, Emitter& em) : vals_(vals), k_(k), em_(em) {}

  void run_all() {
    for (std::size_t t = 0; t < vals_.size() && !em_.stopped; ++t) {
      target_ = vals_[t];
      rec(Int(1), Int(vals_[t]), k_, t + 1);
    }
  }

  /// Remaining target num/den with j terms, all values at positions >= start.
  void run_partial(Value target, const Int& num, const Int& den, unsigned j, std::size_t start) {
    target_ = target;
    rec(num, den, j, start);
  }

 private:
  void rec(const Int& num, const Int& den, unsigned j, std::size_t start) {
    if (start >= vals_.size()) return;
    const Value maxv = vals_.back();
    // The j remaining terms are each at least 1/maxv.
    if (arith::mul(num, Int(maxv)) < arith::mul(Int(j), den)) return;
    const Int lo = (arith::add(den, num) - 1) / num;
    const Int hi = arith::mul(Int(j), den) / num;
    if (lo > Int(maxv)) return;
    std::size_t i = static_cast<std::size_t>(
        std::lower_bound(vals_.begin(), vals_.end(), static_cast<Value>(lo)) - vals_.begin());
    i = std::max(i, start);
    for (; i < vals_.size() && Int(vals_[i]) <= hi; ++i) {
      const Int x = vals_[i];
      const Int a = arith::mul(num, x);
      for (unsigned c = 1; c <= j; ++c) {
        const Int b = arith::mul(Int(c), den);
        if (a < b) break;
        const Int nn = a - b;
        const unsigned jl = j - c;
        em_.parts.emplace_back(i, c);
        if (jl == 0) {
          if (nn == 0) em_.emit(target_);
        } else if (nn != 0) {
          const Int nd = arith::mul(den, x);
          const Int g = arith::gcd(nn, nd);
          rec(nn / g, nd / g, jl, i + 1);
        }
        em_.parts.pop_back();
        if (em_.stopped) return;
        if (nn == 0) break;
      }
    }
  }

  std::span<const Value> vals_;
  unsigned k_;
  Emitter& em_;
  Value target_ = 0;
};

// Runs body<Int>(emitter) first with 64-bit arithmetic, then with Natural
// if an intermediate overflowed. Solutions streamed before the overflow are
// not re-sent.
template <class Body>
void with_escalation(Emitter& em, Body&& body) {
  try {
    body.template operator()<std::uint64_t>(em);
    return;
  } catch (const ArithmeticOverflow&) {
  }
  em.skip = em.emitted;
  em.emitted = 0;
  em.parts.clear();
  body.template operator()<Natural>(em);
}

void linear_within(const std::vector<Value>& vals, unsigned k, const Visit& visit, std::uint64_t cap) {
  Emitter em{vals, &visit, cap};
  with_escalation(em, [&]<class Int>(Emitter& e) {
    std::vector<Int> iv(vals.begin(), vals.end());
    LinearEngine<Int>(iv, k, e).run_all();
  });
}

void unit_within(const std::vector<Value>& vals, unsigned k, const Visit& visit, std::uint64_t cap) {
  Emitter em{vals, &visit, cap};
  with_escalation(em, [&]<class Int>(Emitter& e) { UnitEngine<Int>(vals, k, e).run_all(); });
}

// Unit-fraction solutions within A via a -> L/a, which turns them into
// linear solutions within the dual set.
std::vector<SolutionInstance> unit_in_set_by_transform(const std::vector<Value>& A, unsigned k,
                                                       std::uint64_t cap) {
  const Natural L = lcm_of(A);
  // Dual values ascending correspond to original values descending.
  std::vector<Value> originals(A.rbegin(), A.rend());
  std::vector<SolutionInstance> out;
  const Visit collect = [&](const SolutionInstance& s) {
    out.push_back(s);
    return true;
  };
  Emitter em{originals, &collect, cap};
  with_escalation(em, [&]<class Int>(Emitter& e) {
    std::vector<Int> dual;
    dual.reserve(originals.size());
    for (Value a : originals) {
      const Natural q = L / a;
      if constexpr (std::is_same_v<Int, Natural>) {
        dual.push_back(q);
      } else {
        auto v = to_value(q);
        if (!v) throw ArithmeticOverflow{};
        dual.push_back(*v);
      }
    }
    LinearEngine<Int>(dual, k, e).run_all();
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Exactly-k reachability, dense bitset layers over sums in [0, M].
bool exact_k_hits_dense(const std::vector<Value>& d, unsigned k) {
  const Value M = d.back();
  const std::size_t words = static_cast<std::size_t>(M / 64 + 1);
  std::vector<std::uint64_t> cur(words, 0), next(words, 0);
  cur[0] = 1;
  const Value mn = d.front();
  for (unsigned j = 1; j <= k; ++j) {
    std::fill(next.begin(), next.end(), 0);
    // Sums that cannot be completed within M by the remaining terms are dead.
    const Value limit = M - static_cast<Value>(k - j) * mn;
    const std::size_t lim_words = static_cast<std::size_t>(limit / 64 + 1);
    for (Value a : d) {
      if (a > limit) break;
      const std::size_t ws = static_cast<std::size_t>(a / 64);
      const unsigned bs = static_cast<unsigned>(a % 64);
      for (std::size_t w = lim_words; w-- > ws;) {
        std::uint64_t v = cur[w - ws] << bs;
        if (bs != 0 && w > ws) v |= cur[w - ws - 1] >> (64 - bs);
        next[w] |= v;
      }
    }
    // Clear bits above limit.
    const unsigned tail = static_cast<unsigned>(limit % 64);
    if (tail != 63) next[lim_words - 1] &= (std::uint64_t{1} << (tail + 1)) - 1;
    for (std::size_t w = lim_words; w < words; ++w) next[w] = 0;
    std::swap(cur, next);
    if (std::all_of(cur.begin(), cur.end(), [](std::uint64_t w) { return w == 0; })) return false;
  }
  for (Value a : d) {
    if ((cur[a / 64] >> (a % 64)) & 1u) return true;
  }
  return false;
}

template <class Int>
bool exact_k_hits_sparse(const std::vector<Int>& d, unsigned k) {
  const Int M = d.back();
  const Int mn = d.front();
  std::vector<Int> cur{Int(0)}, next;
  for (unsigned j = 1; j <= k; ++j) {
    const Int used = Int(k - j) * mn;
    if (used > M) return false;
    const Int limit = M - used;
    next.clear();
    for (const Int& a : d) {
      if (a > limit) break;
      for (const Int& s : cur) {
        const Int v = s + a;
        if (v > limit) break;
        next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::swap(cur, next);
    if (cur.empty()) return false;
  }
  std::size_t i = 0, j = 0;
  while (i < cur.size() && j < d.size()) {
    if (cur[i] == d[j]) return true;
    if (cur[i] < d[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

double binom_estimate(std::size_t n, unsigned j) {
  return std::exp(std::lgamma(double(n + j)) - std::lgamma(double(j + 1)) - std::lgamma(double(n)));
}

// Is some element of d a sum of exactly k elements of d (repetition allowed)?
// d is sorted and distinct.
bool exact_k_hits(const std::vector<Value>& d, unsigned k) {
  if (d.empty()) return false;
  const Value M = d.back();
  if (Natural(k) * d.front() > M) return false;
  const double dense_cost = double(k) * double(d.size()) * (double(M) / 64.0 + 1.0);
  double sparse_cost = 0;
  for (unsigned j = 1; j <= k; ++j) {
    sparse_cost += double(d.size()) * std::min(double(M) + 1.0, binom_estimate(d.size(), j)) * 4.0;
  }
  if (M < (Value{1} << 30) && dense_cost <= sparse_cost) return exact_k_hits_dense(d, k);
  if (M < (Value{1} << 62)) return exact_k_hits_sparse(d, k);
  return exact_k_hits_sparse(std::vector<Natural>(d.begin(), d.end()), k);
}

bool exact_k_hits_natural(const std::vector<Natural>& d, unsigned k) {
  if (d.back() < (Natural(1) << 62)) {
    std::vector<Value> narrow;
    narrow.reserve(d.size());
    for (const Natural& x : d) narrow.push_back(static_cast<Value>(x));
    return exact_k_hits(narrow, k);
  }
  if (Natural(k) * d.front() > d.back()) return false;
  return exact_k_hits_sparse(d, k);
}

bool unit_exists(const std::vector<Value>& S, unsigned k) {
  const Natural L = lcm_of(S);
  std::vector<Natural> dual;
  dual.reserve(S.size());
  for (auto it = S.rbegin(); it != S.rend(); ++it) dual.push_back(L / *it);
  return exact_k_hits_natural(dual, k);
}

}  // namespace

bool check_solution(const Equation& eq, const Counts& counts, Value target) {
  if (target == 0) throw DomainError("target must be positive");
  unsigned total = 0;
  for (const auto& [v, c] : counts) {
    if (v == 0) throw DomainError("values must be positive");
    if (c == 0) throw DomainError("multiplicities must be positive");
    total += c;
  }
  if (eq.family() == Family::FractionalPower) {
    const unsigned ell = eq.ell();
    Counts rooted;
    for (const auto& [v, c] : counts) rooted[root_or_throw(v, ell)] += c;
    return check_solution(Equation::unit_fraction(eq.k()), rooted, root_or_throw(target, ell));
  }
  if (total != eq.k()) return false;
  if (eq.family() == Family::LinearSum) {
    Natural sum = 0;
    for (const auto& [v, c] : counts) sum += Natural(v) * c;
    return sum == target;
  }
  // sum c/a == 1/target  <=>  sum c * (L/a) == L/target
  std::vector<Value> all;
  for (const auto& [v, c] : counts) all.push_back(v);
  all.push_back(target);
  const Natural L = lcm_of(all);
  Natural lhs = 0;
  for (const auto& [v, c] : counts) lhs += (L / v) * c;
  return lhs == L / target;
}

void for_each_solution_within(const Equation& eq, std::span<const Value> values, const Visit& visit,
                              const EnumerationLimits& limits) {
  const std::vector<Value> vals = normalize_set(values);
  if (vals.empty()) return;
  switch (eq.family()) {
    case Family::LinearSum:
      linear_within(vals, eq.k(), visit, limits.max_solutions);
      return;
    case Family::UnitFraction:
      unit_within(vals, eq.k(), visit, limits.max_solutions);
      return;
    case Family::FractionalPower: {
      const unsigned ell = eq.ell();
      const std::vector<Value> roots = roots_of(vals, ell);
      const Visit lifted = [&](const SolutionInstance& s) { return visit(lift_instance(s, ell)); };
      unit_within(roots, eq.k(), lifted, limits.max_solutions);
      return;
    }
  }
}

std::vector<SolutionInstance> enumerate_solutions_in_set(const Equation& eq, std::span<const Value> A,
                                                         const EnumerationLimits& limits) {
  const std::vector<Value> vals = normalize_set(A);
  if (vals.empty()) throw DomainError("set must be nonempty");
  if (vals.size() > limits.max_set_size) {
    throw SetTooLarge("set has " + std::to_string(vals.size()) + " elements; limit is " +
                      std::to_string(limits.max_set_size));
  }
  switch (eq.family()) {
    case Family::LinearSum: {
      std::vector<SolutionInstance> out;
      linear_within(vals, eq.k(), [&](const SolutionInstance& s) {
        out.push_back(s);
        return true;
      }, limits.max_solutions);
      return out;
    }
    case Family::UnitFraction:
      return unit_in_set_by_transform(vals, eq.k(), limits.max_solutions);
    case Family::FractionalPower: {
      const unsigned ell = eq.ell();
      auto base = unit_in_set_by_transform(roots_of(vals, ell), eq.k(), limits.max_solutions);
      std::vector<SolutionInstance> out;
      out.reserve(base.size());
      for (const auto& s : base) out.push_back(lift_instance(s, ell));
      return out;
    }
  }
  return {};
}

std::vector<SolutionInstance> enumerate_solutions_in_interval(const Equation& eq, Value n,
                                                              const EnumerationLimits& limits) {
  if (n < 1) throw DomainError("interval bound must be at least 1");
  if (eq.family() == Family::FractionalPower && eq.ell() > 1) {
    throw DomainError("interval enumeration is not defined for fractional powers with ell > 1");
  }
  std::vector<Value> vals(n);
  std::iota(vals.begin(), vals.end(), Value{1});
  std::vector<SolutionInstance> out;
  for_each_solution_within(eq, vals, [&](const SolutionInstance& s) {
    out.push_back(s);
    return true;
  }, limits);
  return out;
}

std::vector<SolutionInstance> solutions_with_max(const Equation& eq, Value n,
                                                 const EnumerationLimits& limits) {
  if (n < 1) throw DomainError("interval bound must be at least 1");
  if (eq.family() == Family::FractionalPower && eq.ell() > 1) {
    throw DomainError("interval enumeration is not defined for fractional powers with ell > 1");
  }
  std::vector<SolutionInstance> out;
  if (n < 2) return out;
  const Visit collect = [&](const SolutionInstance& s) {
    out.push_back(s);
    return true;
  };
  std::vector<Value> vals(n);
  std::iota(vals.begin(), vals.end(), Value{1});
  const unsigned k = eq.k();
  if (eq.family() == Family::LinearSum) {
    // The target is the largest value.
    Emitter em{vals, &collect, limits.max_solutions};
    with_escalation(em, [&]<class Int>(Emitter& e) {
      std::vector<Int> iv(vals.begin(), vals.end());
      LinearEngine<Int>(iv, k, e).run_target(n - 1);
    });
    return out;
  }
  // Unit fractions: the target is the smallest value, so n is an x with
  // some multiplicity m. Remaining terms lie in (y, n).
  if (n % k == 0) out.push_back({Counts{{n, k}}, n / k});
  const std::vector<Value> below(vals.begin(), vals.end() - 1);
  for (unsigned m = 1; m < k; ++m) {
    for (Value y = 1; y < n; ++y) {
      // 1/y - m/n = (n - m*y) / (y*n)
      if (Natural(m) * y >= n) break;
      Emitter em{below, &collect, limits.max_solutions};
      em.extra_value = n;
      em.extra_mult = m;
      with_escalation(em, [&]<class Int>(Emitter& e) {
        Int num = Int(n) - arith::mul(Int(m), Int(y));
        Int den = arith::mul(Int(y), Int(n));
        const Int g = arith::gcd(num, den);
        num /= g;
        den /= g;
        UnitEngine<Int>(below, k - m, e).run_partial(y, num, den, k - m, static_cast<std::size_t>(y));
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool exists_mono_solution(const Equation& eq, std::span<const Value> S) {
  const std::vector<Value> vals = normalize_set(S);
  if (vals.empty()) return false;
  switch (eq.family()) {
    case Family::LinearSum:
      return exact_k_hits(vals, eq.k());
    case Family::UnitFraction:
      return unit_exists(vals, eq.k());
    case Family::FractionalPower: {
      std::vector<Value> roots = roots_of(vals, eq.ell());
      return unit_exists(roots, eq.k());
    }
  }
  return false;
}

std::vector<Hyperedge> supports_of(std::span<const SolutionInstance> solutions) {
  std::vector<Hyperedge> out;
  std::set<Hyperedge> seen;
  for (const auto& s : solutions) {
    Hyperedge e = s.support();
    if (seen.insert(e).second) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rado
