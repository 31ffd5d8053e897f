#include "rado/exact.hpp"

#include "rado/errors.hpp"

#include <numeric>

namespace rado {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Value> iota_values(Value n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  return v;
}

// Colors of [1, n] indexed by value - 1.
bool extends_cleanly(const std::vector<unsigned>& colors, std::span<const Hyperedge> new_edges) {
  for (const auto& e : new_edges) {
    const unsigned c = colors[e.front() - 1];
    bool mono = true;
    for (Value v : e) {
      if (colors[v - 1] != c) {
        mono = false;
        break;
      }
    }
    if (mono) return false;
  }
  return true;
}

}  // namespace

RadoOutcome rado_number(const Equation& eq, unsigned r, const RadoOptions& options) {
  if (eq.family() == Family::FractionalPower) {
    throw DomainError("Rado numbers are computed for the linear and unit-fraction equations only");
  }
  if (r < 2) throw DomainError("color count r must be at least 2");
  if (eq.family() == Family::LinearSum && eq.k() > options.max_linear_k) {
    throw DomainError("interval search for the linear equation is limited to k <= " +
                      std::to_string(options.max_linear_k) + "; use witness verification instead");
  }
  const auto start = Clock::now();
  const auto deadline = start + options.budget;
  const EnumerationLimits limits{64, options.max_solutions};

  std::vector<Hyperedge> edges;
  std::vector<unsigned> colors;  // valid coloring of [1, n-1]
  std::vector<LevelStats> stats;

  auto exhausted = [&](Value best, std::optional<Value> undecided, std::string reason) {
    Exhausted ex;
    ex.equation = eq;
    ex.r = r;
    ex.best_colorable_n = best;
    ex.undecided_n = undecided;
    ex.best = Coloring(iota_values(best), colors, r);
    ex.reason = std::move(reason);
    ex.stats = std::move(stats);
    return ex;
  };

  for (Value n = 1;; ++n) {
    if (n > options.max_n) return exhausted(n - 1, std::nullopt, "max_n reached");
    if (Clock::now() > deadline) return exhausted(n - 1, n, "time budget exhausted");
    const auto level_start = Clock::now();
    LevelStats level;
    level.n = n;

    std::vector<Hyperedge> fresh;
    try {
      fresh = supports_of(solutions_with_max(eq, n, limits));
    } catch (const BudgetExceeded&) {
      return exhausted(n - 1, n, "solution enumeration cap reached");
    }
    level.new_solutions = fresh.size();
    edges.insert(edges.end(), fresh.begin(), fresh.end());

    bool extended = false;
    colors.push_back(0);
    for (unsigned c = 0; c < r && !extended; ++c) {
      colors.back() = c;
      extended = extends_cleanly(colors, fresh);
    }
    if (extended) {
      level.warm_start = true;
    } else {
      SearchOptions so;
      so.threads = options.threads;
      so.deadline = deadline;
      const auto domain = iota_values(n);
      const SearchResult res = find_coloring(edges, domain, r, so);
      level.nodes = res.stats.nodes;
      if (res.status == SearchStatus::Unknown) {
        colors.pop_back();
        level.seconds = std::chrono::duration<double>(Clock::now() - level_start).count();
        stats.push_back(level);
        return exhausted(n - 1, n, "time budget exhausted during search");
      }
      if (res.status == SearchStatus::NotColorable) {
        colors.pop_back();
        level.seconds = std::chrono::duration<double>(Clock::now() - level_start).count();
        stats.push_back(level);
        RadoResult out;
        out.equation = eq;
        out.r = r;
        out.value = n;
        out.certificate_low = Coloring(iota_values(n - 1), colors, r);
        out.stats = std::move(stats);
        return out;
      }
      colors = res.coloring->colors();
    }
    level.seconds = std::chrono::duration<double>(Clock::now() - level_start).count();
    stats.push_back(level);
  }
}

std::vector<Hyperedge> interval_hypergraph(const Equation& eq, Value n, const EnumerationLimits& limits) {
  return supports_of(enumerate_solutions_in_interval(eq, n, limits));
}

Coloring lower_bound_coloring(unsigned k, unsigned r, Value domain_cap) {
  if (k < 2 || r < 2) throw DomainError("block coloring requires k >= 2 and r >= 2");
  const Natural top = pow_natural(k, r) - 1;
  if (top > domain_cap) {
    throw DomainError("block coloring domain [1, " + to_decimal(top) + "] exceeds cap " +
                      std::to_string(domain_cap));
  }
  const Value n = static_cast<Value>(top);
  std::vector<Value> domain = iota_values(n);
  std::vector<unsigned> colors(n);
  unsigned color = 0;
  Value next_block = k;
  for (Value x = 1; x <= n; ++x) {
    if (x == next_block) {
      ++color;
      next_block *= k;
    }
    colors[x - 1] = color;
  }
  return Coloring(std::move(domain), std::move(colors), r);
}

std::optional<SolutionInstance> verify_no_mono(const Equation& eq, const Coloring& coloring,
                                               const EnumerationLimits& limits) {
  std::optional<SolutionInstance> best;
  for (const auto& cls : coloring.classes()) {
    if (cls.empty()) continue;
    for_each_solution_within(eq, cls, [&](const SolutionInstance& s) {
      if (!best || s < *best) best = s;
      return false;  // the first one is the least in this class
    }, limits);
  }
  return best;
}

bool verify_rado_result(const RadoResult& result, const SearchOptions& options) {
  const Coloring& low = result.certificate_low;
  if (result.value < 1 || low.size() != result.value - 1) return false;
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (low.domain()[i] != i + 1) return false;
  }
  if (verify_no_mono(result.equation, low)) return false;
  const auto edges = interval_hypergraph(result.equation, result.value);
  const auto res = find_coloring(edges, iota_values(result.value), result.r, options);
  return res.status == SearchStatus::NotColorable;
}

}  // namespace rado
