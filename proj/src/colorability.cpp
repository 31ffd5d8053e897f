#include "rado/colorability.hpp"

#include "rado/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace rado {

Coloring::Coloring(std::vector<Value> domain, std::vector<unsigned> colors, unsigned r) : r_(r) {
  if (domain.size() != colors.size()) throw DomainError("coloring: domain and colors differ in size");
  std::vector<std::size_t> order(domain.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  domain_.reserve(domain.size());
  colors_.reserve(domain.size());
  for (std::size_t i : order) {
    if (!domain_.empty() && domain_.back() == domain[i]) throw DomainError("coloring: duplicate domain value");
    if (colors[i] >= r) throw DomainError("coloring: color index out of range");
    domain_.push_back(domain[i]);
    colors_.push_back(colors[i]);
  }
}

std::optional<unsigned> Coloring::color_of(Value v) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), v);
  if (it == domain_.end() || *it != v) return std::nullopt;
  return colors_[static_cast<std::size_t>(it - domain_.begin())];
}

std::vector<std::vector<Value>> Coloring::classes() const {
  std::vector<std::vector<Value>> out(r_);
  for (std::size_t i = 0; i < domain_.size(); ++i) out[colors_[i]].push_back(domain_[i]);
  return out;
}

std::string to_string(const Coloring& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) os << ", ";
    os << c.domain()[i] << "->" << c.colors()[i];
  }
  os << '}';
  return os.str();
}

bool is_monochromatic(const Coloring& c, const Hyperedge& e) {
  if (e.empty()) return false;
  auto first = c.color_of(e.front());
  if (!first) return false;
  for (Value v : e) {
    auto col = c.color_of(v);
    if (!col || *col != *first) return false;
  }
  return true;
}

std::optional<Hyperedge> first_monochromatic_edge(const Coloring& c, std::span<const Hyperedge> edges) {
  for (const auto& e : edges) {
    if (is_monochromatic(c, e)) return e;
  }
  return std::nullopt;
}

namespace {

struct HyperedgeHash {
  std::size_t operator()(const Hyperedge& e) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (Value v : e) h = (h ^ std::hash<Value>{}(v)) * 0x100000001b3ull;
    return h;
  }
};

bool is_subset(const Hyperedge& small, const Hyperedge& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Hyperedge> reduce_subsumed(std::span<const Hyperedge> edges) {
  std::vector<Hyperedge> sorted;
  sorted.reserve(edges.size());
  for (const auto& e : edges) {
    Hyperedge s = e;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sorted.push_back(std::move(s));
  }
  // Visit by size so every potential subset is seen before its supersets.
  std::vector<std::size_t> by_size(sorted.size());
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return sorted[a].size() < sorted[b].size(); });

  std::unordered_set<Hyperedge, HyperedgeHash> kept_set;
  std::vector<char> keep(sorted.size(), 0);
  constexpr std::size_t kEnumerateLimit = 16;

  for (std::size_t idx : by_size) {
    const Hyperedge& e = sorted[idx];
    if (kept_set.contains(e)) continue;
    bool subsumed = false;
    if (e.size() <= kEnumerateLimit) {
      const std::uint32_t full = (std::uint32_t{1} << e.size()) - 1;
      Hyperedge sub;
      for (std::uint32_t mask = 1; mask < full && !subsumed; ++mask) {
        sub.clear();
        for (std::size_t b = 0; b < e.size(); ++b) {
          if (mask >> b & 1u) sub.push_back(e[b]);
        }
        subsumed = kept_set.contains(sub);
      }
    } else {
      for (const Hyperedge& k : kept_set) {
        if (k.size() < e.size() && is_subset(k, e)) {
          subsumed = true;
          break;
        }
      }
    }
    if (subsumed) continue;
    keep[idx] = 1;
    kept_set.insert(e);
  }
  std::vector<Hyperedge> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (keep[i]) out.push_back(std::move(sorted[i]));
  }
  return out;
}

namespace {

struct Problem {
  std::vector<Value> domain;                  // input order
  std::vector<std::vector<std::size_t>> edges;  // positions
  std::vector<std::vector<std::size_t>> incidence;
  std::vector<std::size_t> order;  // static variable order
  unsigned r = 0;
};

std::unordered_map<Value, std::size_t> index_domain(std::span<const Value> domain) {
  std::unordered_map<Value, std::size_t> pos;
  pos.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!pos.emplace(domain[i], i).second) throw DomainError("domain contains a duplicate value");
  }
  return pos;
}

std::vector<std::size_t> edge_positions(const Hyperedge& e, const std::unordered_map<Value, std::size_t>& pos) {
  std::vector<std::size_t> out;
  out.reserve(e.size());
  for (Value v : e) {
    auto it = pos.find(v);
    if (it == pos.end()) throw EdgeOutsideDomain("edge value " + std::to_string(v) + " is not in the domain");
    out.push_back(it->second);
  }
  return out;
}

using Decision = std::pair<std::size_t, unsigned>;

class Solver {
 public:
  Solver(const Problem& p, const SearchOptions& opt, std::atomic<bool>* stop)
      : p_(p), opt_(opt), stop_(stop) {
    const std::size_t n = p.domain.size();
    color_.assign(n, kNone);
    dom_.assign(n, p.r >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.r) - 1);
    cnt_.assign(p.edges.size() * p.r, 0);
    unassigned_.resize(p.edges.size());
    for (std::size_t e = 0; e < p.edges.size(); ++e) unassigned_[e] = static_cast<unsigned>(p.edges[e].size());
    used_.assign(p.r, 0);
  }

  /// Replays decisions; false if they conflict.
  bool replay(std::span<const Decision> decisions) {
    for (const auto& [v, c] : decisions) {
      if (color_[v] != kNone) {
        if (color_[v] != c) return false;
        continue;
      }
      if (!(dom_[v] >> c & 1u)) return false;
      if (!assign(v, c) || !propagate()) return false;
    }
    return true;
  }

  /// Depth-first search; true iff a full coloring was found. When
  /// split_depth is set, decision sequences reaching that depth are stored in
  /// prefixes instead of being explored.
  bool search(std::size_t depth = 0) {
    if (aborted_) return false;
    if (++nodes_ % 1024 == 0 && over_budget()) {
      aborted_ = true;
      return false;
    }
    const std::size_t v = next_unassigned();
    if (v == kNoVar) return true;
    if (split_depth_ && depth == *split_depth_) {
      prefixes_.push_back(decisions_);
      return false;
    }
    const std::uint64_t allowed = dom_[v] & symmetry_mask();
    for (unsigned c = 0; c < p_.r; ++c) {
      if (!(allowed >> c & 1u)) continue;
      const std::size_t a_mark = stack_.size();
      const std::size_t t_mark = trail_.size();
      decisions_.emplace_back(v, c);
      if (assign(v, c) && propagate() && search(depth + 1)) return true;
      decisions_.pop_back();
      undo(a_mark, t_mark);
      if (aborted_) return false;
    }
    return false;
  }

  std::vector<unsigned> colors() const {
    std::vector<unsigned> out(color_.begin(), color_.end());
    return out;
  }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }
  void set_split_depth(std::size_t d) { split_depth_ = d; }
  std::vector<std::vector<Decision>>& prefixes() { return prefixes_; }

 private:
  static constexpr unsigned kNone = ~0u;
  static constexpr std::size_t kNoVar = ~std::size_t{0};

  bool over_budget() const {
    if (stop_ && stop_->load(std::memory_order_relaxed)) return true;
    if (opt_.node_cap != 0 && nodes_ >= opt_.node_cap) return true;
    if (opt_.deadline && std::chrono::steady_clock::now() > *opt_.deadline) return true;
    return false;
  }

  std::size_t next_unassigned() {
    // Static order; forced assignments may have skipped ahead.
    for (std::size_t i = 0; i < p_.order.size(); ++i) {
      if (color_[p_.order[i]] == kNone) return p_.order[i];
    }
    return kNoVar;
  }

  // Colors already in use plus the smallest unused one; unused colors are
  // interchangeable at this point of the search.
  std::uint64_t symmetry_mask() const {
    std::uint64_t m = 0;
    for (unsigned c = 0; c < p_.r; ++c) {
      if (used_[c] != 0) {
        m |= std::uint64_t{1} << c;
      } else {
        m |= std::uint64_t{1} << c;
        break;
      }
    }
    return m;
  }

  bool assign(std::size_t v, unsigned c) {
    color_[v] = c;
    stack_.push_back(v);
    ++used_[c];
    bool ok = true;
    const std::uint64_t bit = std::uint64_t{1} << c;
    for (std::size_t e : p_.incidence[v]) {
      const unsigned size = static_cast<unsigned>(p_.edges[e].size());
      const unsigned same = ++cnt_[e * p_.r + c];
      const unsigned left = --unassigned_[e];
      if (same == size) ok = false;
      if (left == 1 && same == size - 1) {
        for (std::size_t u : p_.edges[e]) {
          if (color_[u] != kNone) continue;
          if (dom_[u] & bit) {
            trail_.emplace_back(u, dom_[u]);
            dom_[u] &= ~bit;
            if (dom_[u] == 0) {
              ok = false;
            } else if (p_.r == 2) {
              queue_.push_back(u);
            }
          }
          break;
        }
      }
    }
    return ok;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t u = queue_.back();
      queue_.pop_back();
      if (color_[u] != kNone) continue;
      if (!assign(u, static_cast<unsigned>(std::countr_zero(dom_[u])))) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t a_mark, std::size_t t_mark) {
    queue_.clear();
    while (stack_.size() > a_mark) {
      const std::size_t v = stack_.back();
      stack_.pop_back();
      const unsigned c = color_[v];
      for (std::size_t e : p_.incidence[v]) {
        --cnt_[e * p_.r + c];
        ++unassigned_[e];
      }
      --used_[c];
      color_[v] = kNone;
    }
    while (trail_.size() > t_mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  const Problem& p_;
  const SearchOptions& opt_;
  std::atomic<bool>* stop_;
  std::vector<unsigned> color_;
  std::vector<std::uint64_t> dom_;
  std::vector<unsigned> cnt_;
  std::vector<unsigned> unassigned_;
  std::vector<unsigned> used_;
  std::vector<std::size_t> stack_;
  std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
  std::vector<std::size_t> queue_;
  std::vector<Decision> decisions_;
  std::optional<std::size_t> split_depth_;
  std::vector<std::vector<Decision>> prefixes_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

SearchResult finish(SearchResult res, const Problem& p, const std::vector<unsigned>* colors,
                    std::chrono::steady_clock::time_point start) {
  if (colors) {
    res.status = SearchStatus::Colorable;
    res.coloring = Coloring(p.domain, *colors, p.r);
  }
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

SearchResult parallel_search(const Problem& p, const SearchOptions& options,
                             std::chrono::steady_clock::time_point start, SearchResult res) {
  const unsigned threads = options.threads;
  // Split on the first decisions until there is enough work to share.
  std::vector<std::vector<Decision>> prefixes;
  for (std::size_t depth = 1; depth <= p.domain.size(); ++depth) {
    Solver splitter(p, options, nullptr);
    splitter.set_split_depth(depth);
    if (splitter.search()) {
      const auto colors = splitter.colors();
      res.stats.nodes += splitter.nodes();
      return finish(res, p, &colors, start);
    }
    res.stats.nodes += splitter.nodes();
    if (splitter.aborted()) return finish(res, p, nullptr, start);
    prefixes = std::move(splitter.prefixes());
    if (prefixes.empty()) {
      res.status = SearchStatus::NotColorable;
      return finish(res, p, nullptr, start);
    }
    if (prefixes.size() >= 4 * threads) break;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> found{false};
  std::atomic<bool> aborted{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;
  std::optional<std::vector<unsigned>> solution;
  std::size_t solution_prefix = prefixes.size();

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= prefixes.size() || found.load()) return;
      Solver s(p, options, &found);
      bool ok = s.replay(prefixes[i]) && s.search();
      nodes += s.nodes();
      if (ok) {
        std::lock_guard lock(mu);
        if (i < solution_prefix) {
          solution_prefix = i;
          solution = s.colors();
        }
        found = true;
        return;
      }
      if (s.aborted() && !found.load()) {
        aborted = true;
        found = true;  // stop the others
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();

  res.stats.nodes += nodes.load();
  if (solution) return finish(res, p, &*solution, start);
  if (!aborted.load()) res.status = SearchStatus::NotColorable;
  return finish(res, p, nullptr, start);
}

}  // namespace

SearchResult find_coloring(std::span<const Hyperedge> edges, std::span<const Value> domain, unsigned r,
                           const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (r < 1) throw DomainError("color count r must be at least 1");
  if (r > 64) throw DomainError("color count r must be at most 64");
  if (options.threads < 1) throw DomainError("threads must be at least 1");
  const auto pos = index_domain(domain);
  for (const auto& e : edges) (void)edge_positions(e, pos);

  Problem p;
  p.domain.assign(domain.begin(), domain.end());
  p.r = r;
  const std::vector<Hyperedge> reduced = reduce_subsumed(edges);

  SearchResult res;
  res.stats.edges = reduced.size();
  for (const auto& e : reduced) {
    if (e.size() <= 1) {
      res.status = SearchStatus::NotColorable;
      return finish(res, p, nullptr, start);
    }
  }

  p.incidence.resize(domain.size());
  for (const auto& e : reduced) {
    p.edges.push_back(edge_positions(e, pos));
    for (std::size_t v : p.edges.back()) p.incidence[v].push_back(p.edges.size() - 1);
  }
  p.order.resize(domain.size());
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) {
    if (p.incidence[a].size() != p.incidence[b].size()) return p.incidence[a].size() > p.incidence[b].size();
    return p.domain[a] < p.domain[b];
  });

  if (options.threads > 1 && domain.size() > 1) return parallel_search(p, options, start, res);

  Solver s(p, options, nullptr);
  const bool ok = s.search();
  res.stats.nodes = s.nodes();
  if (ok) {
    const auto colors = s.colors();
    return finish(res, p, &colors, start);
  }
  if (!s.aborted()) res.status = SearchStatus::NotColorable;
  return finish(res, p, nullptr, start);
}

WitnessVerdict is_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                          const SearchOptions& options) {
  const std::vector<Value> vals = normalize_set(A);
  const auto solutions = enumerate_solutions_in_set(eq, vals);
  const auto edges = supports_of(solutions);
  const SearchResult res = find_coloring(edges, vals, r, options);
  WitnessVerdict v;
  v.stats = res.stats;
  switch (res.status) {
    case SearchStatus::NotColorable:
      v.outcome = Outcome::IsWitness;
      break;
    case SearchStatus::Colorable:
      v.outcome = Outcome::NotWitness;
      v.counterexample = res.coloring;
      break;
    case SearchStatus::Unknown:
      throw BudgetExceeded("coloring search stopped before a verdict");
  }
  return v;
}

WitnessVerdict brute_force_is_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                                      std::uint64_t cap) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Value> vals = normalize_set(A);
  if (vals.empty()) throw DomainError("set must be nonempty");
  if (r < 1) throw DomainError("color count r must be at least 1");
  const std::size_t n = vals.size();
  {
    Natural total = pow_natural(r, static_cast<unsigned>(n));
    if (total > cap) {
      throw CapExceeded(std::to_string(r) + "^" + std::to_string(n) + " colorings exceed cap " +
                        std::to_string(cap));
    }
  }
  // Memoize the class oracle by subset mask.
  const bool memo = n <= 24;
  std::vector<signed char> cache(memo ? std::size_t{1} << n : 0, -1);
  std::uint64_t hits = 0;
  auto class_has_solution = [&](std::uint32_t mask, const std::vector<Value>& members) {
    if (members.empty()) return false;
    if (memo && cache[mask] >= 0) return cache[mask] == 1;
    const bool has = exists_mono_solution(eq, members);
    if (memo) cache[mask] = has ? 1 : 0;
    return has;
  };

  WitnessVerdict verdict;
  std::vector<unsigned> digits(n, 0);
  std::vector<std::vector<Value>> classes(r);
  std::vector<std::uint32_t> masks(r);
  std::uint64_t examined = 0;
  for (;;) {
    ++examined;
    for (auto& c : classes) c.clear();
    std::fill(masks.begin(), masks.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      classes[digits[i]].push_back(vals[i]);
      if (memo) masks[digits[i]] |= std::uint32_t{1} << i;
    }
    bool any = false;
    for (unsigned c = 0; c < r && !any; ++c) {
      if (class_has_solution(masks[c], classes[c])) {
        any = true;
        ++hits;
      }
    }
    if (!any) {
      verdict.outcome = Outcome::NotWitness;
      verdict.counterexample = Coloring(vals, digits, r);
      break;
    }
    // Next assignment; position 0 stays at color 0.
    std::size_t i = 1;
    while (i < n && ++digits[i] == r) digits[i++] = 0;
    if (i >= n) {
      verdict.outcome = Outcome::IsWitness;
      break;
    }
  }
  verdict.stats.nodes = examined;
  verdict.stats.edges = hits;
  verdict.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return verdict;
}

std::string export_cnf(std::span<const Hyperedge> edges, std::span<const Value> domain, unsigned r) {
  if (r < 1) throw DomainError("color count r must be at least 1");
  const auto pos = index_domain(domain);
  std::vector<std::vector<std::size_t>> mapped;
  mapped.reserve(edges.size());
  for (const auto& e : edges) mapped.push_back(edge_positions(e, pos));

  const std::size_t n = domain.size();
  const std::size_t vars = n * r;
  const std::size_t clauses = n + n * (static_cast<std::size_t>(r) * (r - 1) / 2) + edges.size() * r;
  auto var = [r](std::size_t i, unsigned c) { return i * r + c + 1; };

  std::ostringstream os;
  os << "p cnf " << vars << ' ' << clauses << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned c = 0; c < r; ++c) os << var(i, c) << ' ';
    os << "0\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned c = 0; c < r; ++c) {
      for (unsigned d = c + 1; d < r; ++d) os << '-' << var(i, c) << " -" << var(i, d) << " 0\n";
    }
  }
  for (const auto& e : mapped) {
    for (unsigned c = 0; c < r; ++c) {
      for (std::size_t i : e) os << '-' << var(i, c) << ' ';
      os << "0\n";
    }
  }
  return os.str();
}

}  // namespace rado
