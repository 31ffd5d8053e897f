// Acceptance suite: one PASS/FAIL line per criterion, with detail lines
// underneath. Exit status is nonzero if any criterion fails.
//
// Set RADO_ACCEPTANCE_LONG=1 to also run the three-color k=2 unit-fraction
// search, which takes hours.

#include "oracles.hpp"

#include "rado/cli.hpp"
#include "rado/colorability.hpp"
#include "rado/exact.hpp"
#include "rado/reduce.hpp"
#include "rado/witness_families.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace rado;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& title) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", title.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void detail(const std::string& line) { std::printf("    %s\n", line.c_str()); }

std::vector<Value> iota_set(Value n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  return v;
}

bool classes_solution_free(const Equation& eq, const Coloring& c) {
  for (const auto& cls : c.classes()) {
    if (!cls.empty() && !oracle::brute_solutions(eq.family(), eq.k(), cls).empty()) return false;
  }
  return true;
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

// ---------------------------------------------------------------------------

void exact_unit_fraction() {
  const std::pair<unsigned, Value> expected[] = {{2, 60}, {3, 40}, {4, 48}, {5, 39}};
  bool ok = true;
  std::vector<std::string> lines;
  for (auto [k, want] : expected) {
    const auto t0 = Clock::now();
    RadoOptions opts;
    opts.budget = std::chrono::seconds(60);
    const auto out = rado_number(Equation::unit_fraction(k), 2, opts);
    const double s = seconds_since(t0);
    if (!std::holds_alternative<RadoResult>(out)) {
      ok = false;
      lines.push_back("f_2(" + std::to_string(k) + "): search exhausted (" + std::get<Exhausted>(out).reason + ")");
      continue;
    }
    const auto& res = std::get<RadoResult>(out);
    const bool verified = verify_rado_result(res);
    const bool hit = res.value == want && verified && s < 60;
    ok = ok && hit;
    lines.push_back("f_2(" + std::to_string(k) + ") = " + std::to_string(res.value) + " expected " +
                    std::to_string(want) + ", certificate " + (verified ? "re-verified" : "FAILED re-check") +
                    ", " + fmt(s) + (hit ? "" : "  <-- mismatch"));
  }
  report(1, ok, "exact unit-fraction values f_2(2..5) = 60, 40, 48, 39 within 60 s each");
  for (const auto& l : lines) detail(l);
}

void exact_linear() {
  bool ok = true;
  std::vector<std::string> lines;
  auto one = [&](unsigned r, unsigned k, Value want) {
    const auto t0 = Clock::now();
    RadoOptions opts;
    opts.budget = std::chrono::minutes(10);
    const auto out = rado_number(Equation::linear(k), r, opts);
    const double s = seconds_since(t0);
    const std::string name = "R_" + std::to_string(r) + "(" + std::to_string(k) + ")";
    if (const auto* res = std::get_if<RadoResult>(&out)) {
      const bool verified = verify_rado_result(*res);
      const bool hit = res->value == want && verified && s < 600;
      ok = ok && hit;
      lines.push_back(name + " = " + std::to_string(res->value) + " expected " + std::to_string(want) + ", " +
                      (verified ? "re-verified" : "FAILED re-check") + ", " + fmt(s));
      return;
    }
    // Fallback: [1, want-1] colorable with a verified certificate, [1, want] not.
    const auto lo = find_coloring(interval_hypergraph(Equation::linear(k), want - 1), iota_set(want - 1), r);
    const bool lo_ok = lo.status == SearchStatus::Colorable &&
                       !verify_no_mono(Equation::linear(k), *lo.coloring).has_value();
    const auto hi = find_coloring(interval_hypergraph(Equation::linear(k), want), iota_set(want), r);
    const bool hit = lo_ok && hi.status == SearchStatus::NotColorable;
    ok = ok && hit;
    lines.push_back(name + ": budget hit, fallback check " + (hit ? "passed" : "failed"));
  };
  for (unsigned k = 2; k <= 5; ++k) one(2, k, k * k + k - 1);
  one(3, 3, 43);
  report(2, ok, "exact linear values R_2(2..5) = 5, 11, 19, 29 and R_3(3) = 43 within 10 min each");
  for (const auto& l : lines) detail(l);
}

void witness_verification() {
  bool ok = true;
  double worst_brute = 0;
  Value worst_k = 0;
  int brute_cases = 0;
  for (Value k = 4; k <= 64; ++k) {
    for (auto fam : {WitnessFamily::Base, WitnessFamily::Even}) {
      if (fam == WitnessFamily::Even && k % 2 != 0) continue;
      const auto A = family_set({fam, k});
      const auto t0 = Clock::now();
      const auto v = brute_force_is_witness(Equation::linear(static_cast<unsigned>(k)), A, 2);
      const double s = seconds_since(t0);
      ++brute_cases;
      if (v.outcome != Outcome::IsWitness || s >= 1.0) {
        ok = false;
        detail(std::string(witness_family_name(fam)) + " k=" + std::to_string(k) + " failed (" + fmt(s) + ")");
      }
      if (s > worst_brute) {
        worst_brute = s;
        worst_k = k;
      }
    }
  }
  std::vector<std::string> lines;
  lines.push_back(std::to_string(brute_cases) + " brute-force checks, slowest " + fmt(worst_brute) +
                  " at k=" + std::to_string(worst_k));
  for (unsigned k = 3; k <= 8; ++k) {
    const auto A = chi_set(k);
    const auto t0 = Clock::now();
    SearchOptions opts;
    opts.deadline = Clock::now() + std::chrono::seconds(60);
    bool hit = false;
    std::string status;
    try {
      const auto v = is_witness(Equation::linear(k), A, 3, opts);
      hit = v.outcome == Outcome::IsWitness;
      status = hit ? "IsWitness" : "NotWitness";
      status += ", " + std::to_string(v.stats.edges) + " edges, " + std::to_string(v.stats.nodes) + " nodes";
    } catch (const BudgetExceeded&) {
      status = "budget exceeded";
    }
    const double s = seconds_since(t0);
    hit = hit && s < 60;
    ok = ok && hit;
    lines.push_back("chi(" + std::to_string(k) + ") r=3: " + status + ", " + fmt(s));
  }
  report(3, ok, "witness sets: brute force for both 12-element families k <= 64 (< 1 s each), chi(3..8) (< 60 s each)");
  for (const auto& l : lines) detail(l);
}

Natural poly(Value k, Value a) { return Natural(a) * k * (k + 1) * (k + 2); }

void lcm_identities() {
  bool ok = true;
  std::vector<std::string> ratios;
  for (Value k = 4; k <= 200; ++k) {
    const Natural L = lcm_of_set(base_witness_set(k));
    if (poly(k, 6) % L != 0) {
      ok = false;
      detail("base-family lcm does not divide 6k(k+1)(k+2) at k=" + std::to_string(k));
    }
    if (k % 2 == 0 && lcm_of_set(even_witness_set(k)) != poly(k, 2)) {
      ok = false;
      detail("even-family lcm differs from 2k(k+1)(k+2) at k=" + std::to_string(k));
    }
    if (k % 2 == 1 && k % 3 == 0) {
      const Natural q = L / poly(k, 2);
      const bool exact = q * poly(k, 2) == L;
      ratios.push_back("k=" + std::to_string(k) + ":" + (exact ? to_decimal(q) : "?"));
    }
  }
  report(4, ok, "lcm(even family) = 2k(k+1)(k+2) for even k <= 200; lcm(base family) | 6k(k+1)(k+2) for k in [4,200]");
  std::string line = "lcm(base family) / 2k(k+1)(k+2) for odd k divisible by 3:";
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (i % 12 == 0) {
      detail(line);
      line = "  ";
    }
    line += " " + ratios[i];
  }
  detail(line);
}

void chi_bound() {
  bool ok = true;
  for (Value k = 3; k <= 50; ++k) {
    const Natural L = lcm_of_set(chi_set(k));
    const Natural B = closed_form_bound(static_cast<unsigned>(k), BoundVariant::ChiProduct);
    if (!(L <= B)) {
      ok = false;
      detail("k=" + std::to_string(k) + ": lcm " + to_decimal(L) + " exceeds " + to_decimal(B));
    }
  }
  report(5, ok, "lcm(chi(k)) <= 21-factor product for k in [3,50], exact");
  detail("k=50: lcm has " + std::to_string(to_decimal(lcm_of_set(chi_set(50))).size()) + " digits, bound has " +
         std::to_string(to_decimal(closed_form_bound(50, BoundVariant::ChiProduct)).size()));
}

void lower_bound_colorings() {
  bool ok = true;
  int cases = 0;
  const auto t0 = Clock::now();
  for (unsigned r = 2; r <= 13; ++r) {
    for (unsigned k = 2;; ++k) {
      if (closed_form_bound(k, BoundVariant::LowerKR, r) > 10'000) break;
      ++cases;
      if (verify_no_mono(Equation::unit_fraction(k), lower_bound_coloring(k, r)).has_value()) {
        ok = false;
        detail("block coloring fails at k=" + std::to_string(k) + " r=" + std::to_string(r));
      }
    }
  }
  const double s = seconds_since(t0);
  ok = ok && s < 300;
  report(6, ok, "block colorings of [1,k^r-1] have no monochromatic solution for all k^r <= 10^4, < 5 min total");
  detail(std::to_string(cases) + " (k,r) pairs in " + fmt(s));
}

void tightness_anchor() {
  const auto cert = upper_bound_from_witness(Equation::linear(2), iota_set(5), 2);
  report(7, cert.bound() == 60, "upper_bound_from_witness({1..5}, r=2, k=2) = 60 exactly");
  detail(cert.claim());
}

void oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  int disagreements = 0, bad_certs = 0, witnesses = 0;
  for (int i = 0; i < 100; ++i) {
    // Thirds: random sets, dilated intervals t*[1,m] (linear), and their
    // dual sets (unit fraction). The structured ones are often witnesses.
    const unsigned r = 2 + i % 2;
    unsigned k = 2 + static_cast<unsigned>(rng() % 5);
    Family fam = (i / 2) % 2 ? Family::UnitFraction : Family::LinearSum;
    std::vector<Value> A;
    if (i % 3 == 0) {
      A = oracle::random_set(rng, 3, 10, fam == Family::LinearSum ? 24 : 36);
    } else {
      if (rng() % 2) k = 2;
      const Value m = 4 + rng() % 7, t = 1 + rng() % 4;
      for (Value v = 1; v <= m; ++v) A.push_back(t * v);
      if (rng() % 3 == 0) A.erase(A.begin() + static_cast<long>(rng() % A.size()));
      fam = i % 3 == 1 ? Family::LinearSum : Family::UnitFraction;
      if (fam == Family::UnitFraction) A = dual_set(A);
    }
    const Equation eq(fam, k);
    const auto a = is_witness(eq, A, r);
    const auto b = brute_force_is_witness(eq, A, r);
    if (a.outcome != b.outcome) ++disagreements;
    for (const auto* v : {&a, &b}) {
      if (v->counterexample && !classes_solution_free(eq, *v->counterexample)) ++bad_certs;
    }
    witnesses += a.outcome == Outcome::IsWitness;
  }
  report(8, disagreements == 0 && bad_certs == 0,
         "is_witness agrees with brute force on 100 random instances; counterexamples re-verify");
  detail(std::to_string(disagreements) + " disagreements, " + std::to_string(bad_certs) +
         " invalid counterexamples, " + std::to_string(witnesses) + " witnesses among 100");
}

// Compact versions of the per-module property suites.
void property_suites() {
  bool ok = true;
  auto fail = [&](const std::string& what) {
    ok = false;
    detail("property failed: " + what);
  };

  // Dilation closure.
  for (unsigned k = 2; k <= 4; ++k) {
    for (auto fam : {Family::LinearSum, Family::UnitFraction}) {
      const Equation eq(fam, k);
      const auto base = enumerate_solutions_in_interval(eq, 12);
      for (Value t = 2; t <= 4; ++t) {
        const auto big = enumerate_solutions_in_interval(eq, 12 * t);
        const std::set<SolutionInstance, std::less<>> pool(big.begin(), big.end());
        for (const auto& s : base) {
          SolutionInstance m;
          for (auto [v, c] : s.counts) m.counts[v * t] = c;
          m.target = s.target * t;
          if (!pool.count(m)) fail("dilation closure");
        }
      }
    }
  }

  // L-transform bijection and DP oracle agreement.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const unsigned k = 2 + i % 11;
    const auto A = oracle::random_set(rng, 1, 12, 48);
    const auto L = to_value(lcm_of(A)).value();
    const auto unit = enumerate_solutions_in_set(Equation::unit_fraction(k), A);
    std::vector<SolutionInstance> mapped;
    for (const auto& s : unit) {
      SolutionInstance m;
      for (auto [v, c] : s.counts) m.counts[L / v] = c;
      m.target = L / s.target;
      mapped.push_back(m);
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != enumerate_solutions_in_set(Equation::linear(k), dual_set(A))) fail("L-transform bijection");
    for (auto fam : {Family::LinearSum, Family::UnitFraction}) {
      const Equation eq(fam, k);
      if (exists_mono_solution(eq, A) == enumerate_solutions_in_set(eq, A).empty()) fail("DP oracle agreement");
    }
  }

  // Monotonicity.
  for (Value n = 5; n <= 10; ++n) {
    auto B = iota_set(n);
    const auto extra = oracle::random_set(rng, 1, 5, 50);
    B.insert(B.end(), extra.begin(), extra.end());
    if (is_witness(Equation::linear(2), normalize_set(B), 2).outcome != Outcome::IsWitness) fail("monotonicity");
  }

  // CNF fidelity on <= 20 variables.
  for (int i = 0; i < 100; ++i) {
    const unsigned r = 2 + i % 2;
    const std::size_t n = r == 2 ? 3 + i % 8 : 3 + i % 4;
    std::vector<Hyperedge> edges;
    for (int e = 0; e < 2 + i % 12; ++e) {
      auto all = iota_set(n);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(2 + rng() % 2);
      std::sort(all.begin(), all.end());
      edges.push_back(all);
    }
    const auto dom = iota_set(n);
    const bool colorable = find_coloring(edges, dom, r).status == SearchStatus::Colorable;
    if (oracle::brute_sat(export_cnf(edges, dom, r)) != colorable) fail("CNF fidelity");
  }

  // Sandwich: k^r <= f_2(k) <= certificate bounds.
  for (unsigned k = 2; k <= 5; ++k) {
    const auto out = rado_number(Equation::unit_fraction(k), 2);
    const auto& res = std::get<RadoResult>(out);
    if (closed_form_bound(k, BoundVariant::LowerKR, 2) > res.value) fail("sandwich lower");
    if (Natural(res.value) > closed_form_bound(k, BoundVariant::New6)) fail("sandwich upper");
    if (k >= 4 && Natural(res.value) >
                      upper_bound_from_witness(Equation::linear(k), base_witness_set(k), 2).bound()) {
      fail("sandwich certificate");
    }
  }
  report(9, ok, "property suites (dilation, L-transform, monotonicity, CNF fidelity, sandwich)");
  detail("the full suites run as the unit-test binaries");
}

void long_running() {
  // The three-color k=2 value is opt-in. Check that a bounded run reports
  // progress instead of a number.
  std::ostringstream out, err;
  const std::vector<std::string> args{"compute", "--eq", "unit-fraction", "--r", "3", "--k", "2",
                                      "--max-n", "200", "--no-cache"};
  const int code = cli::run(args, out, err);
  bool ok = code == cli::kNegative && out.str().find("undecided") != std::string::npos;
  report(10, ok, "f_3(2) is opt-in (compute --long); a bounded run reports undecided, not a value");
  detail(out.str().substr(0, out.str().find('\n')));
  if (const char* env = std::getenv("RADO_ACCEPTANCE_LONG"); env && std::string(env) == "1") {
    RadoOptions opts;
    opts.max_n = 100'000;
    opts.budget = std::chrono::hours(24);
    const auto t0 = Clock::now();
    const auto res = rado_number(Equation::unit_fraction(2), 3, opts);
    if (const auto* r = std::get_if<RadoResult>(&res)) {
      detail("f_3(2) = " + std::to_string(r->value) + " in " + fmt(seconds_since(t0)));
    } else {
      detail("f_3(2): " + std::get<Exhausted>(res).reason);
    }
  }
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  exact_unit_fraction();
  exact_linear();
  witness_verification();
  lcm_identities();
  chi_bound();
  lower_bound_colorings();
  tightness_anchor();
  oracle_equivalence();
  property_suites();
  long_running();
  std::printf("%d criteria failed; total %s\n", failures, fmt(seconds_since(t0)).c_str());
  return failures == 0 ? 0 : 1;
}
