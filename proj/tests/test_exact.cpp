#include "oracles.hpp"

#include "rado/cache.hpp"
#include "rado/errors.hpp"
#include "rado/exact.hpp"
#include "rado/reduce.hpp"
#include "rado/witness_families.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

using namespace rado;

namespace {

std::vector<Value> iota_set(Value n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  return v;
}

RadoResult solve(const Equation& eq, unsigned r, unsigned threads = 1) {
  RadoOptions opts;
  opts.threads = threads;
  auto out = rado_number(eq, r, opts);
  REQUIRE(std::holds_alternative<RadoResult>(out));
  return std::get<RadoResult>(out);
}

// First monochromatic solution by listing every solution in the interval.
std::optional<SolutionInstance> first_mono_by_listing(const Equation& eq, const Coloring& c) {
  for (const auto& s : oracle::brute_solutions(eq.family(), eq.k(), c.domain())) {
    if (is_monochromatic(c, s.support())) return s;
  }
  return std::nullopt;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("rado_test_" + std::to_string(std::random_device{}()) + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("unit-fraction Rado numbers for two colors") {
  const std::pair<unsigned, Value> expected[] = {{2, 60}, {3, 40}, {4, 48}, {5, 80}};
  for (auto [k, value] : expected) {
    const auto res = solve(Equation::unit_fraction(k), 2);
    CHECK(res.value == value);
    CHECK(res.certificate_low.size() == value - 1);
    CHECK_FALSE(verify_no_mono(Equation::unit_fraction(k), res.certificate_low).has_value());
    CHECK(verify_rado_result(res));
  }
}

TEST_CASE("linear Rado numbers") {
  for (unsigned k = 2; k <= 5; ++k) CHECK(solve(Equation::linear(k), 2).value == k * k + k - 1);
  const auto r33 = solve(Equation::linear(3), 3);
  CHECK(r33.value == 43);
  CHECK(verify_rado_result(r33));
  // k = 2 with three colors also matches k^3 + 2k^2 - 2.
  CHECK(solve(Equation::linear(2), 3).value == 14);
}

TEST_CASE("the number does not depend on the thread count") {
  CHECK(solve(Equation::unit_fraction(3), 2, 3).value == 40);
  CHECK(solve(Equation::linear(3), 3, 2).value == 43);
}

TEST_CASE("rado_number limits") {
  RadoOptions opts;
  opts.max_n = 30;
  const auto out = rado_number(Equation::unit_fraction(2), 2, opts);
  REQUIRE(std::holds_alternative<Exhausted>(out));
  const auto& ex = std::get<Exhausted>(out);
  CHECK(ex.best_colorable_n == 30);
  CHECK(ex.best.size() == 30);
  CHECK_FALSE(verify_no_mono(Equation::unit_fraction(2), ex.best).has_value());

  CHECK_THROWS_AS(rado_number(Equation::linear(9), 2), DomainError);
  CHECK_THROWS_AS(rado_number(Equation::fractional_power(2, 2), 2), DomainError);
  CHECK_THROWS_AS(rado_number(Equation::linear(2), 1), DomainError);
}

TEST_CASE("lower_bound_coloring examples") {
  auto c = lower_bound_coloring(2, 2);
  CHECK(c.domain() == iota_set(3));
  CHECK(c.colors() == std::vector<unsigned>{0, 1, 1});
  c = lower_bound_coloring(3, 2);
  CHECK(c.colors() == std::vector<unsigned>{0, 0, 1, 1, 1, 1, 1, 1});
  c = lower_bound_coloring(2, 3);
  CHECK(c.colors() == std::vector<unsigned>{0, 1, 1, 2, 2, 2, 2});
  CHECK_THROWS_AS(lower_bound_coloring(10, 8, 1'000'000), DomainError);
  CHECK_THROWS_AS(lower_bound_coloring(1, 2), DomainError);
}

TEST_CASE("verify_no_mono examples") {
  const auto eq = Equation::unit_fraction(2);
  CHECK_FALSE(verify_no_mono(eq, lower_bound_coloring(2, 2)).has_value());
  const Coloring constant(iota_set(60), std::vector<unsigned>(60, 0), 2);
  const auto hit = verify_no_mono(eq, constant);
  REQUIRE(hit.has_value());
  CHECK(to_string(*hit) == "{2:2}->1");
  const auto res = solve(eq, 2);
  CHECK_FALSE(verify_no_mono(eq, res.certificate_low).has_value());
}

TEST_CASE("verify_no_mono matches listing every solution") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 2 + trial % 3;
    const unsigned r = 2 + trial % 2;
    const auto fam = trial % 2 ? Family::UnitFraction : Family::LinearSum;
    const Value n = 6 + trial % 20;
    std::uniform_int_distribution<unsigned> col(0, r - 1);
    std::vector<unsigned> colors(n);
    for (auto& c : colors) c = col(rng);
    const Coloring c(iota_set(n), colors, r);
    const Equation eq(fam, k);
    CHECK(verify_no_mono(eq, c) == first_mono_by_listing(eq, c));
  }
}

TEST_CASE("property: lower-bound colorings are valid for k^r <= 10^4") {
  int cases = 0;
  for (unsigned r = 2; r <= 13; ++r) {
    for (unsigned k = 2;; ++k) {
      if (closed_form_bound(k, BoundVariant::LowerKR, r) > 10'000) break;
      CHECK_FALSE(verify_no_mono(Equation::unit_fraction(k), lower_bound_coloring(k, r)).has_value());
      ++cases;
    }
  }
  CHECK(cases == 145);
}

TEST_CASE("property: UNSAT is monotone in n") {
  for (auto eq : {Equation::linear(2), Equation::unit_fraction(2)}) {
    const Value start = eq.family() == Family::LinearSum ? 5 : 60;
    for (Value n = start; n < start + 6; ++n) {
      const auto edges = interval_hypergraph(eq, n);
      CHECK(find_coloring(edges, iota_set(n), 2).status == SearchStatus::NotColorable);
    }
    const auto edges = interval_hypergraph(eq, start - 1);
    CHECK(find_coloring(edges, iota_set(start - 1), 2).status == SearchStatus::Colorable);
  }
}

TEST_CASE("property: sandwich between k^r and certificate bounds") {
  for (unsigned k = 2; k <= 5; ++k) {
    const auto v = solve(Equation::unit_fraction(k), 2).value;
    CHECK(closed_form_bound(k, BoundVariant::LowerKR, 2) <= v);
    CHECK(Natural(v) <= closed_form_bound(k, BoundVariant::New6));
    if (k >= 4) {
      CHECK(Natural(v) <= upper_bound_from_witness(Equation::linear(k), base_witness_set(k), 2).bound());
    }
  }
}

TEST_CASE("verify_rado_result rejects bad results") {
  auto res = solve(Equation::unit_fraction(3), 2);
  auto wrong = res;
  wrong.value = 39;  // certificate no longer covers [1, value-1]
  CHECK_FALSE(verify_rado_result(wrong));
  auto colors = res.certificate_low.colors();
  std::fill(colors.begin(), colors.end(), 0u);
  wrong = res;
  wrong.certificate_low = Coloring(res.certificate_low.domain(), colors, 2);
  CHECK_FALSE(verify_rado_result(wrong));
}

TEST_CASE("result cache append, lookup and quarantine") {
  TempDir dir;
  const auto path = dir.path / "cache.json";
  const auto res = solve(Equation::unit_fraction(3), 2);
  {
    ResultCache cache(path);
    CHECK_FALSE(cache.lookup(Family::UnitFraction, 2, 3).has_value());
    CHECK(cache.append(make_cache_entry(res)));
    CHECK_FALSE(cache.append(make_cache_entry(res)));
  }
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  {
    ResultCache cache(path);
    const auto hit = cache.lookup(Family::UnitFraction, 2, 3);
    REQUIRE(hit.has_value());
    CHECK(hit->value == 40);
    CHECK(hit->solver_version == kSolverVersion);
    CHECK(cache_key(Family::UnitFraction, 2, 3) == "unit-fraction/r=2/k=3");
  }
  // Corrupt the certificate on disk: the next lookup quarantines it.
  std::ifstream in(path);
  auto doc = nlohmann::json::parse(in);
  in.close();
  auto& cert = doc["entries"]["unit-fraction/r=2/k=3"]["certificate_low"];
  for (auto& pair : cert) pair[1] = 0;
  std::ofstream(path) << doc.dump();
  {
    ResultCache cache(path);
    std::string note;
    CHECK_FALSE(cache.lookup(Family::UnitFraction, 2, 3, &note).has_value());
    CHECK(note.find("quarantined") != std::string::npos);
    CHECK(cache.quarantined() == 1);
    CHECK(cache.entries().empty());
  }
  {
    ResultCache cache(path);
    CHECK(cache.quarantined() == 1);
    CHECK(cache.entries().empty());
    // The key is free again.
    CHECK(cache.append(make_cache_entry(res)));
  }
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(ResultCache{path}, Error);
}
