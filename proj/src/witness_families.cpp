#include "rado/witness_families.hpp"

#include "rado/errors.hpp"

#include <algorithm>
#include <map>

namespace rado {

std::string_view witness_family_name(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::Base:
      return "lemma31";
    case WitnessFamily::Even:
      return "lemma33";
    case WitnessFamily::Chi:
      return "chi";
    case WitnessFamily::Interval:
      return "interval";
  }
  return "?";
}

WitnessFamily parse_witness_family(std::string_view name) {
  if (name == "lemma31") return WitnessFamily::Base;
  if (name == "lemma33") return WitnessFamily::Even;
  if (name == "chi") return WitnessFamily::Chi;
  if (name == "interval") return WitnessFamily::Interval;
  throw DomainError("unknown witness family '" + std::string(name) + "'");
}

namespace {

Value narrow(const Natural& n) {
  auto v = to_value(n);
  if (!v || *v == 0) throw DomainError("witness expression does not fit in 64 bits");
  return *v;
}

std::vector<LabeledValue> base_expressions(Value kv) {
  if (kv < 4) throw DomainError("lemma31 set requires k >= 4");
  const Natural k = kv;
  return {
      {"1", 1},
      {"2", 2},
      {"3", 3},
      {"k+1", narrow(k + 1)},
      {"k+2", narrow(k + 2)},
      {"2(k+1)", narrow(2 * (k + 1))},
      {"2(k+2)", narrow(2 * (k + 2))},
      {"3k", narrow(3 * k)},
      {"k(k+1)", narrow(k * (k + 1))},
      {"k(k+2)", narrow(k * (k + 2))},
      {"2k(k+1)", narrow(2 * k * (k + 1))},
      {"2k(k+2)", narrow(2 * k * (k + 2))},
  };
}

std::vector<LabeledValue> even_expressions(Value kv) {
  if (kv < 4 || kv % 2 != 0) throw DomainError("lemma33 set requires an even k >= 4");
  const Natural k = kv;
  return {
      {"1", 1},
      {"2", 2},
      {"3", 3},
      {"k+1", narrow(k + 1)},
      {"k+2", narrow(k + 2)},
      {"2k", narrow(2 * k)},
      {"2(k+1)", narrow(2 * (k + 1))},
      {"2(k+2)", narrow(2 * (k + 2))},
      {"k(k+1)", narrow(k * (k + 1))},
      {"k(k+2)", narrow(k * (k + 2))},
      {"2k(k+1)", narrow(2 * k * (k + 1))},
      {"2k(k+2)", narrow(2 * k * (k + 2))},
  };
}

std::vector<LabeledValue> chi_expressions(Value kv) {
  if (kv < 3) throw DomainError("chi set requires k >= 3");
  const Natural k = kv;
  const Natural k2 = k * k;
  const Natural k3 = k2 * k;
  return {
      {"1", 1},
      {"2", 2},
      {"k", narrow(k)},
      {"k+1", narrow(k + 1)},
      {"k+2", narrow(k + 2)},
      {"2k", narrow(2 * k)},
      {"k^2-k+1", narrow(k2 - k + 1)},
      {"k^2-1", narrow(k2 - 1)},
      {"k^2", narrow(k2)},
      {"k^2+1", narrow(k2 + 1)},
      {"k^2+k-1", narrow(k2 + k - 1)},
      {"k^2+k", narrow(k2 + k)},
      {"k^2+k+1", narrow(k2 + k + 1)},
      {"2k^2-2k+1", narrow(2 * k2 - 2 * k + 1)},
      {"2k^2-k", narrow(2 * k2 - k)},
      {"2k^2-k+1", narrow(2 * k2 - k + 1)},
      {"2k^2-1", narrow(2 * k2 - 1)},
      {"2k^2+k-2", narrow(2 * k2 + k - 2)},
      {"3k^2-2k", narrow(3 * k2 - 2 * k)},
      {"3k^2-k-1", narrow(3 * k2 - k - 1)},
      {"3k^2-2", narrow(3 * k2 - 2)},
      {"k^3", narrow(k3)},
      {"k^3+1", narrow(k3 + 1)},
      {"k^3+k-1", narrow(k3 + k - 1)},
      {"k^3+k", narrow(k3 + k)},
      {"k^3+k^2-k", narrow(k3 + k2 - k)},
      {"k^3+k^2-1", narrow(k3 + k2 - 1)},
      {"k^3+k^2+k-2", narrow(k3 + k2 + k - 2)},
      {"k^3+2k^2-k-1", narrow(k3 + 2 * k2 - k - 1)},
      {"k^3+2k^2-2", narrow(k3 + 2 * k2 - 2)},
  };
}

}  // namespace

std::vector<LabeledValue> family_expressions(const FamilySpec& spec) {
  switch (spec.family) {
    case WitnessFamily::Base:
      return base_expressions(spec.param);
    case WitnessFamily::Even:
      return even_expressions(spec.param);
    case WitnessFamily::Chi:
      return chi_expressions(spec.param);
    case WitnessFamily::Interval: {
      if (spec.param < 1) throw DomainError("interval requires n >= 1");
      std::vector<LabeledValue> out;
      out.reserve(spec.param);
      for (Value v = 1; v <= spec.param; ++v) out.push_back({std::to_string(v), v});
      return out;
    }
  }
  return {};
}

std::vector<Value> family_set(const FamilySpec& spec) {
  std::vector<Value> out;
  for (const auto& e : family_expressions(spec)) out.push_back(e.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Value> base_witness_set(Value k) { return family_set({WitnessFamily::Base, k}); }
std::vector<Value> even_witness_set(Value k) { return family_set({WitnessFamily::Even, k}); }
std::vector<Value> chi_set(Value k) { return family_set({WitnessFamily::Chi, k}); }
std::vector<Value> interval_set(Value n) { return family_set({WitnessFamily::Interval, n}); }

std::vector<std::vector<LabeledValue>> collisions(const FamilySpec& spec) {
  std::map<Value, std::vector<LabeledValue>> groups;
  for (auto& e : family_expressions(spec)) groups[e.value].push_back(std::move(e));
  std::vector<std::vector<LabeledValue>> out;
  for (auto& [v, g] : groups) {
    if (g.size() > 1) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Value> dual_set(std::span<const Value> A) {
  std::vector<Value> vals(A.begin(), A.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.empty()) throw DomainError("dual set of an empty set");
  const Natural L = lcm_of(vals);
  if (!to_value(L)) throw DomainError("lcm exceeds 64 bits; dual set not representable");
  std::vector<Value> out;
  out.reserve(vals.size());
  for (auto it = vals.rbegin(); it != vals.rend(); ++it) out.push_back(static_cast<Value>(L / *it));
  return out;
}

}  // namespace rado
