#include "rado/cli.hpp"

#include "rado/cache.hpp"
#include "rado/colorability.hpp"
#include "rado/exact.hpp"
#include "rado/reduce.hpp"
#include "rado/witness_families.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace rado::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string output = "text";
  unsigned threads = 1;
  double budget = 60.0;
  std::string cache_path = ".rado_cache.json";
};

struct SetSource {
  std::string set;
  std::string family;
  std::optional<Value> n;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Report format")
      ->check(CLI::IsMember({"text", "json", "tsv"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads for the coloring search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--budget", c.budget, "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--cache-path", c.cache_path, "Result cache file (RADO_CACHE overrides)")
      ->capture_default_str();
}

void add_set_source(CLI::App* sub, SetSource& s) {
  auto* set = sub->add_option("--set", s.set, "Explicit set, e.g. \"1,2,3\"");
  auto* fam = sub->add_option("--family", s.family, "Witness family")
                  ->check(CLI::IsMember({"lemma31", "lemma33", "chi", "interval"}));
  set->excludes(fam);
  sub->add_option("--n", s.n, "Right endpoint for --family interval");
}

std::vector<Value> parse_set(const std::string& text) {
  std::vector<Value> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("--set: empty element");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw DomainError("--set: '" + tok + "' is not a positive integer");
    }
    if (used != tok.size() || v == 0 || tok[0] == '-') {
      throw DomainError("--set: '" + tok + "' is not a positive integer");
    }
    out.push_back(static_cast<Value>(v));
  }
  if (out.empty()) throw DomainError("--set: empty set");
  return out;
}

std::vector<Value> resolve_set(const SetSource& s, std::optional<unsigned> k) {
  if (!s.set.empty()) return normalize_set(parse_set(s.set));
  if (s.family.empty()) throw DomainError("one of --set or --family is required");
  const WitnessFamily fam = parse_witness_family(s.family);
  if (fam == WitnessFamily::Interval) {
    if (!s.n) throw DomainError("--family interval requires --n");
    return family_set({fam, *s.n});
  }
  if (!k) throw DomainError("--family " + s.family + " requires --k");
  return family_set({fam, *k});
}

std::string set_text(std::span<const Value> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string rado_symbol(Family fam, unsigned r, unsigned k) {
  const char* letter = fam == Family::LinearSum ? "R" : "f";
  return std::string(letter) + "_" + std::to_string(r) + "(" + std::to_string(k) + ")";
}

std::string cache_path_for(const Common& c) {
  if (const char* env = std::getenv("RADO_CACHE"); env != nullptr && *env != '\0') return env;
  return c.cache_path;
}

// Known closed-form bounds for the report table; "-" where none applies.
std::pair<std::string, std::string> table_bounds(Family fam, unsigned r, unsigned k) {
  if (fam != Family::UnitFraction) return {"-", "-"};
  const std::string low = to_decimal(closed_form_bound(k, BoundVariant::LowerKR, r));
  std::string high = "-";
  if (r == 2) {
    Natural h = closed_form_bound(k, BoundVariant::New6);
    if (k >= 4 && (k % 2 == 0 || k % 3 != 0)) h = closed_form_bound(k, BoundVariant::Special2);
    high = to_decimal(h);
  } else if (r == 3 && k >= 3) {
    high = to_decimal(closed_form_bound(k, BoundVariant::ChiProduct));
  }
  return {low, high};
}

const char* kTsvHeader = "family\tr\tk\tvalue\tbound_low\tbound_high\n";

std::string tsv_row(Family fam, unsigned r, unsigned k, const std::string& value) {
  const auto [low, high] = table_bounds(fam, r, k);
  return std::string(family_name(fam)) + '\t' + std::to_string(r) + '\t' + std::to_string(k) + '\t' + value +
         '\t' + low + '\t' + high + '\n';
}

nlohmann::json coloring_pairs(const Coloring& c) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) pairs.push_back({c.domain()[i], c.colors()[i]});
  return pairs;
}

int cmd_compute(const Common& common, const std::string& eq_name, unsigned r, unsigned k,
                std::optional<Value> max_n, bool long_mode, bool no_cache, bool budget_given,
                std::ostream& out, std::ostream& err) {
  const Equation eq(parse_family(eq_name), k);
  if (eq.family() == Family::FractionalPower) throw DomainError("compute supports linear and unit-fraction");
  RadoOptions opt;
  opt.threads = common.threads;
  opt.max_n = max_n.value_or(long_mode ? 100'000 : 1000);
  const double budget = (long_mode && !budget_given) ? 86'400.0 : common.budget;
  opt.budget = std::chrono::milliseconds(static_cast<std::int64_t>(budget * 1000.0));

  std::optional<ResultCache> cache;
  if (!no_cache) cache.emplace(cache_path_for(common));

  std::optional<CacheEntry> entry;
  std::string source = "computed";
  if (cache) {
    std::string note;
    entry = cache->lookup(eq.family(), r, k, &note);
    if (!note.empty()) err << "warning: " << note << '\n';
    if (entry) source = "cache";
  }
  if (!entry) {
    const RadoOutcome outcome = rado_number(eq, r, opt);
    if (const auto* ex = std::get_if<Exhausted>(&outcome)) {
      const std::string sym = rado_symbol(eq.family(), r, k);
      if (common.output == "json") {
        nlohmann::json j;
        j["equation"] = std::string(family_name(eq.family()));
        j["r"] = r;
        j["k"] = k;
        j["status"] = "exhausted";
        j["best_colorable_n"] = ex->best_colorable_n;
        j["reason"] = ex->reason;
        if (ex->undecided_n) j["undecided_n"] = *ex->undecided_n;
        out << j.dump(2) << '\n';
      } else if (common.output == "tsv") {
        out << kTsvHeader << tsv_row(eq.family(), r, k, "-");
      } else {
        out << sym << ": undecided (" << ex->reason << "); [1," << ex->best_colorable_n
            << "] has a valid coloring, so " << sym << " > " << ex->best_colorable_n << '\n';
      }
      return kNegative;
    }
    const auto& result = std::get<RadoResult>(outcome);
    if (verify_no_mono(eq, result.certificate_low)) {
      err << "error: computed certificate failed re-verification\n";
      return kNegative;
    }
    entry = make_cache_entry(result);
    if (cache) cache->append(*entry);
  }

  const std::string sym = rado_symbol(eq.family(), r, k);
  if (common.output == "json") {
    nlohmann::json j;
    j["equation"] = std::string(family_name(eq.family()));
    j["k"] = k;
    j["ell"] = 1;
    j["r"] = r;
    j["value"] = entry->value;
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < entry->certificate_low.size(); ++i) pairs.push_back({i + 1, entry->certificate_low[i]});
    j["certificate_low"] = std::move(pairs);
    j["claim"] = sym + " = " + std::to_string(entry->value);
    j["source"] = source;
    j["verifier_version"] = std::string(kVerifierVersion);
    out << j.dump(2) << '\n';
  } else if (common.output == "tsv") {
    out << kTsvHeader << tsv_row(eq.family(), r, k, std::to_string(entry->value));
  } else {
    out << sym << " = " << entry->value << '\n';
    out << "certificate: coloring of [1," << entry->value - 1 << "] with no monochromatic solution (re-verified)\n";
    out << "source: " << source << '\n';
  }
  return kOk;
}

int cmd_verify_witness(const Common& common, const SetSource& src, const std::string& eq_name, unsigned r,
                       std::optional<unsigned> k, const std::string& method, std::ostream& out) {
  if (!k) throw DomainError("--k (term count) is required");
  const auto A = resolve_set(src, k);
  const Equation eq(parse_family(eq_name), *k);
  WitnessVerdict v;
  if (method == "brute") {
    v = brute_force_is_witness(eq, A, r);
  } else {
    SearchOptions so;
    so.threads = common.threads;
    so.deadline = Clock::now() + std::chrono::milliseconds(static_cast<std::int64_t>(common.budget * 1000.0));
    v = is_witness(eq, A, r, so);
  }
  const Natural L = lcm_of(A);
  const bool yes = v.outcome == Outcome::IsWitness;
  if (common.output == "json") {
    nlohmann::json j;
    j["equation"] = std::string(family_name(eq.family()));
    j["k"] = *k;
    j["ell"] = eq.ell();
    j["r"] = r;
    j["witness"] = A;
    j["lcm"] = to_decimal(L);
    j["outcome"] = yes ? "IsWitness" : "NotWitness";
    if (!yes) j["counterexample"] = coloring_pairs(*v.counterexample);
    j["verifier_version"] = std::string(kVerifierVersion);
    out << j.dump(2) << '\n';
  } else if (common.output == "tsv") {
    out << "outcome\tsize\tlcm\tset\n"
        << (yes ? "IsWitness" : "NotWitness") << '\t' << A.size() << '\t' << to_decimal(L) << '\t' << set_text(A)
        << '\n';
  } else {
    if (yes) {
      out << "IsWitness (" << A.size() << " values, lcm=" << to_decimal(L) << ")\n";
    } else {
      out << "NotWitness (" << A.size() << " values, lcm=" << to_decimal(L) << "); counterexample "
          << to_string(*v.counterexample) << '\n';
    }
    if (!src.family.empty() && src.family != "interval") {
      const auto fam = parse_witness_family(src.family);
      for (const auto& group : collisions({fam, *k})) {
        out << "note: expressions";
        for (const auto& e : group) out << ' ' << e.label;
        out << " all evaluate to " << group.front().value << '\n';
      }
    }
  }
  return yes ? kOk : kNegative;
}

int cmd_bound(const Common& common, const SetSource& src, unsigned r, std::optional<unsigned> k, unsigned lift,
              std::ostream& out, std::ostream& err) {
  if (!k) throw DomainError("--k (term count) is required");
  const auto A = resolve_set(src, k);
  SearchOptions so;
  so.threads = common.threads;
  so.deadline = Clock::now() + std::chrono::milliseconds(static_cast<std::int64_t>(common.budget * 1000.0));
  BoundCertificate cert;
  try {
    cert = power_lift_bound(upper_bound_from_witness(Equation::linear(*k), A, r, so), lift);
  } catch (const NotAWitness& e) {
    err << "NotWitness: " << e.what() << '\n';
    return kNegative;
  }
  if (common.output == "json") {
    out << certificate_to_json(cert).dump(2) << '\n';
  } else if (common.output == "tsv") {
    out << "claim\tlcm\tell\tbound\twitness\n"
        << cert.claim() << '\t' << to_decimal(cert.lcm) << '\t' << cert.ell << '\t' << to_decimal(cert.bound())
        << '\t' << set_text(cert.witness) << '\n';
  } else {
    out << cert.claim() << '\n';
    out << "witness: {" << set_text(cert.witness) << "} (" << cert.witness.size()
        << " values, every " << r << "-coloring has a monochromatic solution to x_1+...+x_" << *k << "=y)\n";
    out << "lcm: " << to_decimal(cert.lcm) << '\n';
  }
  return kOk;
}

int cmd_lower_bound(const Common& common, unsigned k, unsigned r, bool verify, std::ostream& out) {
  const Coloring c = lower_bound_coloring(k, r);
  const Value top = c.size();
  const std::string bound = to_decimal(closed_form_bound(k, BoundVariant::LowerKR, r));
  const std::string sym = rado_symbol(Family::UnitFraction, r, k);
  std::optional<SolutionInstance> bad;
  if (verify) bad = verify_no_mono(Equation::unit_fraction(k), c);
  if (common.output == "json") {
    nlohmann::json j;
    j["k"] = k;
    j["r"] = r;
    j["domain_max"] = top;
    j["coloring"] = coloring_pairs(c);
    j["verified"] = verify ? nlohmann::json(!bad) : nlohmann::json(nullptr);
    if (bad) j["counterexample"] = to_string(*bad);
    j["claim"] = sym + " ≥ " + bound;
    out << j.dump(2) << '\n';
  } else if (common.output == "tsv") {
    out << "value\tcolor\n";
    for (std::size_t i = 0; i < c.size(); ++i) out << c.domain()[i] << '\t' << c.colors()[i] << '\n';
  } else if (!verify) {
    out << "block coloring of [1," << top << "] (not verified); " << sym << " ≥ " << bound << '\n';
  } else if (bad) {
    out << "coloring of [1," << top << "] INVALID: monochromatic solution " << to_string(*bad) << '\n';
  } else {
    out << "coloring of [1," << top << "] valid; " << sym << " ≥ " << bound << '\n';
  }
  return bad ? kNegative : kOk;
}

int cmd_export_cnf(const SetSource& src, const std::string& eq_name, unsigned r, std::optional<unsigned> k,
                   const std::string& path, std::ostream& out) {
  if (!k) throw DomainError("--k (term count) is required");
  const auto A = resolve_set(src, k);
  const Equation eq(parse_family(eq_name), *k);
  const auto edges = supports_of(enumerate_solutions_in_set(eq, A));
  const std::string cnf = export_cnf(edges, A, r);
  if (path.empty() || path == "-") {
    out << cnf;
    return kOk;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << cnf;
  out << "wrote " << cnf.substr(0, cnf.find('\n')) << " to " << path << '\n';
  return kOk;
}

int cmd_report(const Common& common, std::ostream& out) {
  ResultCache cache(cache_path_for(common));
  const auto entries = cache.entries();
  if (common.output == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : entries) {
      const auto [low, high] = table_bounds(e.family, e.r, e.k);
      rows.push_back({{"family", std::string(family_name(e.family))},
                      {"r", e.r},
                      {"k", e.k},
                      {"value", e.value},
                      {"bound_low", low},
                      {"bound_high", high}});
    }
    out << rows.dump(2) << '\n';
    return kOk;
  }
  out << kTsvHeader;
  for (const auto& e : entries) out << tsv_row(e.family, e.r, e.k, std::to_string(e.value));
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rado numbers for x_1+...+x_k=y and 1/x_1+...+1/x_k=1/y", "rado"};
  app.require_subcommand(1);

  Common common;
  SetSource src;
  std::string eq_name = "linear";
  unsigned r = 2;
  std::optional<unsigned> k;
  std::optional<Value> max_n;
  bool long_mode = false;
  bool no_cache = false;
  bool verify = false;
  unsigned lift = 1;
  std::string method = "search";
  std::string out_path;
  unsigned lb_k = 0;

  auto* compute = app.add_subcommand("compute", "Compute an exact Rado number by interval search");
  add_common(compute, common);
  compute->add_option("--eq", eq_name, "Equation family")
      ->check(CLI::IsMember({"linear", "unit-fraction"}))
      ->required();
  compute->add_option("--r", r, "Number of colors")->required();
  compute->add_option("--k", k, "Number of x terms")->required();
  compute->add_option("--max-n", max_n, "Give up above this n");
  compute->add_flag("--long", long_mode, "Raise the default n cap and budget for long runs (e.g. f_3(2))");
  compute->add_flag("--no-cache", no_cache, "Neither read nor write the result cache");

  auto* verify_witness = app.add_subcommand("verify-witness", "Decide whether every r-coloring of a set has a monochromatic solution");
  add_common(verify_witness, common);
  add_set_source(verify_witness, src);
  verify_witness->add_option("--eq", eq_name, "Equation family")
      ->check(CLI::IsMember({"linear", "unit-fraction"}))
      ->capture_default_str();
  verify_witness->add_option("--r", r, "Number of colors")->capture_default_str();
  verify_witness->add_option("--k", k, "Number of x terms (also the family parameter)");
  verify_witness->add_option("--method", method, "search or brute")
      ->check(CLI::IsMember({"search", "brute"}))
      ->capture_default_str();

  auto* bound = app.add_subcommand("bound", "Upper bound on f_r(k) from a linear witness set");
  add_common(bound, common);
  add_set_source(bound, src);
  bound->add_option("--r", r, "Number of colors")->capture_default_str();
  bound->add_option("--k", k, "Number of x terms (also the family parameter)");
  bound->add_option("--lift", lift, "Lift to fractional powers with this exponent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* lower = app.add_subcommand("lower-bound", "Block coloring showing f_r(k) >= k^r");
  add_common(lower, common);
  lower->add_option("--k", lb_k, "Number of x terms")->required()->check(CLI::Range(2u, 1u << 30));
  lower->add_option("--r", r, "Number of colors")->capture_default_str();
  lower->add_flag("--verify", verify, "Check the coloring has no monochromatic solution");

  auto* cnf = app.add_subcommand("export-cnf", "Write the coloring problem as DIMACS CNF");
  add_common(cnf, common);
  add_set_source(cnf, src);
  cnf->add_option("--eq", eq_name, "Equation family")
      ->check(CLI::IsMember({"linear", "unit-fraction"}))
      ->capture_default_str();
  cnf->add_option("--r", r, "Number of colors")->capture_default_str();
  cnf->add_option("--k", k, "Number of x terms (also the family parameter)");
  cnf->add_option("-o,--out", out_path, "Output file (default: standard output)");

  auto* report = app.add_subcommand("report", "Tabulate the result cache");
  add_common(report, common);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("rado");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) {
      const bool budget_given = compute->count("--budget") > 0;
      return cmd_compute(common, eq_name, r, *k, max_n, long_mode, no_cache, budget_given, out, err);
    }
    if (*verify_witness) return cmd_verify_witness(common, src, eq_name, r, k, method, out);
    if (*bound) return cmd_bound(common, src, r, k, lift, out, err);
    if (*lower) return cmd_lower_bound(common, lb_k, r, verify, out);
    if (*cnf) return cmd_export_cnf(src, eq_name, r, k, out_path, out);
    if (*report) return cmd_report(common, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rado::cli
