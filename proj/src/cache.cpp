#include "rado/cache.hpp"

#include "rado/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>
#include <tuple>

namespace rado {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json entry_to_json(const CacheEntry& e) {
  nlohmann::json j;
  j["family"] = std::string(family_name(e.family));
  j["r"] = e.r;
  j["k"] = e.k;
  j["value"] = e.value;
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < e.certificate_low.size(); ++i) {
    pairs.push_back({static_cast<Value>(i + 1), e.certificate_low[i]});
  }
  j["certificate_low"] = std::move(pairs);
  j["timestamp"] = e.timestamp;
  j["solver_version"] = e.solver_version;
  return j;
}

// Parses an entry. certificate_low pairs must list 1, 2, ... in order;
// anything else is left for reverify_entry to reject.
CacheEntry entry_from_json(const nlohmann::json& j, bool* well_formed) {
  CacheEntry e;
  e.family = parse_family(j.at("family").get<std::string>());
  e.r = j.at("r").get<unsigned>();
  e.k = j.at("k").get<unsigned>();
  e.value = j.at("value").get<Value>();
  e.timestamp = j.value("timestamp", "");
  e.solver_version = j.value("solver_version", "");
  *well_formed = true;
  Value expect = 1;
  for (const auto& pair : j.at("certificate_low")) {
    const Value v = pair.at(0).get<Value>();
    if (v != expect++) *well_formed = false;
    e.certificate_low.push_back(pair.at(1).get<unsigned>());
  }
  return e;
}

auto sort_key(const CacheEntry& e) { return std::make_tuple(family_name(e.family), e.r, e.k); }

}  // namespace

std::string cache_key(Family family, unsigned r, unsigned k) {
  return std::string(family_name(family)) + "/r=" + std::to_string(r) + "/k=" + std::to_string(k);
}

CacheEntry make_cache_entry(const RadoResult& result) {
  CacheEntry e;
  e.family = result.equation.family();
  e.r = result.r;
  e.k = result.equation.k();
  e.value = result.value;
  e.certificate_low = result.certificate_low.colors();
  e.timestamp = utc_timestamp();
  e.solver_version = std::string(kSolverVersion);
  return e;
}

bool reverify_entry(const CacheEntry& entry) {
  try {
    if (entry.value < 2 || entry.certificate_low.size() != entry.value - 1) return false;
    std::vector<Value> domain(entry.value - 1);
    std::iota(domain.begin(), domain.end(), Value{1});
    const Coloring low(std::move(domain), entry.certificate_low, entry.r);
    const Equation eq(entry.family, entry.k);
    return !verify_no_mono(eq, low).has_value();
  } catch (const Error&) {
    return false;
  }
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  nlohmann::json doc;
  try {
    in >> doc;
    const auto entries = doc.value("entries", nlohmann::json::object());
    const auto quarantine = doc.value("quarantine", nlohmann::json::object());
    for (const auto& [key, j] : entries.items()) {
      bool ok = false;
      CacheEntry e = entry_from_json(j, &ok);
      if (ok) {
        entries_.emplace_back(key, std::move(e));
      } else {
        quarantine_.push_back({key, {std::move(e), "certificate_low is not a coloring of [1, value-1]"}});
      }
    }
    for (const auto& [key, j] : quarantine.items()) {
      bool ok = false;
      CacheEntry e = entry_from_json(j, &ok);
      quarantine_.push_back({key, {std::move(e), j.value("reason", "")}});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed cache file " + path_.string() + ": " + e.what());
  }
}

std::optional<CacheEntry> ResultCache::lookup(Family family, unsigned r, unsigned k, std::string* note) {
  const std::string key = cache_key(family, r, k);
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& p) { return p.first == key; });
  if (it == entries_.end()) return std::nullopt;
  if (reverify_entry(it->second)) return it->second;
  if (note) *note = "cached entry " + key + " failed re-verification and was quarantined";
  quarantine_.push_back({key, {it->second, "failed re-verification"}});
  entries_.erase(it);
  save();
  return std::nullopt;
}

bool ResultCache::append(const CacheEntry& entry) {
  const std::string key = cache_key(entry.family, entry.r, entry.k);
  if (std::any_of(entries_.begin(), entries_.end(), [&](const auto& p) { return p.first == key; })) return false;
  entries_.emplace_back(key, entry);
  save();
  return true;
}

std::vector<CacheEntry> ResultCache::entries() const {
  std::vector<CacheEntry> out;
  for (const auto& [key, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
  return out;
}

void ResultCache::save() const {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::object();
  doc["quarantine"] = nlohmann::json::object();
  for (const auto& [key, e] : entries_) doc["entries"][key] = entry_to_json(e);
  for (const auto& [key, q] : quarantine_) {
    auto j = entry_to_json(q.first);
    j["reason"] = q.second;
    doc["quarantine"][key] = std::move(j);
  }
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::filesystem::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << doc.dump(2) << '\n';
    if (!out) throw Error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace rado
