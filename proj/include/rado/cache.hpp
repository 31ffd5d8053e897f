#pragma once

#include "rado/equations.hpp"
#include "rado/exact.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rado {

inline constexpr std::string_view kSolverVersion = "rado-solver 1.0.0";

struct CacheEntry {
  Family family = Family::UnitFraction;
  unsigned r = 2;
  unsigned k = 2;
  Value value = 0;
  /// Colors of 1, 2, ..., value-1.
  std::vector<unsigned> certificate_low;
  std::string timestamp;
  std::string solver_version;
};

CacheEntry make_cache_entry(const RadoResult& result);

/// Key text used in the cache file, e.g. "unit-fraction/r=2/k=3".
std::string cache_key(Family family, unsigned r, unsigned k);

/// Checks the stored low certificate: it must color exactly [1, value-1]
/// with colors < r and contain no monochromatic solution.
bool reverify_entry(const CacheEntry& entry);

/// Persistent JSON store of computed Rado numbers.
///
/// File layout:
///   {"entries":    {"<key>": {family, r, k, value, certificate_low: [[v, c], ...],
///                             timestamp, solver_version}, ...},
///    "quarantine": {"<key>": {..., "reason": "..."}, ...}}
///
/// Entries are never overwritten. An entry that fails re-verification on
/// lookup is moved to the quarantine section. Writes go to a temporary file
/// that is then renamed over the original.
class ResultCache {
 public:
  /// Loads path if it exists. Throws Error on a malformed file.
  explicit ResultCache(std::filesystem::path path);

  /// Re-verified entry for the key, or nullopt. A failed re-check
  /// quarantines the entry, persists that, and sets *note.
  std::optional<CacheEntry> lookup(Family family, unsigned r, unsigned k, std::string* note = nullptr);

  /// Adds an entry unless its key is already present. Returns whether it was added.
  bool append(const CacheEntry& entry);

  /// Stored entries in key order, without re-verification.
  std::vector<CacheEntry> entries() const;
  std::size_t quarantined() const { return quarantine_.size(); }

  const std::filesystem::path& path() const { return path_; }

 private:
  void save() const;

  std::filesystem::path path_;
  std::vector<std::pair<std::string, CacheEntry>> entries_;
  std::vector<std::pair<std::string, std::pair<CacheEntry, std::string>>> quarantine_;
};

}  // namespace rado
