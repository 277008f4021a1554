#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "QDOUBLE_CACHE_DIR";

struct CachedDouble {
  QuantumDoublePtr qd;
  /// True when the tables came from a valid cache entry.
  bool hit = false;
};

/// Entry file for a group: <dir>/<table hash>-v<format>.json. A format bump
/// changes the name, so old entries are never read.
std::filesystem::path cache_entry_path(const std::filesystem::path& dir, const GroupTable& g);

/// The group and centralizer character tables of g as one JSON document.
nlohmann::json cache_entry(const QuantumDouble& qd);
/// Throws ValidationError when the entry does not belong to g.
QuantumDoublePtr quantum_double_from_entry(const GroupPtr& g, const nlohmann::json& entry);

/// Reuses the cached tables when the entry parses and matches g; otherwise
/// computes them and writes the entry through a temporary file and a rename.
/// No directory means compute only. Corrupt entries and unwritable
/// directories produce a line on `warn` and never an error.
CachedDouble cached_quantum_double(const GroupPtr& g, const std::optional<std::filesystem::path>& dir, std::ostream& warn);

/// Directory from the environment variable, if set and nonempty.
std::optional<std::filesystem::path> default_cache_dir();

}  // namespace qdouble
