#include "qdouble/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "qdouble/characters.hpp"
#include "qdouble/errors.hpp"
#include "qdouble/serialize.hpp"

namespace qdouble {

namespace fs = std::filesystem;

namespace {

GroupPtr centralizer_group(const GroupTable& g, const ConjugacyData& cc, int c) {
  return std::make_shared<const GroupTable>(subgroup_table(g, cc.centralizers[c], g.label() + "/Z" + std::to_string(c)));
}

}  // namespace

fs::path cache_entry_path(const fs::path& dir, const GroupTable& g) {
  return dir / (hash_hex(g) + "-v" + std::to_string(kJsonFormat) + ".json");
}

json cache_entry(const QuantumDouble& qd) {
  json cent = json::array();
  for (int c = 0; c < qd.classes().count(); ++c) cent.push_back(to_json(qd.centralizer_table(c)));
  return {{"format", kJsonFormat}, {"hash", hash_hex(qd.group())}, {"group_table", to_json(qd.group_table())}, {"centralizer_tables", cent}};
}

QuantumDoublePtr quantum_double_from_entry(const GroupPtr& g, const json& entry) {
  if (!entry.is_object() || entry.value("format", -1) != kJsonFormat || entry.value("hash", "") != hash_hex(*g))
    throw ValidationError("cache entry has the wrong format or key");
  const ConjugacyPtr classes = conjugacy_classes(g);
  CharacterTable table = character_table_from_json(entry.at("group_table"), classes);
  const json& cent = entry.at("centralizer_tables");
  if (!cent.is_array() || static_cast<int>(cent.size()) != classes->count())
    throw ValidationError("cache entry has the wrong number of centralizer tables");
  std::vector<CharacterTable> tables;
  for (int c = 0; c < classes->count(); ++c)
    tables.push_back(character_table_from_json(cent[c], conjugacy_classes(centralizer_group(*g, *classes, c))));
  return std::make_shared<const QuantumDouble>(std::move(table), std::move(tables));
}

CachedDouble cached_quantum_double(const GroupPtr& g, const std::optional<fs::path>& dir, std::ostream& warn) {
  if (!dir) return {make_quantum_double(g), false};
  const fs::path file = cache_entry_path(*dir, *g);
  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      std::ifstream in(file);
      return {quantum_double_from_entry(g, json::parse(in)), true};
    } catch (const std::exception& e) {
      warn << "warning: ignoring corrupt cache entry " << file.string() << ": " << e.what() << "\n";
    }
  }
  QuantumDoublePtr qd = make_quantum_double(g);
  fs::create_directories(*dir, ec);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << cache_entry(*qd).dump() << "\n";
    if (!out) {
      warn << "warning: cache directory " << dir->string() << " is not writable; continuing without cache\n";
      fs::remove(tmp, ec);
      return {qd, false};
    }
  }
  fs::rename(tmp, file, ec);
  if (ec) {
    warn << "warning: could not store cache entry " << file.string() << ": " << ec.message() << "\n";
    fs::remove(tmp, ec);
  }
  return {qd, false};
}

std::optional<fs::path> default_cache_dir() {
  const char* v = std::getenv(kCacheDirEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return fs::path(v);
}

}  // namespace qdouble
