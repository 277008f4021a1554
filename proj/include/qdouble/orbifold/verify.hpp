#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdouble/group.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// One named check. A thrown error becomes a failed entry with the message as
/// detail; nothing here records wall time, so reports are reproducible.
struct CheckEntry {
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json data = nlohmann::json::object();
};

struct VerifyOptions {
  /// Bound for identities that pass through lifted character values.
  double tolerance = 1e-8;
  /// Adds a restriction check for this normal subgroup, expected singular
  /// unless it is all of G.
  std::optional<Subgroup> subgroup;
  /// Group-core checks only (characters, census, fusion, modular data).
  bool orbifold = true;
};

struct VerifyReport {
  std::string group;
  int order = 0;
  std::vector<CheckEntry> checks;

  bool passed() const;
  const CheckEntry* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Runs every check on one group in a fixed order.
VerifyReport verify_group(const QuantumDoublePtr& qd, const VerifyOptions& opts = {});

}  // namespace qdouble
