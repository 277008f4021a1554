#pragma once

#include <string>

#include <json.hpp>

#include "qdouble/characters.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

using nlohmann::json;

/// Version of every JSON document this library writes.
inline constexpr int kJsonFormat = 1;

json complex_to_json(const cd& z);
cd complex_from_json(const json& j);

/// {format, group, order, hash, class_sizes, reps, degrees, prime, chars}
json to_json(const CharacterTable& t);
/// Rebuilds a table over `classes`; throws ValidationError when the document
/// belongs to another group or is malformed.
CharacterTable character_table_from_json(const json& j, const ConjugacyPtr& classes);

json simples_to_json(const std::vector<DoubleSimple>& simples);
std::vector<DoubleSimple> simples_from_json(const json& j);

/// Fusion as nested integer arrays N[a][b][c].
json to_json(const FusionTensor& f);
FusionTensor fusion_from_json(const json& j);

/// Simples, S as rows of [re, im], T as a list of [re, im], convention and
/// normalization tags.
json to_json(const ModularData& md);
ModularData modular_from_json(const json& j);

/// Fixed-width hex of the multiplication-table hash.
std::string hash_hex(const GroupTable& g);

}  // namespace qdouble
