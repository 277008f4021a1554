#include "qdouble/serialize.hpp"

#include <cstdio>

#include "qdouble/errors.hpp"

namespace qdouble {

namespace {

void require_format(const json& j) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != kJsonFormat)
    throw ValidationError("document has a missing or unsupported format version");
}

}  // namespace

json complex_to_json(const cd& z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string hash_hex(const GroupTable& g) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(g.content_hash()));
  return buf;
}

json to_json(const CharacterTable& t) {
  const ConjugacyData& cc = *t.classes;
  json sizes = json::array(), rows = json::array();
  for (int c = 0; c < cc.count(); ++c) sizes.push_back(cc.class_size(c));
  for (int i = 0; i < t.count(); ++i) {
    json row = json::array();
    for (int c = 0; c < cc.count(); ++c) row.push_back(complex_to_json(t.chars(i, c)));
    rows.push_back(std::move(row));
  }
  return {{"format", kJsonFormat},     {"group", t.group().label()}, {"order", t.group().order()},
          {"hash", hash_hex(t.group())}, {"class_sizes", sizes},       {"reps", cc.reps},
          {"degrees", t.degrees},      {"prime", t.prime},           {"chars", rows}};
}

CharacterTable character_table_from_json(const json& j, const ConjugacyPtr& classes) {
  require_format(j);
  try {
    const ConjugacyData& cc = *classes;
    if (j.at("hash").get<std::string>() != hash_hex(*cc.group) || j.at("order").get<int>() != cc.group->order() ||
        j.at("reps").get<std::vector<Element>>() != cc.reps)
      throw ValidationError("character table belongs to a different group");
    CharacterTable t;
    t.classes = classes;
    t.degrees = j.at("degrees").get<std::vector<int>>();
    t.prime = j.at("prime").get<std::uint64_t>();
    const json& rows = j.at("chars");
    const auto k = static_cast<Eigen::Index>(cc.count());
    if (static_cast<Eigen::Index>(rows.size()) != k || static_cast<Eigen::Index>(t.degrees.size()) != k)
      throw ValidationError("character table is not square");
    t.chars.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != k) throw ValidationError("character table is not square");
      for (Eigen::Index c = 0; c < k; ++c) t.chars(i, c) = complex_from_json(rows[i][c]);
    }
    return t;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed character table: ") + e.what());
  }
}

json simples_to_json(const std::vector<DoubleSimple>& simples) {
  json out = json::array();
  for (const auto& s : simples)
    out.push_back({{"class_rep", s.class_rep}, {"class_index", s.class_index}, {"centralizer_char_index", s.pi}, {"dim", s.dim}});
  return out;
}

std::vector<DoubleSimple> simples_from_json(const json& j) {
  std::vector<DoubleSimple> out;
  try {
    for (const auto& s : j)
      out.push_back({s.at("class_rep").get<Element>(), s.at("class_index").get<int>(), s.at("centralizer_char_index").get<int>(),
                     s.at("dim").get<int>()});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed simple list: ") + e.what());
  }
  return out;
}

json to_json(const FusionTensor& f) {
  const int k = f.count();
  json n = json::array();
  for (int a = 0; a < k; ++a) {
    json row = json::array();
    for (int b = 0; b < k; ++b) {
      json col = json::array();
      for (int c = 0; c < k; ++c) col.push_back(f(a, b, c));
      row.push_back(std::move(col));
    }
    n.push_back(std::move(row));
  }
  return {{"format", kJsonFormat}, {"simples", simples_to_json(f.simples)}, {"fusion", n}};
}

FusionTensor fusion_from_json(const json& j) {
  require_format(j);
  FusionTensor f;
  f.simples = simples_from_json(j.at("simples"));
  const auto k = f.simples.size();
  try {
    const json& n = j.at("fusion");
    if (n.size() != k) throw ValidationError("fusion tensor has the wrong shape");
    for (const auto& row : n) {
      if (row.size() != k) throw ValidationError("fusion tensor has the wrong shape");
      for (const auto& col : row) {
        if (col.size() != k) throw ValidationError("fusion tensor has the wrong shape");
        for (const auto& v : col) f.n.push_back(v.get<int>());
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed fusion tensor: ") + e.what());
  }
  return f;
}

json to_json(const ModularData& md) {
  json s = json::array(), t = json::array();
  for (Eigen::Index i = 0; i < md.S.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < md.S.cols(); ++k) row.push_back(complex_to_json(md.S(i, k)));
    s.push_back(std::move(row));
  }
  for (Eigen::Index i = 0; i < md.T.size(); ++i) t.push_back(complex_to_json(md.T(i)));
  return {{"format", kJsonFormat}, {"simples", simples_to_json(md.simples)}, {"S", s}, {"T", t},
          {"convention", md.convention}, {"normalization", md.normalization}};
}

ModularData modular_from_json(const json& j) {
  require_format(j);
  ModularData md;
  md.simples = simples_from_json(j.at("simples"));
  const auto k = static_cast<Eigen::Index>(md.simples.size());
  try {
    const json& s = j.at("S");
    const json& t = j.at("T");
    if (static_cast<Eigen::Index>(s.size()) != k || static_cast<Eigen::Index>(t.size()) != k)
      throw ValidationError("modular data has the wrong shape");
    md.S.resize(k, k);
    md.T.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (static_cast<Eigen::Index>(s[i].size()) != k) throw ValidationError("modular data has the wrong shape");
      for (Eigen::Index c = 0; c < k; ++c) md.S(i, c) = complex_from_json(s[i][c]);
      md.T(i) = complex_from_json(t[i]);
    }
    md.convention = j.at("convention").get<std::string>();
    md.normalization = j.at("normalization").get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed modular data: ") + e.what());
  }
  return md;
}

}  // namespace qdouble
