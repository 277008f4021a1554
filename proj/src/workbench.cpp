#include "qdouble/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>

#include <CLI11.hpp>

#include "qdouble/cache.hpp"
#include "qdouble/characters.hpp"
#include "qdouble/errors.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/orbifold/verify.hpp"
#include "qdouble/serialize.hpp"

namespace qdouble {

namespace {

struct RunConfig {
  std::string group_spec;
  std::string gens_file;
  std::string format = "text";
  std::string cache_dir;
  double tolerance = 1e-8;
  int max_order = kDefaultOrderCap;
  std::string double_part = "all";
  std::string subgroup;
};

/// 6-decimal rendering; values that round to zero print without a sign.
std::string fixed6(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string complex_text(const cd& z) {
  if (std::abs(z.imag()) < 5e-7) return fixed6(z.real());
  if (std::abs(z.real()) < 5e-7) return fixed6(z.imag()) + "i";
  const std::string im = fixed6(z.imag());
  return fixed6(z.real()) + (im[0] == '-' ? im : "+" + im) + "i";
}

/// Right-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      line += std::string(width[c] - r[c].size(), ' ') + r[c];
    }
    out << line << "\n";
  }
}

GroupPtr load_group(const RunConfig& cfg) {
  if (cfg.group_spec.empty() == cfg.gens_file.empty()) throw ParseError("exactly one of --group and --gens is required");
  if (!cfg.group_spec.empty()) return std::make_shared<const GroupTable>(named_group(cfg.group_spec, cfg.max_order));
  std::ifstream in(cfg.gens_file);
  if (!in) throw ParseError("cannot read generator file '" + cfg.gens_file + "'");
  return std::make_shared<const GroupTable>(read_generator_file(in, cfg.max_order, "gens"));
}

std::string simple_label(const DoubleSimple& s) {
  return "(" + std::to_string(s.class_rep) + "," + std::to_string(s.pi) + ")";
}

/// index:K, order:N, or a group name ("A3" is read as A:3) matched against
/// the normal subgroups by order and element-order profile.
Subgroup resolve_subgroup(const std::string& spec, const GroupTable& g, const ConjugacyData& cc) {
  const std::vector<Subgroup> normals = normal_subgroups(cc);
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(index:(\d+))"))) {
    const auto k = std::stoul(m[1]);
    if (k >= normals.size()) throw ParseError("normal subgroup index out of range in '" + spec + "'");
    return normals[k];
  }
  std::vector<Subgroup> hits;
  if (std::regex_match(spec, m, std::regex(R"(order:(\d+))"))) {
    const int order = std::stoi(m[1]);
    for (const auto& h : normals)
      if (h.order() == order) hits.push_back(h);
  } else {
    std::string name = spec;
    if (std::regex_match(spec, m, std::regex(R"(([A-Z])(\d+))"))) name = m[1].str() + ":" + m[2].str();
    const GroupTable h = named_group(name, g.order());
    std::vector<int> profile;
    for (Element x = 0; x < h.order(); ++x) profile.push_back(h.element_order(x));
    std::sort(profile.begin(), profile.end());
    for (const auto& n : normals) {
      std::vector<int> p;
      for (Element x : n.elements) p.push_back(g.element_order(x));
      std::sort(p.begin(), p.end());
      if (p == profile) hits.push_back(n);
    }
  }
  if (hits.size() != 1)
    throw ParseError("subgroup spec '" + spec + "' matches " + std::to_string(hits.size()) + " normal subgroups");
  return hits.front();
}

int cmd_group_info(const GroupPtr& g, const RunConfig& cfg, std::ostream& out) {
  const ConjugacyPtr cc = conjugacy_classes(g);
  const auto normals = normal_subgroups(*cc);
  json classes = json::array(), ns = json::array();
  for (int c = 0; c < cc->count(); ++c)
    classes.push_back({{"rep", cc->reps[c]}, {"size", cc->class_size(c)}, {"centralizer_order", cc->centralizers[c].order()},
                       {"element_order", g->element_order(cc->reps[c])}});
  for (const auto& h : normals) ns.push_back({{"order", h.order()}, {"elements", h.elements}});
  if (cfg.format == "json") {
    out << json{{"format", kJsonFormat}, {"group", g->label()}, {"order", g->order()}, {"hash", hash_hex(*g)},
                {"abelian", g->is_abelian()}, {"exponent", g->exponent()}, {"classes", classes}, {"normal_subgroups", ns}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "group " << g->label() << "\norder " << g->order() << "\nexponent " << g->exponent() << "\nabelian "
      << (g->is_abelian() ? "yes" : "no") << "\nclasses " << cc->count() << "\n";
  std::vector<std::vector<std::string>> rows{{"class", "rep", "size", "order", "|Z(rep)|"}};
  for (int c = 0; c < cc->count(); ++c)
    rows.push_back({std::to_string(c), std::to_string(cc->reps[c]), std::to_string(cc->class_size(c)),
                    std::to_string(g->element_order(cc->reps[c])), std::to_string(cc->centralizers[c].order())});
  print_table(out, rows);
  out << "normal subgroups " << normals.size() << "\n";
  for (std::size_t i = 0; i < normals.size(); ++i) {
    out << "  [" << i << "] order " << normals[i].order() << ":";
    for (Element x : normals[i].elements) out << " " << x;
    out << "\n";
  }
  return kExitOk;
}

void print_character_table(const CharacterTable& t, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"", "deg"}, sizes{"size", ""};
  for (int c = 0; c < t.classes->count(); ++c) {
    head.push_back("c" + std::to_string(c) + "=" + std::to_string(t.classes->reps[c]));
    sizes.push_back(std::to_string(t.classes->class_size(c)));
  }
  rows.push_back(head);
  rows.push_back(sizes);
  for (int i = 0; i < t.count(); ++i) {
    std::vector<std::string> r{"chi" + std::to_string(i), std::to_string(t.degrees[i])};
    for (int c = 0; c < t.classes->count(); ++c) r.push_back(complex_text(t.chars(i, c)));
    rows.push_back(r);
  }
  print_table(out, rows);
}

int cmd_chartable(const QuantumDouble& qd, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << to_json(qd.group_table()).dump(2) << "\n";
    return kExitOk;
  }
  out << "group " << qd.group().label() << " order " << qd.group().order() << "\n";
  print_character_table(qd.group_table(), out);
  return kExitOk;
}

int cmd_double(const QuantumDoublePtr& qd, const RunConfig& cfg, std::ostream& out) {
  const std::string& part = cfg.double_part;
  const bool all = part == "all";
  const ModularData md = modular_data(qd);
  std::optional<FusionTensor> fusion;
  if (all || part == "fuse") {
    fusion = fusion_tensor(qd);
    if (!(verlinde(md) == *fusion)) throw ConsistencyError("Verlinde fusion differs from the character oracle");
  }
  if (cfg.format == "json") {
    json doc = {{"format", kJsonFormat}, {"group", qd->group().label()}, {"order", qd->group().order()}};
    doc["simples"] = simples_to_json(qd->simples());
    if (fusion) doc["fusion"] = to_json(*fusion).at("fusion");
    if (all || part == "smatrix" || part == "tmatrix") {
      const json m = to_json(md);
      if (all || part == "smatrix") doc["S"] = m.at("S");
      if (all || part == "tmatrix") doc["T"] = m.at("T");
      doc["convention"] = md.convention;
      doc["normalization"] = md.normalization;
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  const int k = qd->simple_count();
  out << "D(" << qd->group().label() << "): " << k << " simples\n";
  if (all || part == "simples") {
    std::vector<std::vector<std::string>> rows{{"index", "(rep,pi)", "class", "dim", "theta"}};
    for (int s = 0; s < k; ++s) {
      const auto& v = qd->simples()[s];
      rows.push_back({std::to_string(s), simple_label(v), std::to_string(v.class_index), std::to_string(v.dim), complex_text(md.T(s))});
    }
    print_table(out, rows);
  }
  if (fusion) {
    out << "fusion: a x b = sum N c\n";
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) {
        out << "  " << a << " x " << b << " =";
        bool first = true;
        for (int c = 0; c < k; ++c) {
          const int n = (*fusion)(a, b, c);
          if (n == 0) continue;
          out << (first ? " " : " + ") << (n > 1 ? std::to_string(n) + "*" : "") << c;
          first = false;
        }
        out << "\n";
      }
  }
  if (all || part == "smatrix") {
    out << "S (" << md.convention << ", " << md.normalization << ")\n";
    std::vector<std::vector<std::string>> rows;
    for (int a = 0; a < k; ++a) {
      std::vector<std::string> r;
      for (int b = 0; b < k; ++b) r.push_back(complex_text(md.S(a, b)));
      rows.push_back(r);
    }
    print_table(out, rows);
  }
  if (all || part == "tmatrix") {
    out << "T diagonal\n";
    std::vector<std::vector<std::string>> rows;
    for (int s = 0; s < k; ++s) rows.push_back({std::to_string(s), complex_text(md.T(s))});
    print_table(out, rows);
  }
  return kExitOk;
}

int cmd_verify(const QuantumDoublePtr& qd, const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.tolerance = cfg.tolerance;
  if (!cfg.subgroup.empty()) opts.subgroup = resolve_subgroup(cfg.subgroup, qd->group(), qd->classes());
  const VerifyReport report = verify_group(qd, opts);
  if (cfg.format == "json") {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << "verify " << report.group << " (order " << report.order << ")\n";
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (c.name == "subgroup_restriction") out << " [" << c.data.value("verdict", "") << "]";
      if (!c.passed) out << ": " << c.detail;
      out << "\n";
    }
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](const CheckEntry& c) { return !c.passed; });
    out << (report.passed() ? "all " + std::to_string(report.checks.size()) + " checks passed"
                            : std::to_string(failed) + " of " + std::to_string(report.checks.size()) + " checks failed")
        << "\n";
  }
  return report.passed() ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Drinfeld double workbench: characters, fusion, modular data, orbifold checks", "qdouble"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--group,-g", cfg.group_spec, "Group spec: Z:n, D:n, S:n, A:n, Q8, products X*Y");
  app.add_option("--gens", cfg.gens_file, "Generator file: degree, then one permutation per line");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cfg.cache_dir, std::string("Cache directory (default $") + kCacheDirEnv + ")");
  app.add_option("--tolerance", cfg.tolerance, "Tolerance for character-level identities")->check(CLI::Range(1e-14, 1e-4));
  app.add_option("--max-order", cfg.max_order, "Group order cap")->check(CLI::Range(1, kDefaultOrderCap));
  auto* info = app.add_subcommand("group-info", "Order, classes, centralizers, normal subgroups");
  auto* chartable = app.add_subcommand("chartable", "Character table");
  auto* dbl = app.add_subcommand("double", "Simples, fusion, S and T of D(G)");
  dbl->add_option("part", cfg.double_part, "simples, fuse, smatrix, tmatrix or all")
      ->check(CLI::IsMember({"simples", "fuse", "smatrix", "tmatrix", "all"}));
  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  verify->add_option("--subgroup", cfg.subgroup, "Normal subgroup: index:K, order:N or a name such as A3");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const GroupPtr g = load_group(cfg);
    if (info->parsed()) return cmd_group_info(g, cfg, out);
    std::optional<std::filesystem::path> dir = default_cache_dir();
    if (!cfg.cache_dir.empty()) dir = std::filesystem::path(cfg.cache_dir);
    const CachedDouble cached = cached_quantum_double(g, dir, err);
    if (chartable->parsed()) return cmd_chartable(*cached.qd, cfg, out);
    if (dbl->parsed()) return cmd_double(cached.qd, cfg, out);
    return cmd_verify(cached.qd, cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace qdouble
