// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "qdouble/cache.hpp"
#include "qdouble/characters.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/orbifold/verify.hpp"
#include "qdouble/serialize.hpp"
#include "qdouble/workbench.hpp"

using namespace qdouble;

namespace {

const std::vector<std::string> kGroups = {"Z:2", "Z:3", "Z:4", "Z:6", "Z:2*Z:2", "S:3", "D:4", "Q8", "A:4", "D:6", "S:4"};
constexpr double kTol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GroupPtr group(const std::string& spec) { return std::make_shared<const GroupTable>(named_group(spec)); }

/// Collects the reasons a criterion fails.
struct Verdict {
  std::vector<std::string> problems;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

int commuting_pair_orbits(const GroupTable& g) {
  const int n = g.order();
  std::set<std::pair<Element, Element>> seen;
  int orbits = 0;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!g.commute(a, b) || seen.count({a, b})) continue;
      ++orbits;
      for (Element k = 0; k < n; ++k) seen.insert({g.conj(k, a), g.conj(k, b)});
    }
  return orbits;
}

std::string cli_out(const std::vector<std::string>& args, int* status = nullptr) {
  std::ostringstream out, err;
  const int s = run_cli(args, out, err);
  if (status) *status = s;
  return out.str();
}

bool bit_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && std::memcmp(a.data(), b.data(), sizeof(cd) * a.size()) == 0;
}

std::map<std::string, QuantumDoublePtr> doubles;

const QuantumDoublePtr& qd_of(const std::string& spec) {
  auto it = doubles.find(spec);
  if (it == doubles.end()) it = doubles.emplace(spec, make_quantum_double(group(spec))).first;
  return it->second;
}

Verdict criterion_character_tables() {
  Verdict v;
  std::vector<std::string> all = kGroups;
  all.push_back("A:5");
  const auto t0 = Clock::now();
  std::vector<CharacterTable> tables;
  for (const auto& spec : all) tables.push_back(character_table(group(spec)));
  const double elapsed = seconds_since(t0);
  for (std::size_t gi = 0; gi < all.size(); ++gi) {
    const CharacterTable& t = tables[gi];
    const ConjugacyData& cc = *t.classes;
    const int n = t.group().order(), k = t.count();
    double worst = 0.0;
    long long deg2 = 0;
    for (int i = 0; i < k; ++i) {
      deg2 += static_cast<long long>(t.degrees[i]) * t.degrees[i];
      for (int j = 0; j < k; ++j) {
        cd s = 0.0;
        for (int c = 0; c < k; ++c) s += double(cc.class_size(c)) * t.chars(i, c) * std::conj(t.chars(j, c));
        worst = std::max(worst, std::abs(s / double(n) - (i == j ? 1.0 : 0.0)));
      }
    }
    for (int c = 0; c < k; ++c)
      for (int e = 0; e < k; ++e) {
        cd s = 0.0;
        for (int i = 0; i < k; ++i) s += t.chars(i, c) * std::conj(t.chars(i, e));
        worst = std::max(worst, std::abs(s - (c == e ? double(n) / cc.class_size(c) : 0.0)));
      }
    v.require(worst <= kTol, all[gi] + " orthogonality residual " + std::to_string(worst));
    v.require(deg2 == n, all[gi] + " sum of squared degrees");
  }
  std::vector<int> s4 = tables[all.size() - 2].degrees;
  std::sort(s4.begin(), s4.end());
  v.require(s4 == std::vector<int>{1, 1, 2, 3, 3}, "S4 degrees");
  v.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s");
  v.note = std::to_string(all.size()) + " groups in " + std::to_string(elapsed) + " s";
  return v;
}

Verdict criterion_double_census() {
  Verdict v;
  for (const auto& spec : kGroups) {
    const auto& qd = qd_of(spec);
    const long long n = qd->group().order();
    long long dim2 = 0;
    for (const auto& s : qd->simples()) dim2 += static_cast<long long>(s.dim) * s.dim;
    v.require(dim2 == n * n, spec + " sum of squared dimensions");
    v.require(qd->simple_count() == commuting_pair_orbits(qd->group()), spec + " simple count");
  }
  std::vector<int> s3;
  for (const auto& s : qd_of("S:3")->simples()) s3.push_back(s.dim);
  v.require(s3 == std::vector<int>{1, 1, 2, 3, 3, 2, 2, 2}, "D(S3) dimensions");
  const auto& z2 = qd_of("Z:2")->simples();
  v.require(z2.size() == 4 && std::all_of(z2.begin(), z2.end(), [](const DoubleSimple& s) { return s.dim == 1; }),
            "D(Z2) simples");
  return v;
}

Verdict criterion_fusion() {
  Verdict v;
  double s4_time = 0.0;
  for (const auto& spec : kGroups) {
    const auto t0 = Clock::now();
    const auto& qd = qd_of(spec);
    const FusionTensor oracle = fusion_tensor(qd);
    const FusionTensor vl = verlinde(modular_data(qd));
    if (spec == "S:4") s4_time = seconds_since(t0);
    v.require(vl == oracle, spec + " Verlinde differs from character oracle");
    for (const auto& p : fusion_violations(oracle, *qd)) v.problems.push_back(spec + " " + p);
  }
  v.require(s4_time < 60.0, "S4 runtime " + std::to_string(s4_time) + " s");
  v.note = "S4 in " + std::to_string(s4_time) + " s";
  return v;
}

Verdict criterion_modular() {
  Verdict v;
  for (const auto& spec : kGroups) {
    const auto& qd = qd_of(spec);
    const ModularRelations r = modular_relations(modular_data(qd), *qd);
    v.require(r.symmetry <= kTol, spec + " S symmetric");
    v.require(r.unitarity <= kTol, spec + " S unitary");
    v.require(r.charge_conjugation <= kTol, spec + " S^2 = C");
    v.require(r.modular <= kTol && r.lambda_modulus_error <= kTol, spec + " (ST)^3 proportional to S^2");
  }
  return v;
}

Verdict criterion_modularity() {
  Verdict v;
  int instances = 0;
  std::set<std::string> named;
  for (const auto& spec : kGroups) {
    const auto& qd = qd_of(spec);
    const ModularData md = modular_data(qd);
    const int n = qd->group().order();
    for (const Subgroup& h : normal_subgroups(qd->classes())) {
      ++instances;
      const RestrictedModular r = restrict_modular(md, qd, h);
      const bool whole = h.order() == n;
      v.require(r.modular == whole, spec + " subgroup of order " + std::to_string(h.order()) + " verdict");
      if (!whole) {
        const bool nonzero = std::any_of(r.witness.begin(), r.witness.end(), [](long long m) { return m != 0; });
        v.require(nonzero && r.witness_residual <= kTol, spec + " witness for order " + std::to_string(h.order()));
        // the witness vanishes on H exactly: check with the integer class sums
        const CharacterTable& t = qd->group_table();
        for (Element x : h.elements) {
          cd s = 0.0;
          for (int i = 0; i < t.count(); ++i) s += double(r.witness[i]) * t.value(i, x);
          v.require(std::abs(s) <= kTol, spec + " witness does not vanish on H");
        }
      } else {
        v.require(r.smallest_singular_value > kTol, spec + " S invertible");
      }
      if (spec == "S:3" && h.order() == 3) named.insert("A3<S3");
      if (spec == "S:4" && h.order() == 4) named.insert("V4<S4");
      if (spec == "S:4" && h.order() == 12) named.insert("A4<S4");
      if (spec == "Q8" && h.order() == 2) named.insert("Z2<Q8");
    }
  }
  v.require(named.size() == 4, "named instances missing");
  v.note = std::to_string(instances) + " normal subgroups";
  return v;
}

std::map<std::string, VerifyReport> reports;

const std::vector<std::string> kOrbifoldChecks = {"twisted_sectors", "sector_census",  "omega_cocycle",     "phi_maps",
                                                  "mu_tilde_uniqueness", "a_tilde_structure", "tau_lemma",
                                                  "a_tilde_isomorphism", "phi_tau_identity"};

Verdict criterion_orbifold() {
  Verdict v;
  double s4_time = 0.0;
  for (const auto& spec : kGroups) {
    const auto t0 = Clock::now();
    int status = -1;
    cli_out({"verify", "--group", spec, "--format", "json"}, &status);
    if (spec == "S:4") s4_time = seconds_since(t0);
    v.require(status == 0, spec + " verify exit status " + std::to_string(status));
    const VerifyReport& r = reports.emplace(spec, verify_group(qd_of(spec))).first->second;
    for (const auto& name : kOrbifoldChecks) {
      const CheckEntry* e = r.find(name);
      v.require(e && e->passed, spec + " " + name + (e ? ": " + e->detail : " missing"));
    }
    if (const CheckEntry* e = r.find("mu_tilde_uniqueness"))
      v.require(e->data.value("hom_dimensions", json::array()) == json::array({1}), spec + " mu-tilde Hom dimension");
    if (const CheckEntry* e = r.find("a_tilde_structure"))
      v.require(e->data.value("invariant_dimension", 0) == 1 && e->data.value("r_d_commutative", false),
                spec + " A-tilde invariants or commutativity");
    if (const CheckEntry* e = r.find("omega_cocycle"))
      v.require(e->data.value("canonical_deviation", 1.0) <= 1e-10, spec + " omega != 1");
    if (const CheckEntry* e = r.find("phi_tau_identity")) {
      const json& d = e->data;
      const auto composite = d.value("phi_of_tau", std::vector<int>{});
      for (std::size_t s = 0; s < composite.size(); ++s) v.require(composite[s] == static_cast<int>(s), spec + " Phi tau not identity");
    }
  }
  v.require(s4_time < 120.0, "S4 verify runtime " + std::to_string(s4_time) + " s");
  v.note = "S4 verify in " + std::to_string(s4_time) + " s";
  return v;
}

Verdict criterion_untwisted() {
  Verdict v;
  for (const auto& spec : kGroups) {
    const auto& qd = qd_of(spec);
    const VerifyReport& r = reports.count(spec) ? reports.at(spec) : reports.emplace(spec, verify_group(qd)).first->second;
    for (const char* name : {"untwisted_decomposition", "untwisted_phi", "j_morphism", "duality_pairing", "simple_currents"}) {
      const CheckEntry* e = r.find(name);
      v.require(e && e->passed, spec + " " + name + (e ? ": " + e->detail : " missing"));
    }
    const CheckEntry* d = r.find("untwisted_decomposition");
    if (d) {
      const auto mult = d->data.value("double_multiplicities", std::vector<int>{});
      const CharacterTable& t = qd->group_table();
      for (int s = 0; s < qd->simple_count() && static_cast<int>(mult.size()) == qd->simple_count(); ++s) {
        const DoubleSimple& x = qd->simples()[s];
        const int expected = x.class_index == 0 ? t.degrees[x.pi] : 0;
        v.require(mult[s] == expected, spec + " multiplicity of simple " + std::to_string(s));
      }
    }
    const CheckEntry* sc = r.find("simple_currents");
    if (sc && qd->group().is_abelian())
      v.require(sc->data.value("applicable", false), spec + " simple currents not applicable for abelian G");
  }
  return v;
}

Verdict criterion_determinism() {
  Verdict v;
  const std::vector<std::vector<std::string>> runs = {
      {"group-info", "--group", "S:4", "--format", "json"}, {"chartable", "--group", "A:4"},
      {"double", "--group", "D:4", "--format", "json"},      {"double", "--group", "Q8"},
      {"verify", "--group", "S:3", "--format", "json"}};
  for (const auto& args : runs) v.require(cli_out(args) == cli_out(args), args[0] + " output differs between runs");
  for (const auto& spec : kGroups) {
    const auto& qd = qd_of(spec);
    const CharacterTable back = character_table_from_json(json::parse(to_json(qd->group_table()).dump()), qd->classes_ptr());
    v.require(bit_equal(back.chars, qd->group_table().chars), spec + " character table round trip");
    const ModularData md = modular_data(qd);
    const ModularData mb = modular_from_json(json::parse(to_json(md).dump()));
    v.require(bit_equal(md.S, mb.S) && bit_equal(md.T, mb.T), spec + " modular data round trip");
    const FusionTensor f = fusion_tensor(qd);
    v.require(fusion_from_json(json::parse(to_json(f).dump())) == f, spec + " fusion round trip");
  }
  const auto dir = std::filesystem::temp_directory_path() / ("qdouble-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  for (const std::string spec : {"S:4", "Q8"}) {
    const std::vector<std::string> plain{"double", "--group", spec, "--format", "json"};
    std::vector<std::string> cached = plain;
    cached.insert(cached.end(), {"--cache-dir", dir.string()});
    const std::string ref = cli_out(plain);
    v.require(cli_out(cached) == ref && cli_out(cached) == ref, spec + " cache changed output");
    std::ostringstream warn;
    v.require(cached_quantum_double(group(spec), dir, warn).hit, spec + " cache entry not reused");
  }
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 character tables", criterion_character_tables},
      {"2 double census", criterion_double_census},
      {"3 fusion dual path", criterion_fusion},
      {"4 modular relations", criterion_modular},
      {"5 modularity criterion", criterion_modularity},
      {"6 orbifold battery", criterion_orbifold},
      {"7 untwisted sector", criterion_untwisted},
      {"8 determinism and round trip", criterion_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = v.problems.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS " : "FAIL ") << "criterion " << name;
    if (!v.note.empty()) std::cout << " (" << v.note << ")";
    std::cout << "\n";
    for (const auto& p : v.problems) std::cout << "    " << p << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
