#include "qdouble/orbifold/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "qdouble/characters.hpp"
#include "qdouble/errors.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/orbifold/big_algebra.hpp"
#include "qdouble/orbifold/sectors.hpp"
#include "qdouble/orbifold/untwisted.hpp"

namespace qdouble {

using nlohmann::json;

namespace {

class Runner {
 public:
  explicit Runner(VerifyReport& report) : report_(report) {}

  /// `body` fills data and returns an empty string on success, else the reason.
  void run(const std::string& name, const std::function<std::string(json&)>& body) {
    CheckEntry e;
    e.name = name;
    try {
      e.detail = body(e.data);
      e.passed = e.detail.empty();
    } catch (const std::exception& ex) {
      e.passed = false;
      e.detail = ex.what();
    }
    report_.checks.push_back(std::move(e));
  }

 private:
  VerifyReport& report_;
};

std::string fail_if(bool bad, const std::string& why) { return bad ? why : std::string(); }

/// Orbits of commuting pairs under simultaneous conjugation.
int commuting_pair_orbits(const GroupTable& g) {
  const int n = g.order();
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  int orbits = 0;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!g.commute(a, b) || seen[static_cast<std::size_t>(a) * n + b]) continue;
      ++orbits;
      for (Element k = 0; k < n; ++k) seen[static_cast<std::size_t>(g.conj(k, a)) * n + g.conj(k, b)] = 1;
    }
  return orbits;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
}

const CheckEntry* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json VerifyReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"data", c.data}});
  return {{"format", 1}, {"group", group}, {"order", order}, {"passed", passed()}, {"checks", list}};
}

VerifyReport verify_group(const QuantumDoublePtr& qd, const VerifyOptions& opts) {
  VerifyReport report;
  report.group = qd->group().label();
  report.order = qd->group().order();
  Runner run(report);
  const GroupTable& g = qd->group();
  const GroupPtr gp = qd->group_ptr();
  const int n = g.order();
  const double tol = opts.tolerance;
  const CharacterTable& ct = qd->group_table();
  const ConjugacyData& cc = qd->classes();

  run.run("character_tables", [&](json& d) {
    const int k = ct.count();
    double row = 0.0, col = 0.0;
    long long deg2 = 0;
    for (int i = 0; i < k; ++i) {
      deg2 += static_cast<long long>(ct.degrees[i]) * ct.degrees[i];
      for (int j = 0; j < k; ++j) {
        cd s = 0.0;
        for (int c = 0; c < k; ++c) s += double(cc.class_size(c)) * ct.chars(i, c) * std::conj(ct.chars(j, c));
        row = std::max(row, std::abs(s / double(n) - (i == j ? 1.0 : 0.0)));
      }
    }
    for (int c = 0; c < k; ++c)
      for (int e = 0; e < k; ++e) {
        cd s = 0.0;
        for (int i = 0; i < k; ++i) s += ct.chars(i, c) * std::conj(ct.chars(i, e));
        const double expected = c == e ? double(n) / cc.class_size(c) : 0.0;
        col = std::max(col, std::abs(s - expected));
      }
    d = {{"classes", k}, {"degrees", ct.degrees}, {"row_residual", row}, {"column_residual", col}, {"sum_degree_squares", deg2}};
    return fail_if(row > tol || col > tol || deg2 != n, "orthogonality or degree count failed");
  });

  run.run("double_census", [&](json& d) {
    long long dim2 = 0;
    std::vector<int> dims;
    for (const auto& s : qd->simples()) {
      dim2 += static_cast<long long>(s.dim) * s.dim;
      dims.push_back(s.dim);
    }
    const int orbits = commuting_pair_orbits(g);
    d = {{"simples", qd->simple_count()}, {"dimensions", dims}, {"sum_dimension_squares", dim2}, {"commuting_pair_orbits", orbits}};
    return fail_if(dim2 != static_cast<long long>(n) * n || orbits != qd->simple_count(), "simple census failed");
  });

  const FusionTensor fusion = fusion_tensor(qd);
  const ModularData md = modular_data(qd);

  run.run("fusion_dual_path", [&](json& d) {
    const FusionTensor v = verlinde(md);
    const auto violations = fusion_violations(fusion, *qd);
    d = {{"simples", fusion.count()}, {"violations", violations}};
    if (!(v == fusion)) return std::string("Verlinde fusion differs from the character oracle");
    return fail_if(!violations.empty(), "fusion invariants violated");
  });

  run.run("modular_relations", [&](json& d) {
    const ModularRelations r = modular_relations(md, *qd);
    d = {{"symmetry", r.symmetry},
         {"unitarity", r.unitarity},
         {"charge_conjugation", r.charge_conjugation},
         {"modular", r.modular},
         {"lambda", {r.lambda.real(), r.lambda.imag()}},
         {"convention", md.convention}};
    return fail_if(r.max() > tol, "modular relation residual above tolerance");
  });

  auto restriction = [&](const Subgroup& h, json& d) {
    const RestrictedModular r = restrict_modular(md, qd, h);
    const bool whole = h.order() == n;
    const bool witness_ok = whole || (!r.witness.empty() &&
                                      std::any_of(r.witness.begin(), r.witness.end(), [](long long m) { return m != 0; }) &&
                                      r.witness_residual <= tol);
    d = {{"subgroup_order", h.order()},
         {"block_size", r.simples.size()},
         {"modular", r.modular},
         {"expected_modular", whole},
         {"smallest_singular_value", r.smallest_singular_value},
         {"witness", r.witness},
         {"witness_residual", r.witness_residual}};
    return r.modular == whole && witness_ok;
  };

  run.run("modularity_criterion", [&](json& d) {
    d = json::array();
    bool ok = true;
    for (const Subgroup& h : normal_subgroups(cc)) {
      json e;
      ok = restriction(h, e) && ok;
      d.push_back(std::move(e));
    }
    return fail_if(!ok, "restricted S-block is modular exactly when H = G fails");
  });

  if (opts.subgroup)
    run.run("subgroup_restriction", [&](json& d) {
      const bool ok = restriction(*opts.subgroup, d);
      d["verdict"] = d["modular"].get<bool>() ? "modular" : "expected-singular";
      return fail_if(!ok, "restriction verdict does not match H = G");
    });

  if (!opts.orbifold) return report;

  std::optional<AlgebraObject> a;
  run.run("algebra_A", [&](json& d) {
    a = build_A(gp);
    d = {{"dimension", a->dimension()}};
    return std::string();
  });
  if (!a) return report;

  std::optional<UntwistedDecomposition> ud;
  run.run("untwisted_decomposition", [&](json& d) {
    ud = decompose_A(qd, *a);
    d = {{"double_multiplicities", ud->double_multiplicities},
         {"m_lambda", ud->m_lambda},
         {"block_dimensions", ud->block_dimensions}};
    for (int l = 0; l < ct.count(); ++l)
      if (ud->double_multiplicities[qd->simple_index(0, l)] != ct.degrees[l]) return std::string("mult(V_(1,lambda)) != deg lambda");
    return std::string();
  });

  std::vector<std::vector<Eigen::MatrixXcd>> irreps;
  run.run("irrep_realization", [&](json& d) {
    double residual = 0.0;
    for (int l = 0; l < ct.count(); ++l) {
      irreps.push_back(realize_irrep(ct, l));
      for (Element x = 0; x < n; ++x) residual = std::max(residual, std::abs(irreps[l][x].trace() - ct.value(l, x)));
    }
    d = {{"character_residual", residual}};
    return fail_if(residual > tol, "realized matrices do not have the tabulated characters");
  });
  if (irreps.size() != static_cast<std::size_t>(ct.count())) return report;

  run.run("untwisted_phi", [&](json& d) {
    const Eigen::MatrixXcd trace = untwisted_trace_table(*qd, *a);
    std::vector<int> images;
    std::string why;
    for (int l = 0; l < ct.count(); ++l) {
      const auto m = untwisted_phi(qd, trace, irreducible(ct, l)).multiplicities;
      int image = -1, total = 0;
      for (int s = 0; s < qd->simple_count(); ++s) {
        total += m[s];
        if (m[s] == 1) image = s;
      }
      if (total != 1) image = -1;
      const PhiSpace ex = explicit_phi(qd, *a, irreps[l]);
      const auto& em = ex.decomposition.multiplicities;
      const bool explicit_ok = ex.basis.cols() == ct.degrees[l] && image >= 0 && em[image] == 1 &&
                               std::accumulate(em.begin(), em.end(), 0) == 1;
      images.push_back(image);
      if (image != qd->simple_index(0, l) || (ud && image != ud->m_lambda[ct.dual(l)]) || !explicit_ok)
        why = "Phi(V_lambda) is not the simple (1, lambda)";
    }
    d = {{"phi_simple", images}};
    return why;
  });

  run.run("j_morphism", [&](json& d) {
    std::vector<std::vector<int>> ranks(ct.count(), std::vector<int>(ct.count()));
    bool ok = true;
    for (int l = 0; l < ct.count(); ++l)
      for (int m = 0; m < ct.count(); ++m) {
        const JReport r = j_morphism(qd, *a, irreps[l], irreps[m]);
        ranks[l][m] = r.rank;
        ok = ok && r.injective && r.isomorphism;
      }
    d = {{"rank", ranks}};
    return fail_if(!ok, "J is not an isomorphism for some pair");
  });

  run.run("duality_pairing", [&](json& d) {
    std::vector<double> sv;
    bool ok = true;
    for (int l = 0; l < ct.count(); ++l) {
      const PairingReport p = duality_pairing(qd, *a, irreps[l], tol);
      sv.push_back(p.smallest_singular_value);
      ok = ok && p.perfect && p.invariance_residual <= tol;
    }
    d = {{"smallest_singular_value", sv}};
    return fail_if(!ok, "a duality pairing is degenerate");
  });

  run.run("simple_currents", [&](json& d) {
    const SimpleCurrentReport r = simple_currents(qd, *a, fusion);
    d = {{"applicable", r.applicable}};
    if (!r.applicable) return std::string();
    d["phi_simple"] = r.phi_simple;
    d["dual_group_product"] = r.dual_group_product;
    d["fusion_coefficient"] = r.fusion_coefficient;
    return fail_if(!r.realized, "simple currents do not realize the dual group");
  });

  std::optional<BigAlgebra> at;
  run.run("twisted_sectors", [&](json& d) {
    at = build_A_tilde(*a);
    std::vector<double> residual;
    std::vector<int> dims;
    std::string why;
    for (Element x = 0; x < n; ++x) {
      const TwistedSector& s = at->sectors[x];
      residual.push_back(twisted_residual(*a, s.module, s.a_action, x));
      dims.push_back(s.dimension());
      if (detect_twist(*a, s.module, s.a_action) != x) why = "detect_twist disagrees with the sector label";
    }
    d = {{"dimensions", dims}, {"twisted_residual", residual}};
    return why;
  });
  if (!at) return report;

  run.run("sector_census", [&](json& d) {
    const SectorCensus c = sector_census(*a, *at);
    d = {{"twist_of", c.twist_of}, {"dimension_ratio", c.dimension_ratio}, {"pairing_rank", c.pairing_rank}};
    return fail_if(!c.bijective, "g -> X_g is not a bijection");
  });

  run.run("mu_tilde_uniqueness", [&](json& d) {
    std::set<int> hom, quotient;
    double residual = 0.0;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        const MuTildeReport r = check_mu_tilde(*a, at->sectors[x], at->sectors[y], at->sectors[g.mul(x, y)], at->mu[x * n + y]);
        hom.insert(r.hom_dimension);
        quotient.insert(r.quotient_dimension);
        residual = std::max(residual, r.formula_residual);
      }
    d = {{"pairs", n * n}, {"hom_dimensions", hom}, {"quotient_dimensions", quotient}, {"formula_residual", residual}};
    return fail_if(hom != std::set<int>{1}, "Hom space of mu-tilde is not one-dimensional");
  });

  run.run("omega_cocycle", [&](json& d) {
    const OmegaReport r = omega_check(*at);
    d = {{"canonical_deviation", r.canonical_deviation},
         {"canonical_cocycle_defect", r.canonical_cocycle_defect},
         {"rescaled_coboundary_defect", r.rescaled_coboundary_defect},
         {"rescaled_cocycle_defect", r.rescaled_cocycle_defect},
         {"triples_checked", r.triples_checked},
         {"quadruples_checked", r.quadruples_checked},
         {"exhaustive", r.exhaustive}};
    return std::string();
  });

  run.run("phi_maps", [&](json& d) {
    const PhiMapReport r = check_phi_maps(*a, *at);
    d = {{"composition_instances", r.composition_instances},
         {"compatibility_instances", r.compatibility_instances},
         {"phi_one_is_pi", r.phi_one_is_pi}};
    return fail_if(!r.phi_one_is_pi, "phi_1(g) != pi_g");
  });

  run.run("a_tilde_structure", [&](json& d) {
    const ATildeReport r = check_A_tilde(*at);
    d = {{"dimension", at->dimension()},
         {"pi1_relations", r.pi1_relations},
         {"pi2_relations", r.pi2_relations},
         {"actions_commute", r.actions_commute},
         {"pi1_multiplicative", r.pi1_multiplicative},
         {"unital", r.unital},
         {"invariant_dimension", r.invariant_dimension},
         {"r_d_commutative", r.r_d_commutative}};
    const bool ok = r.pi1_relations && r.pi2_relations && r.actions_commute && r.pi1_multiplicative && r.unital &&
                    r.invariant_dimension == 1 && r.r_d_commutative;
    return fail_if(!ok, "A-tilde structure check failed");
  });

  run.run("a_tilde_decomposition", [&](json& d) {
    const DoubleDecomposition total = decompose_module(qd, a_tilde_module(*at), tol);
    std::string why;
    for (int s = 0; s < qd->simple_count(); ++s)
      if (total.multiplicities[s] != qd->simples()[s].dim) why = "mult of V_s in A-tilde != dim V_s";
    json sectors = json::array();
    for (Element x = 0; x < n; ++x) {
      const DoubleDecomposition dx = decompose_module(qd, at->sectors[x].module, tol);
      for (int s = 0; s < qd->simple_count(); ++s) {
        const DoubleSimple& v = qd->simples()[s];
        const int expected = v.class_index == cc.class_of[x] ? qd->centralizer_table(v.class_index).degrees[v.pi] : 0;
        if (dx.multiplicities[s] != expected) why = "mult of V_(g,pi) in X_g != deg pi";
      }
      sectors.push_back(dx.multiplicities);
    }
    d = {{"a_tilde", total.multiplicities}, {"sectors", sectors}};
    return why;
  });

  run.run("tau_lemma", [&](json& d) {
    const TauReport r = tau_check(gp);
    d = {{"involution", r.involution},
         {"algebra_automorphism", r.algebra_automorphism},
         {"coalgebra_anti_automorphism", r.coalgebra_anti_automorphism},
         {"commutes_with_antipode", r.commutes_with_antipode},
         {"inverts_r", r.inverts_r},
         {"r_product_is_unit", r.r_product_is_unit}};
    return fail_if(!r.passed(), "a tau clause failed");
  });

  run.run("a_tilde_isomorphism", [&](json& d) {
    const PsiReport r = a_tilde_isomorphism(*at);
    d = {{"intertwines_pi1", r.intertwines_pi1}, {"intertwines_pi2", r.intertwines_pi2}};
    if (r.witness.first >= 0) {
      const DoubleBasis b(gp);
      auto element = [&](const DoubleElement& e) {
        json out = json::array();
        for (const auto& [i, c] : e) out.push_back({b.group_part(i), b.weight_part(i), c});
        return out;
      };
      d["witness"] = {{"u", r.witness.first},
                      {"v", r.witness.second},
                      {"psi_of_mu_tilde", element(r.witness_mu_tilde)},
                      {"product_in_double", element(r.witness_product)}};
    }
    if (!r.intertwines_pi1 || !r.intertwines_pi2) return std::string("Psi is not a bimodule map");
    return fail_if(n > 1 && r.witness.first < 0, "Psi is multiplicative, expected a non-multiplicativity witness");
  });

  run.run("phi_tau_identity", [&](json& d) {
    const Eigen::MatrixXd trace = phi_trace_table(*qd, *at);
    const int k = qd->simple_count();
    std::vector<int> image(k), composite(k);
    std::string why;
    for (int s = 0; s < k; ++s) {
      const PhiClass c = phi_functor(qd, *at, trace, s);
      image[s] = c.image;
      composite[s] = c.image_of_tau;
      if (c.image_of_tau != s) why = "Phi(tau V_s) is not V_s";
    }
    // Phi is a bijection preserving fusion.
    bool fusion_ok = std::set<int>(image.begin(), image.end()).size() == static_cast<std::size_t>(k);
    for (int x = 0; x < k && fusion_ok; ++x)
      for (int y = 0; y < k && fusion_ok; ++y)
        for (int z = 0; z < k && fusion_ok; ++z) fusion_ok = fusion(image[x], image[y], image[z]) == fusion(x, y, z);
    if (!fusion_ok) why = "Phi does not preserve fusion";
    // Phi(V_x (x) V_y) = sum_z N_xy^z Phi(V_z) at class level.
    long long tensor_pairs = 0;
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) {
        const DoubleCharacter prod = tensor_character(double_character(qd, x), double_character(qd, y));
        const auto m = decompose_character(phi_character(prod, trace), tol).multiplicities;
        std::vector<int> expected(k, 0);
        for (int z = 0; z < k; ++z) expected[image[z]] += fusion(x, y, z);
        if (m != expected) why = "Phi is not compatible with tensor products";
        ++tensor_pairs;
      }
    d = {{"phi_image", image}, {"phi_of_tau", composite}, {"tensor_pairs_checked", tensor_pairs}};
    return why;
  });

  return report;
}

}  // namespace qdouble
