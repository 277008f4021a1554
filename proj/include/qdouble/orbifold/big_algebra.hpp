#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdouble/hopf.hpp"
#include "qdouble/linalg.hpp"
#include "qdouble/orbifold/sectors.hpp"
#include "qdouble/orbifold/untwisted.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// A-tilde = sum over g of X_g, basis vector y of X_g at g |G| + y.
struct BigAlgebra {
  GroupPtr group;
  std::vector<TwistedSector> sectors;
  /// mu[g |G| + h] = mu-tilde_(g,h)
  std::vector<MonomialMatrixXcd> mu;
  /// phi[x |G| + g] = phi_x(g)
  std::vector<MonomialMatrixXcd> phi;
  /// pi1(g) e_(x,y) = e_(x, y g^-1) assembled from phi; pi1(delta_h) projects on X_h.
  std::vector<MonomialMatrixXcd> pi1, pi1_delta;
  /// pi2 is the ambient structure of the sectors.
  std::vector<MonomialMatrixXcd> pi2, pi2_delta;

  int order() const { return group->order(); }
  int dimension() const { return order() * order(); }
  int index(Element g, Element y) const { return g * order() + y; }
  /// mu-tilde on the whole space, |G|^2 x |G|^4.
  MonomialMatrixXcd total_product() const;
  /// sum over y of e_(1,y)
  Eigen::VectorXcd unit() const;
};

/// Builds every sector (verifying each), every mu-tilde and phi, and the two
/// actions. Throws TheoremViolation.
BigAlgebra build_A_tilde(const AlgebraObject& a);

/// A-tilde with pi2 as a D(G)-module.
DoubleModule a_tilde_module(const BigAlgebra& at);

/// omega(g,h,k) from mu_(g,hk)(1 (x) mu_(h,k)) = omega mu_(gh,k)(mu_(g,h) (x) 1) with
/// mu rescaled by f[g |G| + h] (the canonical family when f is empty). Throws
/// ConsistencyError when the composites are not proportional.
cd omega_value(const BigAlgebra& at, Element g, Element h, Element k, const std::vector<cd>& f = {});

/// (df)(g,h,k) = f(g,hk) f(h,k) / (f(gh,k) f(g,h))
cd coboundary(const GroupTable& g, const std::vector<cd>& f, Element a, Element b, Element c);

struct OmegaReport {
  /// max |omega - 1| over G^3 for the canonical family
  double canonical_deviation = 0.0;
  /// max cocycle-identity defect of the canonical table
  double canonical_cocycle_defect = 0.0;
  /// max |omega_f - df| for the rescaled family over the sampled triples
  double rescaled_coboundary_defect = 0.0;
  double rescaled_cocycle_defect = 0.0;
  long long triples_checked = 0;
  long long quadruples_checked = 0;
  bool exhaustive = false;
};

/// Canonical table on all of G^3 and a random phase rescaling, sampled
/// exhaustively for |G| <= 8. Throws TheoremViolation above `tol`.
OmegaReport omega_check(const BigAlgebra& at, unsigned long long seed = 7, int samples = 2000, double tol = 1e-10);

struct PhiMapReport {
  long long composition_instances = 0;
  long long compatibility_instances = 0;
  bool phi_one_is_pi = false;
};

/// Composition law with c = 1, compatibility with mu-tilde, phi_x(1) = id,
/// phi_1(g) = pi_g, and twisted A-linearity phi mu = mu (pi_g (x) phi).
/// Throws TheoremViolation.
PhiMapReport check_phi_maps(const AlgebraObject& a, const BigAlgebra& at);

struct ATildeReport {
  bool pi1_relations = false;
  bool pi2_relations = false;
  bool actions_commute = false;
  bool pi1_multiplicative = false;
  bool unital = false;
  int invariant_dimension = 0;
  bool r_d_commutative = false;
};

/// D(G)-relations of both actions, their commutation, pi1 through the
/// coproduct, the unit, A-tilde^D(G) = C unit and mu-tilde R^D = mu-tilde with
/// R^D = R-check (pi1 (x) pi1)(R). Throws TheoremViolation.
ATildeReport check_A_tilde(const BigAlgebra& at);

struct TauReport {
  bool involution = false;
  bool algebra_automorphism = false;
  bool coalgebra_anti_automorphism = false;
  bool commutes_with_antipode = false;
  bool inverts_r = false;
  bool r_product_is_unit = false;

  bool passed() const {
    return involution && algebra_automorphism && coalgebra_anti_automorphism && commutes_with_antipode && inverts_r &&
           r_product_is_unit;
  }
};

/// Exact checks of tau(g delta_h) = g delta_(h^-1) on the basis of D(G).
TauReport tau_check(const GroupPtr& g);

struct PsiReport {
  /// e_(x,y) -> y^-1 delta_x, D(G) basis index g |G| + h
  MonomialMatrixXcd psi;
  bool intertwines_pi1 = false;
  bool intertwines_pi2 = false;
  /// Basis pair (u, v) of A-tilde with Psi(mu-tilde(u (x) v)) != Psi(u) Psi(v); (-1, -1) when none.
  std::pair<int, int> witness{-1, -1};
  DoubleElement witness_mu_tilde, witness_product;
};

/// Psi intertwines pi1 with left multiplication and pi2 with a -> a S(tau x).
/// Throws TheoremViolation on an intertwining failure.
PsiReport a_tilde_isomorphism(const BigAlgebra& at);

/// T((g,h),(a,b)) = tr over A-tilde of pi1(g) pi1(delta_(h^-1)) pi2(a) pi2(delta_b),
/// rows and columns indexed by commuting pairs.
Eigen::MatrixXd phi_trace_table(const QuantumDouble& qd, const BigAlgebra& at);

/// Character of (V (x) A-tilde)^D(G) under pi2 for the character x of V.
DoubleCharacter phi_character(const DoubleCharacter& x, const Eigen::MatrixXd& trace_table);

struct PhiClass {
  int simple = 0;
  int image = -1;
  int tau_image = -1;
  /// Class of Phi(tau(V_s)).
  int image_of_tau = -1;
  int dimension = 0;
  /// -1 when V_s has no one-dimensional centralizer character.
  int explicit_image = -1;
};

/// Throws TheoremViolation unless Phi(V_s) = tau(V_s), Phi(tau V_s) = V_s,
/// the dimensions agree and, when explicit, both routes agree.
PhiClass phi_functor(const QuantumDoublePtr& qd, const BigAlgebra& at, const Eigen::MatrixXd& trace_table, int simple);

/// Class of (V_s (x) A-tilde)^D(G) from the explicit induced module V_s.
int explicit_phi_class(const QuantumDoublePtr& qd, const BigAlgebra& at, int simple);

struct SectorCensus {
  std::vector<Element> twist_of;
  bool bijective = false;
  std::vector<int> dimension_ratio;
  std::vector<int> pairing_rank;
};

/// g -> X_g hits every g, dim X_g = dim A, and X_(g^-1) (x) X_g -> A -> 1 has
/// rank |G|. Throws TheoremViolation.
SectorCensus sector_census(const AlgebraObject& a, const BigAlgebra& at);

}  // namespace qdouble
