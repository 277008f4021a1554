#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qdouble/characters.hpp"
#include "qdouble/linalg.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// A = F(G) in Rep D(G): basis delta_h of weight 1 with z delta_h = delta_(zh).
struct AlgebraObject {
  GroupPtr group;
  DoubleModule underlying;
  /// Pointwise product, |G| x |G|^2: delta_g (x) delta_h -> [g = h] delta_g.
  MonomialMatrixXcd mult;
  /// sum_h delta_h
  Eigen::VectorXcd unit;
  /// pi_g delta_h = delta_(h g^-1); pi_g pi_h = pi_(gh).
  std::vector<MonomialMatrixXcd> automorphism;

  int dimension() const { return underlying.dimension; }
};

/// Builds A and verifies commutativity, associativity, the unit law, that
/// mult and every pi_g are module maps, that pi is a left action by algebra
/// automorphisms, A^G = C sum_h delta_h, theta_A = id and R-check^2 = id.
/// Throws TheoremViolation naming the first failure.
AlgebraObject build_A(const GroupPtr& g);

/// A as a D(G) (x) G bimodule, sum over lambda of V_lambda (x) M_lambda.
struct UntwistedDecomposition {
  /// Multiplicity of every simple of D(G) in A.
  std::vector<int> double_multiplicities;
  /// Simple of D(G) isomorphic to M_lambda, per irreducible lambda of G.
  std::vector<int> m_lambda;
  /// deg(lambda) dim(M_lambda)
  std::vector<int> block_dimensions;
};

/// Throws TheoremViolation unless (1, lambda) occurs deg(lambda) times, no
/// other simple occurs, and every M_lambda is simple with M_lambda pairwise
/// distinct.
UntwistedDecomposition decompose_A(const QuantumDoublePtr& qd, const AlgebraObject& a);

/// tr_A(pi_k a P_b) for every k and commuting pair (a, b), |G| x pairs.
Eigen::MatrixXcd untwisted_trace_table(const QuantumDouble& qd, const AlgebraObject& a);

/// Class of (V (x) A)^G for a G-character given on classes, from the trace
/// table: value(a, b) = (1/|G|) sum_k chi_V(k) tr_A(pi_k a P_b).
DoubleDecomposition untwisted_phi(const QuantumDoublePtr& qd, const Eigen::MatrixXcd& trace_table,
                                  const ClassFunction& v);

/// Unitary matrices of the irreducible `i`, cut out of the left regular
/// representation by its isotypic projector and a generic element of the
/// commuting right action. Deterministic for a fixed seed.
std::vector<Eigen::MatrixXcd> realize_irrep(const CharacterTable& t, int i, unsigned long long seed = 1);

/// rho (x) sigma as matrices, left factor major.
std::vector<Eigen::MatrixXcd> tensor_representation(const std::vector<Eigen::MatrixXcd>& rho,
                                                    const std::vector<Eigen::MatrixXcd>& sigma);

/// Phi(V) = (V (x) A)^G as a concrete subspace of V (x) A, index i |G| + h.
struct PhiSpace {
  int rep_dimension = 0;
  /// Orthonormal columns.
  Eigen::MatrixXcd basis;
  DoubleDecomposition decomposition;
};

PhiSpace explicit_phi(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho);

struct JReport {
  int rank = 0;
  int source_dimension = 0;
  int target_dimension = 0;
  /// max |P J - J| for the invariant projector P of V (x) W (x) A
  double containment_residual = 0.0;
  bool injective = false;
  bool isomorphism = false;
};

/// J: Phi(V) (x) Phi(W) -> Phi(V (x) W), p (x) q -> sum_h p(., h) (x) q(., h) delta_h.
/// Throws TheoremViolation when J is not injective.
JReport j_morphism(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& v,
                   const std::vector<Eigen::MatrixXcd>& w);

struct PairingReport {
  /// Entry (p, q) is the A^G coordinate of mu(ev (x) id)(p (x) q).
  Eigen::MatrixXcd matrix;
  /// Distance of the products from the line A^G.
  double invariance_residual = 0.0;
  double smallest_singular_value = 0.0;
  bool perfect = false;
};

/// Pairing Phi(V*) (x) Phi(V) -> A^G = 1 with V* realized by conj(rho).
PairingReport duality_pairing(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho,
                              double threshold = 1e-8);

struct SimpleCurrentReport {
  bool applicable = false;
  /// Phi(V_lambda) per character lambda of G.
  std::vector<int> phi_simple;
  /// product(l, m) = index of lambda_l lambda_m.
  std::vector<std::vector<int>> dual_group_product;
  /// N(Phi lambda, Phi mu, Phi(lambda mu)) for every pair; all 1 when realized.
  std::vector<std::vector<int>> fusion_coefficient;
  bool realized = false;
};

/// For abelian G: the simples Phi(V_lambda) fuse like the dual group and every
/// J is a nonzero 1 x 1 matrix. Not applicable otherwise.
SimpleCurrentReport simple_currents(const QuantumDoublePtr& qd, const AlgebraObject& a, const FusionTensor& f);

}  // namespace qdouble
