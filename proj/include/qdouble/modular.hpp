#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdouble/quantum_double.hpp"

namespace qdouble {

/// S and T of Rep D(G). S carries the unitary normalization (unit row
/// dim/|G|); `convention` records how the closed S formula relates to the
/// double-braiding trace.
struct ModularData {
  std::vector<DoubleSimple> simples;
  Eigen::MatrixXcd S;
  Eigen::VectorXcd T;
  std::string convention;
  std::string normalization = "unitary";
};

/// theta_(g, pi) = chi_pi(g) / chi_pi(1)
Eigen::VectorXcd t_vector(const QuantumDouble& qd);

/// S_(a,chi),(b,eta) = 1/(|Z(a)||Z(b)|) sum over h with a, hbh^-1 commuting of
/// conj chi(hbh^-1) conj eta(h^-1 a h).
Eigen::MatrixXcd s_matrix(const QuantumDouble& qd);

/// (1/|G|) sum over commuting (a, b) of value_i(b, a) value_j(a, b).
Eigen::MatrixXcd s_matrix_trace_oracle(const QuantumDoublePtr& qd);

/// Name of the first map, in the order "conjugate", "identity",
/// "transpose", "conjugate-transpose", taking the oracle to the formula
/// within `tol`. Throws ConsistencyError when none does.
std::string resolve_s_convention(const Eigen::MatrixXcd& formula, const Eigen::MatrixXcd& oracle, double tol = 1e-8);

ModularData modular_data(const QuantumDoublePtr& qd);

/// N_ab^c = sum_x S_ax S_bx conj(S_cx) / S_0x, rounded. Throws
/// ConsistencyError on non-integral or negative entries.
FusionTensor verlinde(const ModularData& md, double tol = 1e-6);

/// Residuals of the modular relations.
struct ModularRelations {
  double symmetry = 0.0;            // |S - S^T|
  double unitarity = 0.0;           // |S S^* - I|
  double charge_conjugation = 0.0;  // |S^2 - C|
  double modular = 0.0;             // |(ST)^3 - lambda S^2|
  cd lambda = 1.0;
  double lambda_modulus_error = 0.0;

  double max() const;
};

ModularRelations modular_relations(const ModularData& md, const QuantumDouble& qd);

/// S-block of the simples whose weights lie in a normal subgroup H.
struct RestrictedModular {
  std::vector<int> simples;
  Eigen::MatrixXcd block;
  double smallest_singular_value = 0.0;
  bool modular = false;
  /// For proper H: integer combination of irreducibles of G vanishing on H.
  std::vector<long long> witness;
  /// max |sum_i m_i S_(1,chi_i),s| over simples s of the block.
  double witness_residual = 0.0;
};

/// Throws ValidationError unless h is a normal subgroup.
RestrictedModular restrict_modular(const ModularData& md, const QuantumDoublePtr& qd, const Subgroup& h,
                                   double threshold = 1e-8);

}  // namespace qdouble
