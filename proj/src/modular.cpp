#include "qdouble/modular.hpp"

#include <cmath>

#include "qdouble/errors.hpp"

namespace qdouble {

Eigen::VectorXcd t_vector(const QuantumDouble& qd) {
  Eigen::VectorXcd t(qd.simple_count());
  for (int s = 0; s < qd.simple_count(); ++s) {
    const DoubleSimple& x = qd.simples()[s];
    const double deg = qd.centralizer_table(x.class_index).degrees[x.pi];
    t(s) = qd.centralizer_value(x.class_index, x.pi, x.class_rep) / deg;
  }
  return t;
}

Eigen::MatrixXcd s_matrix(const QuantumDouble& qd) {
  const GroupTable& g = qd.group();
  const ConjugacyData& cc = qd.classes();
  const int k = qd.simple_count();
  Eigen::MatrixXcd s(k, k);
  for (int i = 0; i < k; ++i) {
    const DoubleSimple& x = qd.simples()[i];
    const Element a = x.class_rep;
    for (int j = 0; j < k; ++j) {
      const DoubleSimple& y = qd.simples()[j];
      const Element b = y.class_rep;
      cd sum = 0.0;
      for (Element h = 0; h < g.order(); ++h) {
        const Element hbh = g.conj(h, b);
        if (!g.commute(a, hbh)) continue;
        sum += std::conj(qd.centralizer_value(x.class_index, x.pi, hbh)) *
               std::conj(qd.centralizer_value(y.class_index, y.pi, g.conj(g.inv(h), a)));
      }
      s(i, j) = sum / (static_cast<double>(cc.centralizers[x.class_index].order()) *
                       cc.centralizers[y.class_index].order());
    }
  }
  return s;
}

Eigen::MatrixXcd s_matrix_trace_oracle(const QuantumDoublePtr& qd) {
  const int k = qd->simple_count();
  const auto& pairs = qd->commuting_pairs();
  std::vector<DoubleCharacter> chars;
  for (int s = 0; s < k; ++s) chars.push_back(double_character(qd, s));
  Eigen::MatrixXcd out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cd sum = 0.0;
      for (const auto& [a, b] : pairs) sum += chars[i].value(b, a) * chars[j].value(a, b);
      out(i, j) = sum / static_cast<double>(qd->group().order());
    }
  return out;
}

std::string resolve_s_convention(const Eigen::MatrixXcd& formula, const Eigen::MatrixXcd& oracle, double tol) {
  const std::pair<const char*, Eigen::MatrixXcd> candidates[] = {
      {"conjugate", oracle.conjugate()},
      {"identity", oracle},
      {"transpose", oracle.transpose()},
      {"conjugate-transpose", oracle.adjoint()},
  };
  for (const auto& [name, m] : candidates)
    if ((formula - m).cwiseAbs().maxCoeff() <= tol) return name;
  throw ConsistencyError("closed S formula and double-braiding trace disagree beyond a global convention");
}

ModularData modular_data(const QuantumDoublePtr& qd) {
  ModularData md;
  md.simples = qd->simples();
  md.S = s_matrix(*qd);
  md.T = t_vector(*qd);
  md.convention = resolve_s_convention(md.S, s_matrix_trace_oracle(qd));
  return md;
}

FusionTensor verlinde(const ModularData& md, double tol) {
  const int k = static_cast<int>(md.simples.size());
  FusionTensor f{md.simples, std::vector<int>(static_cast<std::size_t>(k) * k * k, 0)};
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        cd sum = 0.0;
        for (int x = 0; x < k; ++x) sum += md.S(a, x) * md.S(b, x) * std::conj(md.S(c, x)) / md.S(0, x);
        const double r = std::round(sum.real());
        if (std::abs(sum - cd(r, 0.0)) > tol || r < 0)
          throw ConsistencyError("Verlinde coefficient is not a nonnegative integer");
        f.n[(static_cast<std::size_t>(a) * k + b) * k + c] = static_cast<int>(r);
      }
  return f;
}

double ModularRelations::max() const {
  return std::max({symmetry, unitarity, charge_conjugation, modular, lambda_modulus_error});
}

ModularRelations modular_relations(const ModularData& md, const QuantumDouble& qd) {
  const Eigen::MatrixXcd& s = md.S;
  const auto k = s.rows();
  ModularRelations r;
  r.symmetry = (s - s.transpose()).cwiseAbs().maxCoeff();
  r.unitarity = (s * s.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(k, k);
  for (int a = 0; a < k; ++a) c(a, dual_simple(qd, a)) = 1.0;
  const Eigen::MatrixXcd s2 = s * s;
  r.charge_conjugation = (s2 - c).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd st = s * md.T.asDiagonal();
  const Eigen::MatrixXcd st3 = st * st * st;
  r.lambda = st3(0, 0) / s2(0, 0);
  r.modular = (st3 - r.lambda * s2).cwiseAbs().maxCoeff();
  r.lambda_modulus_error = std::abs(std::abs(r.lambda) - 1.0);
  return r;
}

RestrictedModular restrict_modular(const ModularData& md, const QuantumDoublePtr& qd, const Subgroup& h,
                                   double threshold) {
  const GroupTable& g = qd->group();
  const Subgroup checked = make_subgroup(g, h.elements);
  if (!checked.is_normal) throw ValidationError("restriction requires a normal subgroup");
  RestrictedModular r;
  for (int s = 0; s < qd->simple_count(); ++s)
    if (checked.contains(qd->simples()[s].class_rep)) r.simples.push_back(s);
  const auto m = static_cast<Eigen::Index>(r.simples.size());
  r.block.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) r.block(i, j) = md.S(r.simples[i], r.simples[j]);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(r.block);
  r.smallest_singular_value = m ? svd.singularValues().minCoeff() : 0.0;
  r.modular = r.smallest_singular_value >= threshold;
  if (checked.order() == g.order()) return r;

  // Rows (1, chi_i) use the centralizer table of the identity class, which is
  // the character table of G computed on an identical multiplication table.
  const CharacterTable& t0 = qd->centralizer_table(0);
  r.witness = vanishing_virtual_character(t0, make_subgroup(t0.group(), checked.elements));
  for (Eigen::Index j = 0; j < m; ++j) {
    cd sum = 0.0;
    for (int i = 0; i < t0.count(); ++i) sum += static_cast<double>(r.witness[i]) * md.S(qd->simple_index(0, i), r.simples[j]);
    r.witness_residual = std::max(r.witness_residual, std::abs(sum));
  }
  return r;
}

}  // namespace qdouble
