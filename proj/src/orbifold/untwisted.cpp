#include "qdouble/orbifold/untwisted.hpp"

#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "qdouble/errors.hpp"

namespace qdouble {

namespace {

using SparseXcd = Eigen::SparseMatrix<cd>;
constexpr double kExact = 1e-10;

void require(bool ok, const std::string& what) {
  if (!ok) throw TheoremViolation(what);
}

Eigen::MatrixXcd kron_dense(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Columns of the orthogonal projector `p` with eigenvalue 1.
Eigen::MatrixXcd projector_image(const Eigen::MatrixXcd& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (p + p.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < p.rows(); ++k)
    if (es.eigenvalues()(k) > 0.5) keep.push_back(k);
  Eigen::MatrixXcd out(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return out;
}

/// (1/|G|) sum_k rho(k) (x) pi_k
Eigen::MatrixXcd invariant_projector(const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho) {
  const int n = a.dimension();
  const Eigen::Index d = rho[0].rows();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d * n, d * n);
  for (Element k = 0; k < n; ++k) p += kron_dense(rho[k], a.automorphism[k].toDense());
  return p / static_cast<double>(n);
}

Eigen::MatrixXcd phi_subspace(const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho) {
  return projector_image(invariant_projector(a, rho));
}

}  // namespace

AlgebraObject build_A(const GroupPtr& gp) {
  const GroupTable& g = *gp;
  const int n = g.order();
  std::vector<SparseXcd> action;
  for (Element z = 0; z < n; ++z) {
    MonomialMatrixXcd m(n, n);
    for (Element h = 0; h < n; ++h) m.set(h, g.mul(z, h), 1.0);
    action.push_back(m.toSparse());
  }
  AlgebraObject a{gp, build_module(g, n, std::vector<Element>(n, 0), std::move(action), "A"), MonomialMatrixXcd(n, n * n),
                  Eigen::VectorXcd::Ones(n), {}};
  for (Element h = 0; h < n; ++h) a.mult.set(h * n + h, h, 1.0);
  for (Element x = 0; x < n; ++x) {
    MonomialMatrixXcd p(n, n);
    for (Element h = 0; h < n; ++h) p.set(h, g.mul(h, g.inv(x)), 1.0);
    a.automorphism.push_back(std::move(p));
  }

  const auto id = MonomialMatrixXcd::Identity(n);
  const auto swap = swap_factors<cd>(n, n);
  require((a.mult * swap).isApprox(a.mult, kExact), "A is not commutative");
  require((a.mult * kron(a.mult, id)).isApprox(a.mult * kron(id, a.mult), kExact), "A is not associative");
  for (Element k = 0; k < n; ++k) {
    Eigen::VectorXcd left = Eigen::VectorXcd::Zero(n * n), right = Eigen::VectorXcd::Zero(n * n);
    for (Element h = 0; h < n; ++h) {
      left(h * n + k) = a.unit(h);
      right(k * n + h) = a.unit(h);
    }
    Eigen::VectorXcd e = Eigen::VectorXcd::Unit(n, k);
    require(((a.mult * left) - e).cwiseAbs().maxCoeff() <= kExact && ((a.mult * right) - e).cwiseAbs().maxCoeff() <= kExact,
            "unit law fails at delta_" + std::to_string(k));
  }

  std::vector<MonomialMatrixXcd> act;
  for (const auto& s : a.underlying.action) act.push_back(MonomialMatrixXcd::fromSparse(s));
  for (Element z = 0; z < n; ++z)
    require((a.mult * kron(act[z], act[z])).isApprox(act[z] * a.mult, kExact),
            "multiplication does not commute with the action of " + std::to_string(z));
  for (Eigen::Index c = 0; c < a.mult.cols(); ++c) {
    const auto r = a.mult.row_of(c);
    if (r >= 0)
      require(a.underlying.weight[r] == g.mul(a.underlying.weight[c / n], a.underlying.weight[c % n]),
              "multiplication does not preserve weights");
  }

  for (Element x = 0; x < n; ++x) {
    const auto& p = a.automorphism[x];
    require((p * a.mult).isApprox(a.mult * kron(p, p), kExact), "pi_" + std::to_string(x) + " is not multiplicative");
    require(((p * a.unit) - a.unit).cwiseAbs().maxCoeff() <= kExact, "pi_" + std::to_string(x) + " moves the unit");
    for (Element z = 0; z < n; ++z)
      require((p * act[z]).isApprox(act[z] * p, kExact), "pi_" + std::to_string(x) + " is not a module map");
    for (Element h = 0; h < n; ++h)
      require(a.underlying.weight[p.row_of(h)] == a.underlying.weight[h], "pi_" + std::to_string(x) + " moves weights");
    for (Element y = 0; y < n; ++y)
      require((p * a.automorphism[y]).isApprox(a.automorphism[g.mul(x, y)], kExact),
              "pi is not a left action at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  }

  std::vector<MonomialMatrixXcd> gens;
  for (Element z : g.generators()) gens.push_back(a.automorphism[z]);
  const auto inv = monomial_invariants(gens, std::vector<bool>(n, true), kExact);
  require(inv.size() == 1 && (Eigen::VectorXcd(inv[0]) - a.unit).cwiseAbs().maxCoeff() <= kExact,
          "A^G is not the line through the unit");

  for (Element h = 0; h < n; ++h) {
    const SparseXcd& t = a.underlying.action[a.underlying.weight[h]];
    require(std::abs(t.coeff(h, h) - 1.0) <= kExact, "theta_A is not the identity");
  }
  const SparseXcd r = braiding(g, a.underlying, a.underlying);
  SparseXcd one(n * n, n * n);
  one.setIdentity();
  require(max_abs_diff(r * r, one) <= kExact, "double braiding of A with itself is not the identity");
  return a;
}

Eigen::MatrixXcd untwisted_trace_table(const QuantumDouble& qd, const AlgebraObject& a) {
  const int n = a.dimension();
  const auto& pairs = qd.commuting_pairs();
  std::vector<MonomialMatrixXcd> act;
  for (const auto& s : a.underlying.action) act.push_back(MonomialMatrixXcd::fromSparse(s));
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(pairs.size()));
  for (Element k = 0; k < n; ++k)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [x, b] = pairs[p];
      cd s = 0.0;
      for (Element i = 0; i < n; ++i) {
        if (a.underlying.weight[i] != b) continue;
        const auto mid = act[x].row_of(i);
        if (mid < 0 || a.automorphism[k].row_of(mid) != i) continue;
        s += a.automorphism[k].coeff(mid) * act[x].coeff(i);
      }
      t(k, static_cast<Eigen::Index>(p)) = s;
    }
  return t;
}

UntwistedDecomposition decompose_A(const QuantumDoublePtr& qd, const AlgebraObject& a) {
  const GroupTable& g = qd->group();
  const int n = g.order();
  const CharacterTable& t = qd->group_table();
  UntwistedDecomposition out;
  out.double_multiplicities = decompose_module(qd, a.underlying).multiplicities;
  for (int s = 0; s < qd->simple_count(); ++s) {
    const DoubleSimple& x = qd->simples()[s];
    const int expected = x.class_index == 0 ? t.degrees[x.pi] : 0;
    require(out.double_multiplicities[s] == expected,
            "simple " + std::to_string(s) + " occurs " + std::to_string(out.double_multiplicities[s]) + " times in A");
  }

  const Eigen::MatrixXcd trace = untwisted_trace_table(*qd, a);
  std::vector<bool> used(qd->simple_count(), false);
  int total = 0;
  for (int l = 0; l < t.count(); ++l) {
    DoubleCharacter m{qd, Eigen::VectorXcd::Zero(trace.cols())};
    for (Element k = 0; k < n; ++k) m.values += std::conj(t.value(l, k)) * trace.row(k).transpose();
    m.values /= static_cast<double>(n);
    const DoubleDecomposition d = decompose_character(m);
    int s = -1, count = 0;
    for (int i = 0; i < qd->simple_count(); ++i) {
      count += d.multiplicities[i];
      if (d.multiplicities[i] == 1) s = i;
    }
    require(count == 1 && s >= 0, "M_" + std::to_string(l) + " is not simple");
    require(!used[s], "M_" + std::to_string(l) + " repeats an earlier M");
    used[s] = true;
    out.m_lambda.push_back(s);
    out.block_dimensions.push_back(t.degrees[l] * qd->simples()[s].dim);
    total += out.block_dimensions.back();
  }
  require(total == n, "bimodule blocks do not fill A");
  return out;
}

DoubleDecomposition untwisted_phi(const QuantumDoublePtr& qd, const Eigen::MatrixXcd& trace_table, const ClassFunction& v) {
  const int n = qd->group().order();
  DoubleCharacter x{qd, Eigen::VectorXcd::Zero(trace_table.cols())};
  for (Element k = 0; k < n; ++k) x.values += v.values(v.classes->class_of[k]) * trace_table.row(k).transpose();
  x.values /= static_cast<double>(n);
  return decompose_character(x);
}

std::vector<Eigen::MatrixXcd> realize_irrep(const CharacterTable& t, int i, unsigned long long seed) {
  const GroupTable& g = t.group();
  const int n = g.order();
  const int d = t.degrees[i];
  std::vector<Eigen::MatrixXcd> rho;
  if (d == 1) {
    for (Element x = 0; x < n; ++x) rho.push_back(Eigen::MatrixXcd::Constant(1, 1, t.value(i, x)));
    return rho;
  }
  std::vector<Eigen::MatrixXcd> left, right;
  for (Element x = 0; x < n; ++x) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n), r = Eigen::MatrixXcd::Zero(n, n);
    for (Element h = 0; h < n; ++h) {
      l(g.mul(x, h), h) = 1.0;
      r(g.mul(h, g.inv(x)), h) = 1.0;
    }
    left.push_back(std::move(l));
    right.push_back(std::move(r));
  }
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (Element x = 0; x < n; ++x) p += std::conj(t.value(i, x)) * left[x];
  p *= static_cast<double>(d) / n;
  const Eigen::MatrixXcd q = projector_image(p);
  if (q.cols() != d * d) throw ConsistencyError("isotypic component has the wrong dimension");

  for (int attempt = 0; attempt < 16; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<unsigned long long>(attempt));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (Element x = 0; x < n; ++x) {
      const double re = unif(rng), im = unif(rng);
      h += cd(re, im) * right[x];
    }
    h += h.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q.adjoint() * h * q);
    const auto& ev = es.eigenvalues();
    if (ev(d - 1) - ev(0) > 1e-8 || ev(d) - ev(d - 1) < 1e-6) continue;
    const Eigen::MatrixXcd u = q * es.eigenvectors().leftCols(d);
    rho.clear();
    for (Element x = 0; x < n; ++x) rho.push_back(u.adjoint() * left[x] * u);
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) {
      ok = std::abs(rho[x].trace() - t.value(i, x)) <= 1e-8;
      for (Element y = 0; y < n && ok; ++y) ok = (rho[x] * rho[y] - rho[g.mul(x, y)]).cwiseAbs().maxCoeff() <= 1e-8;
    }
    if (ok) return rho;
  }
  throw ConsistencyError("could not split the isotypic component of character " + std::to_string(i));
}

std::vector<Eigen::MatrixXcd> tensor_representation(const std::vector<Eigen::MatrixXcd>& rho,
                                                    const std::vector<Eigen::MatrixXcd>& sigma) {
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t x = 0; x < rho.size(); ++x) out.push_back(kron_dense(rho[x], sigma[x]));
  return out;
}

PhiSpace explicit_phi(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho) {
  const int n = a.dimension();
  PhiSpace out;
  out.rep_dimension = static_cast<int>(rho[0].rows());
  out.basis = phi_subspace(a, rho);
  const auto& pairs = qd->commuting_pairs();
  DoubleCharacter x{qd, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pairs.size()))};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(out.rep_dimension, out.rep_dimension);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [z, b] = pairs[p];
    Eigen::MatrixXcd op = Eigen::MatrixXcd(a.underlying.action[z]);
    for (Element h = 0; h < n; ++h)
      if (a.underlying.weight[h] != b) op.col(h).setZero();
    x.values(static_cast<Eigen::Index>(p)) = (out.basis.adjoint() * kron_dense(id, op) * out.basis).trace();
  }
  out.decomposition = decompose_character(x);
  return out;
}

JReport j_morphism(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& v,
                   const std::vector<Eigen::MatrixXcd>& w) {
  (void)qd;
  const int n = a.dimension();
  const auto dv = v[0].rows(), dw = w[0].rows();
  const Eigen::MatrixXcd bv = phi_subspace(a, v), bw = phi_subspace(a, w);
  const Eigen::MatrixXcd pt = invariant_projector(a, tensor_representation(v, w));
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dv * dw * n, bv.cols() * bw.cols());
  for (Eigen::Index p = 0; p < bv.cols(); ++p)
    for (Eigen::Index q = 0; q < bw.cols(); ++q)
      for (Eigen::Index i = 0; i < dv; ++i)
        for (Eigen::Index k = 0; k < dw; ++k)
          for (Element h = 0; h < n; ++h) j((i * dw + k) * n + h, p * bw.cols() + q) = bv(i * n + h, p) * bw(k * n + h, q);
  JReport r;
  r.source_dimension = static_cast<int>(j.cols());
  r.target_dimension = static_cast<int>(projector_image(pt).cols());
  r.rank = numeric_rank(j);
  r.containment_residual = j.size() ? (pt * j - j).cwiseAbs().maxCoeff() : 0.0;
  r.injective = r.rank == r.source_dimension && r.containment_residual <= 1e-8;
  r.isomorphism = r.injective && r.rank == r.target_dimension;
  require(r.injective, "J has rank " + std::to_string(r.rank) + " on a source of dimension " +
                           std::to_string(r.source_dimension));
  return r;
}

PairingReport duality_pairing(const QuantumDoublePtr& qd, const AlgebraObject& a, const std::vector<Eigen::MatrixXcd>& rho,
                              double threshold) {
  (void)qd;
  const int n = a.dimension();
  std::vector<Eigen::MatrixXcd> dual;
  for (const auto& m : rho) dual.push_back(m.conjugate());
  const Eigen::MatrixXcd bd = phi_subspace(a, dual), bv = phi_subspace(a, rho);
  const auto d = rho[0].rows();
  PairingReport r;
  r.matrix = Eigen::MatrixXcd::Zero(bd.cols(), bv.cols());
  for (Eigen::Index p = 0; p < bd.cols(); ++p)
    for (Eigen::Index q = 0; q < bv.cols(); ++q) {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Element h = 0; h < n; ++h) c(h) += bd(i * n + h, p) * bv(i * n + h, q);
      const cd mean = c.mean();
      r.invariance_residual = std::max(r.invariance_residual, (c.array() - mean).abs().maxCoeff());
      r.matrix(p, q) = mean;
    }
  r.smallest_singular_value = smallest_singular_value(r.matrix);
  r.perfect = r.matrix.rows() == r.matrix.cols() && r.smallest_singular_value >= threshold && r.invariance_residual <= 1e-8;
  return r;
}

SimpleCurrentReport simple_currents(const QuantumDoublePtr& qd, const AlgebraObject& a, const FusionTensor& f) {
  const GroupTable& g = qd->group();
  SimpleCurrentReport r;
  if (!g.is_abelian()) return r;
  r.applicable = true;
  const CharacterTable& t = qd->group_table();
  const int m = t.count();
  std::vector<std::vector<Eigen::MatrixXcd>> rho;
  r.realized = true;
  for (int l = 0; l < m; ++l) {
    rho.push_back(realize_irrep(t, l));
    const PhiSpace phi = explicit_phi(qd, a, rho.back());
    int s = -1, count = 0;
    for (int i = 0; i < qd->simple_count(); ++i) {
      count += phi.decomposition.multiplicities[i];
      if (phi.decomposition.multiplicities[i] == 1) s = i;
    }
    if (count != 1) r.realized = false;
    r.phi_simple.push_back(s);
  }
  for (int l = 0; l < m; ++l) {
    r.dual_group_product.emplace_back();
    r.fusion_coefficient.emplace_back();
    for (int k = 0; k < m; ++k) {
      const Eigen::RowVectorXcd prod = t.chars.row(l).cwiseProduct(t.chars.row(k));
      int lk = -1;
      for (int c = 0; c < m; ++c)
        if ((t.chars.row(c) - prod).cwiseAbs().maxCoeff() <= 1e-8) lk = c;
      r.dual_group_product.back().push_back(lk);
      const int coeff = lk < 0 || r.phi_simple[l] < 0 || r.phi_simple[k] < 0 || r.phi_simple[lk] < 0
                            ? 0
                            : f(r.phi_simple[l], r.phi_simple[k], r.phi_simple[lk]);
      r.fusion_coefficient.back().push_back(coeff);
      const JReport j = j_morphism(qd, a, rho[l], rho[k]);
      if (coeff != 1 || j.rank != 1 || !j.isomorphism) r.realized = false;
    }
  }
  return r;
}

}  // namespace qdouble
