#include "qdouble/orbifold/sectors.hpp"

#include <set>
#include <string>

#include "qdouble/errors.hpp"

namespace qdouble {

namespace {

using SparseXcd = Eigen::SparseMatrix<cd>;
constexpr double kExact = 1e-10;

void require(bool ok, const std::string& what) {
  if (!ok) throw TheoremViolation(what);
}

SparseXcd diagonal(const std::vector<cd>& d) {
  std::vector<Eigen::Triplet<cd>> t;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != cd(0.0)) t.emplace_back(static_cast<int>(i), static_cast<int>(i), d[i]);
  SparseXcd m(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Operator of delta_h under an A-action d x |G| d, as a diagonal.
std::vector<cd> projection_diagonal(const MonomialMatrixXcd& action, Element h) {
  const auto d = action.rows();
  std::vector<cd> out(static_cast<std::size_t>(d), cd(0.0));
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto r = action.row_of(h * d + j);
    if (r < 0) continue;
    if (r != j) throw TheoremViolation("delta_" + std::to_string(h) + " does not act diagonally");
    out[j] = action.coeff(h * d + j);
  }
  return out;
}

std::vector<cd> kron_diagonal(const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> out;
  out.reserve(a.size() * b.size());
  for (const cd& x : a)
    for (const cd& y : b) out.push_back(x * y);
  return out;
}

}  // namespace

TwistedSector build_X(const AlgebraObject& a, Element g0) {
  const GroupTable& g = *a.group;
  const int n = g.order();
  TwistedSector x;
  x.g = g0;
  std::vector<Element> weight(n);
  for (Element y = 0; y < n; ++y) {
    x.basis.emplace_back(g.conj(y, g0), y);
    weight[y] = x.basis[y].first;
  }
  std::vector<SparseXcd> action;
  for (Element z = 0; z < n; ++z) {
    MonomialMatrixXcd m(n, n);
    for (Element y = 0; y < n; ++y) m.set(y, g.mul(z, y), 1.0);
    action.push_back(m.toSparse());
  }
  x.module = build_module(g, n, std::move(weight), std::move(action), "X_" + std::to_string(g0));
  x.a_action = MonomialMatrixXcd(n, n * n);
  for (Element y = 0; y < n; ++y) x.a_action.set(y * n + y, y, 1.0);

  const std::string name = "X_" + std::to_string(g0);
  std::set<Element> firsts, cls;
  for (const auto& [p, y] : x.basis) {
    require(g.mul(g.mul(g.inv(y), p), y) == g0, name + " has a basis pair outside y^-1 x y = g");
    firsts.insert(p);
  }
  for (Element k = 0; k < n; ++k) cls.insert(g.conj(k, g0));
  require(static_cast<int>(x.basis.size()) == n && firsts == cls, name + " basis census fails");

  const auto id = MonomialMatrixXcd::Identity(n);
  require((x.a_action * kron(a.mult, id)).isApprox(x.a_action * kron(MonomialMatrixXcd::Identity(n), x.a_action), kExact),
          name + " A-action is not associative");
  for (Element j = 0; j < n; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
    for (Element h = 0; h < n; ++h) v(h * n + j) = a.unit(h);
    require(((x.a_action * v) - Eigen::VectorXcd::Unit(n, j)).cwiseAbs().maxCoeff() <= kExact, name + " unit acts nontrivially");
    for (Element h = 0; h < n; ++h) {
      const bool fixed = x.a_action.row_of(h * n + j) == j && std::abs(x.a_action.coeff(h * n + j) - 1.0) <= kExact;
      const bool zero = x.a_action.row_of(h * n + j) < 0;
      require(h == j ? fixed : zero, name + ": delta_h fixes e_(x,y) only for h = y");
    }
  }
  for (Element z = 0; z < n; ++z) {
    const auto ax = MonomialMatrixXcd::fromSparse(x.module.action[z]);
    const auto aa = MonomialMatrixXcd::fromSparse(a.underlying.action[z]);
    require((x.a_action * kron(aa, ax)).isApprox(ax * x.a_action, kExact), name + " A-action is not D(G)-equivariant");
  }
  for (Eigen::Index c = 0; c < x.a_action.cols(); ++c) {
    const auto r = x.a_action.row_of(c);
    if (r >= 0)
      require(x.module.weight[r] == g.mul(a.underlying.weight[c / n], x.module.weight[c % n]),
              name + " A-action does not preserve weights");
  }
  const double res = twisted_residual(a, x.module, x.a_action, g0);
  require(res <= kExact, name + " violates the twisted condition by " + std::to_string(res));
  return x;
}

double twisted_residual(const AlgebraObject& a, const DoubleModule& x, const MonomialMatrixXcd& a_action, Element t) {
  const GroupTable& g = *a.group;
  const SparseXcd r2 = braiding(g, x, a.underlying) * braiding(g, a.underlying, x);
  const SparseXcd lhs = a_action.toSparse() * r2;
  const SparseXcd rhs = (a_action * kron(a.automorphism[g.inv(t)], MonomialMatrixXcd::Identity(x.dimension))).toSparse();
  return max_abs_diff(lhs, rhs);
}

Element detect_twist(const AlgebraObject& a, const DoubleModule& x, const MonomialMatrixXcd& a_action, double tol) {
  std::vector<Element> hits;
  for (Element t = 0; t < a.group->order(); ++t)
    if (twisted_residual(a, x, a_action, t) <= tol) hits.push_back(t);
  if (hits.size() != 1)
    throw NotASimpleSectorError("module is twisted by " + std::to_string(hits.size()) + " group elements");
  return hits[0];
}

MonomialMatrixXcd precompose_action(const AlgebraObject& a, const MonomialMatrixXcd& a_action, Element h) {
  const auto d = a_action.rows();
  return a_action * kron(a.automorphism[h], MonomialMatrixXcd::Identity(d));
}

MonomialMatrixXcd right_action(const AlgebraObject& a, const TwistedSector& x) {
  const auto r = MonomialMatrixXcd::fromSparse(braiding(*a.group, a.underlying, x.module));
  return x.a_action * r.inverse();
}

MonomialMatrixXcd mu_tilde(const GroupTable& g, const TwistedSector& x, const TwistedSector& y, const TwistedSector& xy) {
  const auto n = static_cast<Eigen::Index>(x.basis.size());
  MonomialMatrixXcd m(n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto [x1, y1] = x.basis[i];
      const auto [x2, y2] = y.basis[j];
      if (y1 != y2) continue;
      if (xy.basis[y1] != std::pair<Element, Element>(g.mul(x1, x2), y1))
        throw ConsistencyError("product sector has no basis vector e_(x1 x2, y)");
      m.set(i * n + j, y1, 1.0);
    }
  return m;
}

MuTildeReport check_mu_tilde(const AlgebraObject& a, const TwistedSector& x, const TwistedSector& y,
                             const TwistedSector& xy, const MonomialMatrixXcd& mu) {
  const GroupTable& g = *a.group;
  const int n = g.order();
  const std::string name = "mu_(" + std::to_string(x.g) + "," + std::to_string(y.g) + ")";
  std::vector<LinearCondition> conds;

  std::vector<cd> wt(n), wsrc;
  for (int i = 0; i < n; ++i) wt[i] = static_cast<double>(xy.module.weight[i]) + 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) wsrc.emplace_back(static_cast<double>(g.mul(x.module.weight[i], y.module.weight[j])) + 1.0);
  conds.push_back({diagonal(wt), diagonal(wsrc)});

  const std::vector<cd> ones(n, cd(1.0));
  const MonomialMatrixXcd rx = right_action(a, x);
  for (Element h = 0; h < n; ++h) {
    const auto lt = projection_diagonal(xy.a_action, h);
    const auto lx = projection_diagonal(x.a_action, h);
    const auto ly = projection_diagonal(y.a_action, h);
    std::vector<cd> rxh(n, cd(0.0));
    for (Element j = 0; j < n; ++j) {
      const auto r = rx.row_of(j * n + h);
      if (r < 0) continue;
      if (r != j) throw TheoremViolation(name + ": right action of delta_h is not diagonal");
      rxh[j] = rx.coeff(j * n + h);
    }
    conds.push_back({diagonal(lt), diagonal(kron_diagonal(lx, ones))});
    std::vector<cd> bal = kron_diagonal(rxh, ones);
    const auto rhs = kron_diagonal(ones, ly);
    for (std::size_t k = 0; k < bal.size(); ++k) bal[k] -= rhs[k];
    conds.push_back({SparseXcd(n, n), diagonal(bal)});
  }
  for (Element z : g.generators()) {
    const auto ax = MonomialMatrixXcd::fromSparse(x.module.action[z]);
    const auto ay = MonomialMatrixXcd::fromSparse(y.module.action[z]);
    conds.push_back({xy.module.action[z], kron(ax, ay).toSparse()});
  }

  MuTildeReport r;
  const HomSpace hom = hom_space(n, static_cast<Eigen::Index>(n) * n, conds);
  r.hom_dimension = hom.dimension;
  const Eigen::MatrixXcd m = mu.toDense();
  Eigen::MatrixXcd proj = m;
  for (const auto& b : hom.basis) proj -= (b.conjugate().cwiseProduct(m)).sum() * b;
  r.formula_residual = proj.cwiseAbs().maxCoeff();

  const MonomialMatrixXcd p = kron(rx, MonomialMatrixXcd::Identity(n));
  const MonomialMatrixXcd q = kron(MonomialMatrixXcd::Identity(n), y.a_action);
  r.quotient_dimension = n * n - static_cast<int>(difference_rank(p, q, kExact));
  r.isomorphism = (mu * p).isApprox(mu * q, kExact) && r.quotient_dimension == n && mu.rank() == n;

  require(r.hom_dimension == 1, name + " Hom space has dimension " + std::to_string(r.hom_dimension));
  require(r.formula_residual <= 1e-8, name + " explicit formula is not in the Hom space");
  require(r.isomorphism, name + " does not descend to an isomorphism on the balanced tensor product");
  return r;
}

MonomialMatrixXcd phi_map(const GroupTable& g, const TwistedSector& x, const TwistedSector& target, Element h) {
  const int n = g.order();
  MonomialMatrixXcd m(n, n);
  for (Element b = 0; b < n; ++b) {
    const Element row = g.mul(x.basis[b].second, g.inv(h));
    if (target.basis[row].second != row || target.basis[row].first != x.basis[b].first)
      throw ConsistencyError("phi target sector does not contain e_(a, b h^-1)");
    m.set(b, row, 1.0);
  }
  return m;
}

}  // namespace qdouble
