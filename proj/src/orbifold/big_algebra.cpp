#include "qdouble/orbifold/big_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qdouble/errors.hpp"

namespace qdouble {

namespace {

using SparseXcd = Eigen::SparseMatrix<cd>;
constexpr double kExact = 1e-10;

void require(bool ok, const std::string& what) {
  if (!ok) throw TheoremViolation(what);
}

/// Weight read off a family of weight projections: the h whose projection fixes u.
std::vector<Element> weights_of(const std::vector<MonomialMatrixXcd>& deltas) {
  const auto d = deltas.empty() ? 0 : deltas[0].cols();
  std::vector<Element> w(static_cast<std::size_t>(d), -1);
  for (Element h = 0; h < static_cast<Element>(deltas.size()); ++h)
    for (Eigen::Index u = 0; u < d; ++u)
      if (deltas[h].row_of(u) == u) {
        if (w[u] >= 0) throw TheoremViolation("basis vector lies in two weight spaces");
        w[u] = h;
      }
  return w;
}

/// Checks the relations of D(G) for g -> act[g], delta_h -> proj[h].
bool double_relations(const GroupTable& g, const std::vector<MonomialMatrixXcd>& act,
                      const std::vector<MonomialMatrixXcd>& proj) {
  const int n = g.order();
  const auto d = act[0].cols();
  if (!act[0].isApprox(MonomialMatrixXcd::Identity(d), kExact)) return false;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!(act[a] * act[b]).isApprox(act[g.mul(a, b)], kExact)) return false;
      const MonomialMatrixXcd pp = proj[a] * proj[b];
      if (a == b ? !pp.isApprox(proj[a], kExact) : !pp.isApprox(MonomialMatrixXcd(d, d), kExact)) return false;
      if (!(act[a] * proj[b] * act[g.inv(a)]).isApprox(proj[g.conj(a, b)], kExact)) return false;
    }
  for (Eigen::Index u = 0; u < d; ++u) {
    int fixed = 0;
    for (Element h = 0; h < n; ++h)
      if (proj[h].row_of(u) == u && std::abs(proj[h].coeff(u) - 1.0) <= kExact) ++fixed;
    if (fixed != 1) return false;
  }
  return true;
}

bool commute(const std::vector<MonomialMatrixXcd>& a, const std::vector<MonomialMatrixXcd>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (!(x * y).isApprox(y * x, kExact)) return false;
  return true;
}

long long to_integer(const cd& c) {
  const double r = std::round(c.real());
  if (std::abs(c - cd(r, 0.0)) > kExact) throw ConsistencyError("coefficient is not an integer");
  return static_cast<long long>(r);
}

}  // namespace

MonomialMatrixXcd BigAlgebra::total_product() const {
  const int n = order();
  const Eigen::Index dim = dimension();
  MonomialMatrixXcd m(dim, dim * dim);
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h) {
      const MonomialMatrixXcd& mu_gh = mu[g * n + h];
      const Element gh = group->mul(g, h);
      for (Element y1 = 0; y1 < n; ++y1)
        for (Element y2 = 0; y2 < n; ++y2) {
          const auto r = mu_gh.row_of(y1 * n + y2);
          if (r >= 0) m.set(index(g, y1) * dim + index(h, y2), index(gh, static_cast<Element>(r)), mu_gh.coeff(y1 * n + y2));
        }
    }
  return m;
}

Eigen::VectorXcd BigAlgebra::unit() const {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(dimension());
  for (Element y = 0; y < order(); ++y) u(index(0, y)) = 1.0;
  return u;
}

BigAlgebra build_A_tilde(const AlgebraObject& a) {
  const GroupTable& g = *a.group;
  const int n = g.order();
  BigAlgebra at;
  at.group = a.group;
  for (Element x = 0; x < n; ++x) at.sectors.push_back(build_X(a, x));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) at.mu.push_back(mu_tilde(g, at.sectors[x], at.sectors[y], at.sectors[g.mul(x, y)]));
  for (Element x = 0; x < n; ++x)
    for (Element z = 0; z < n; ++z) at.phi.push_back(phi_map(g, at.sectors[x], at.sectors[g.conj(z, x)], z));

  const int dim = at.dimension();
  for (Element z = 0; z < n; ++z) {
    MonomialMatrixXcd p1(dim, dim), d1(dim, dim), p2(dim, dim), d2(dim, dim);
    for (Element x = 0; x < n; ++x) {
      const MonomialMatrixXcd& ph = at.phi[x * n + z];
      const TwistedSector& s = at.sectors[x];
      const SparseXcd& act = s.module.action[z];
      for (Element b = 0; b < n; ++b) {
        p1.set(at.index(x, b), at.index(g.conj(z, x), static_cast<Element>(ph.row_of(b))), ph.coeff(b));
        if (x == z) d1.set(at.index(x, b), at.index(x, b), 1.0);
        for (SparseXcd::InnerIterator it(act, b); it; ++it)
          p2.set(at.index(x, b), at.index(x, static_cast<Element>(it.row())), it.value());
        if (s.module.weight[b] == z) d2.set(at.index(x, b), at.index(x, b), 1.0);
      }
    }
    at.pi1.push_back(std::move(p1));
    at.pi1_delta.push_back(std::move(d1));
    at.pi2.push_back(std::move(p2));
    at.pi2_delta.push_back(std::move(d2));
  }
  require(at.dimension() == n * n, "A-tilde does not have dimension |G|^2");
  return at;
}

DoubleModule a_tilde_module(const BigAlgebra& at) {
  std::vector<SparseXcd> action;
  for (const auto& p : at.pi2) action.push_back(p.toSparse());
  std::vector<Element> weight;
  for (const auto& s : at.sectors) weight.insert(weight.end(), s.module.weight.begin(), s.module.weight.end());
  return build_module(*at.group, at.dimension(), std::move(weight), std::move(action), "A-tilde");
}

cd coboundary(const GroupTable& g, const std::vector<cd>& f, Element a, Element b, Element c) {
  const int n = g.order();
  auto fv = [&](Element x, Element y) { return f.empty() ? cd(1.0) : f[static_cast<std::size_t>(x) * n + y]; };
  return fv(a, g.mul(b, c)) * fv(b, c) / (fv(g.mul(a, b), c) * fv(a, b));
}

cd omega_value(const BigAlgebra& at, Element g, Element h, Element k, const std::vector<cd>& f) {
  const GroupTable& grp = *at.group;
  const int n = at.order();
  auto fv = [&](Element x, Element y) { return f.empty() ? cd(1.0) : f[static_cast<std::size_t>(x) * n + y]; };
  const Element hk = grp.mul(h, k), gh = grp.mul(g, h);
  const MonomialMatrixXcd& m_hk = at.mu[h * n + k];
  const MonomialMatrixXcd& m_g_hk = at.mu[g * n + hk];
  const MonomialMatrixXcd& m_gh = at.mu[g * n + h];
  const MonomialMatrixXcd& m_gh_k = at.mu[gh * n + k];
  const cd scale_l = fv(h, k) * fv(g, hk), scale_r = fv(g, h) * fv(gh, k);
  bool found = false;
  cd ratio = 0.0;
  for (Element y1 = 0; y1 < n; ++y1)
    for (Element y2 = 0; y2 < n; ++y2)
      for (Element y3 = 0; y3 < n; ++y3) {
        Eigen::Index rl = -1, rr = -1;
        cd cl = 0.0, cr = 0.0;
        const auto inner_l = m_hk.row_of(y2 * n + y3);
        if (inner_l >= 0) {
          rl = m_g_hk.row_of(y1 * n + inner_l);
          if (rl >= 0) cl = scale_l * m_hk.coeff(y2 * n + y3) * m_g_hk.coeff(y1 * n + inner_l);
        }
        const auto inner_r = m_gh.row_of(y1 * n + y2);
        if (inner_r >= 0) {
          rr = m_gh_k.row_of(inner_r * n + y3);
          if (rr >= 0) cr = scale_r * m_gh.coeff(y1 * n + y2) * m_gh_k.coeff(inner_r * n + y3);
        }
        if (rl < 0 && rr < 0) continue;
        if (rl != rr || rl < 0 || rr < 0) throw ConsistencyError("triple products of sectors are not proportional");
        const cd q = cl / cr;
        if (found && std::abs(q - ratio) > kExact) throw ConsistencyError("triple products of sectors are not proportional");
        ratio = q;
        found = true;
      }
  if (!found) throw ConsistencyError("triple product vanishes identically");
  return ratio;
}

OmegaReport omega_check(const BigAlgebra& at, unsigned long long seed, int samples, double tol) {
  const GroupTable& g = *at.group;
  const int n = at.order();
  const auto n3 = static_cast<std::size_t>(n) * n * n;
  auto idx = [n](Element a, Element b, Element c) { return (static_cast<std::size_t>(a) * n + b) * n + c; };
  auto defect = [&](auto&& w, Element a, Element b, Element c, Element d) {
    return std::abs(w(b, c, d) * w(a, g.mul(b, c), d) * w(a, b, c) - w(g.mul(a, b), c, d) * w(a, b, g.mul(c, d)));
  };
  OmegaReport r;

  std::vector<cd> canon(n3);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) {
        canon[idx(a, b, c)] = omega_value(at, a, b, c);
        r.canonical_deviation = std::max(r.canonical_deviation, std::abs(canon[idx(a, b, c)] - 1.0));
      }
  auto w0 = [&](Element a, Element b, Element c) { return canon[idx(a, b, c)]; };
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        for (Element d = 0; d < n; ++d) r.canonical_cocycle_defect = std::max(r.canonical_cocycle_defect, defect(w0, a, b, c, d));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<cd> f(static_cast<std::size_t>(n) * n);
  for (auto& x : f) x = std::polar(1.0, angle(rng));
  auto wf = [&](Element a, Element b, Element c) { return omega_value(at, a, b, c, f); };
  r.exhaustive = n <= 8;
  if (r.exhaustive) {
    std::vector<cd> table(n3);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) {
          table[idx(a, b, c)] = wf(a, b, c);
          r.rescaled_coboundary_defect =
              std::max(r.rescaled_coboundary_defect, std::abs(table[idx(a, b, c)] - canon[idx(a, b, c)] * coboundary(g, f, a, b, c)));
          ++r.triples_checked;
        }
    auto wt = [&](Element a, Element b, Element c) { return table[idx(a, b, c)]; };
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          for (Element d = 0; d < n; ++d) {
            r.rescaled_cocycle_defect = std::max(r.rescaled_cocycle_defect, defect(wt, a, b, c, d));
            ++r.quadruples_checked;
          }
  } else {
    std::uniform_int_distribution<Element> pick(0, n - 1);
    for (int s = 0; s < samples; ++s) {
      const Element a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
      r.rescaled_coboundary_defect =
          std::max(r.rescaled_coboundary_defect, std::abs(wf(a, b, c) - canon[idx(a, b, c)] * coboundary(g, f, a, b, c)));
      ++r.triples_checked;
      r.rescaled_cocycle_defect = std::max(r.rescaled_cocycle_defect, defect(wf, a, b, c, d));
      ++r.quadruples_checked;
    }
  }
  require(r.canonical_deviation <= tol, "canonical omega differs from 1 by " + std::to_string(r.canonical_deviation));
  require(r.canonical_cocycle_defect <= tol, "canonical omega violates the cocycle identity");
  require(r.rescaled_coboundary_defect <= tol, "rescaled omega is not omega times the coboundary");
  require(r.rescaled_cocycle_defect <= tol, "rescaled omega violates the cocycle identity");
  return r;
}

PhiMapReport check_phi_maps(const AlgebraObject& a, const BigAlgebra& at) {
  const GroupTable& g = *at.group;
  const int n = at.order();
  PhiMapReport r;
  auto phi = [&](Element x, Element z) -> const MonomialMatrixXcd& { return at.phi[x * n + z]; };
  const auto id = MonomialMatrixXcd::Identity(n);
  for (Element x = 0; x < n; ++x) {
    require(phi(x, 0).isApprox(id, kExact), "phi_" + std::to_string(x) + "(1) is not the identity");
    for (Element z = 0; z < n; ++z) {
      const Element t = g.conj(z, x);
      for (Element h = 0; h < n; ++h) {
        require((phi(t, h) * phi(x, z)).isApprox(phi(x, g.mul(h, z)), kExact),
                "phi composition law fails at (" + std::to_string(x) + "," + std::to_string(z) + "," + std::to_string(h) + ")");
        ++r.composition_instances;
      }
      const TwistedSector& src = at.sectors[x];
      const TwistedSector& dst = at.sectors[t];
      require((phi(x, z) * src.a_action).isApprox(dst.a_action * kron(a.automorphism[z], phi(x, z)), kExact),
              "phi_" + std::to_string(x) + "(" + std::to_string(z) + ") is not twisted A-linear");
      for (Element w : g.generators()) {
        const auto as = MonomialMatrixXcd::fromSparse(src.module.action[w]);
        const auto ad = MonomialMatrixXcd::fromSparse(dst.module.action[w]);
        require((phi(x, z) * as).isApprox(ad * phi(x, z), kExact), "phi is not a map in Rep D(G)");
      }
      for (Element b = 0; b < n; ++b)
        require(dst.module.weight[phi(x, z).row_of(b)] == src.module.weight[b], "phi moves weights");
      for (Element y = 0; y < n; ++y) {
        const Element ty = g.conj(z, y);
        require((phi(g.mul(x, y), z) * at.mu[x * n + y]).isApprox(at.mu[t * n + ty] * kron(phi(x, z), phi(y, z)), kExact),
                "phi is not compatible with mu-tilde at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                    std::to_string(z) + ")");
        ++r.compatibility_instances;
      }
    }
  }
  r.phi_one_is_pi = true;
  for (Element z = 0; z < n; ++z) r.phi_one_is_pi = r.phi_one_is_pi && phi(0, z).isApprox(a.automorphism[z], kExact);
  require(r.phi_one_is_pi, "phi_1(g) differs from pi_g");
  return r;
}

ATildeReport check_A_tilde(const BigAlgebra& at) {
  const GroupTable& g = *at.group;
  const int n = at.order();
  const Eigen::Index dim = at.dimension();
  ATildeReport r;
  r.pi1_relations = double_relations(g, at.pi1, at.pi1_delta);
  require(r.pi1_relations, "pi1 is not a D(G)-module structure");
  r.pi2_relations = double_relations(g, at.pi2, at.pi2_delta);
  require(r.pi2_relations, "pi2 is not a D(G)-module structure");
  r.actions_commute = commute(at.pi1, at.pi2) && commute(at.pi1, at.pi2_delta) && commute(at.pi1_delta, at.pi2) &&
                      commute(at.pi1_delta, at.pi2_delta);
  require(r.actions_commute, "pi1 and pi2 do not commute");

  const std::vector<Element> w1 = weights_of(at.pi1_delta), w2 = weights_of(at.pi2_delta);
  const MonomialMatrixXcd m = at.total_product();
  const Eigen::VectorXcd unit = at.unit();
  r.pi1_multiplicative = true;
  for (Element z = 0; z < n && r.pi1_multiplicative; ++z)
    r.pi1_multiplicative = (m * kron(at.pi1[z], at.pi1[z])).isApprox(at.pi1[z] * m, kExact) &&
                           ((at.pi1[z] * unit) - unit).cwiseAbs().maxCoeff() <= kExact;
  for (Eigen::Index c = 0; c < m.cols() && r.pi1_multiplicative; ++c) {
    const auto row = m.row_of(c);
    if (row >= 0) r.pi1_multiplicative = w1[row] == g.mul(w1[c / dim], w1[c % dim]);
  }
  for (Element h = 0; h < n && r.pi1_multiplicative; ++h)
    r.pi1_multiplicative = ((at.pi1_delta[h] * unit) - (h == 0 ? unit : Eigen::VectorXcd::Zero(dim))).cwiseAbs().maxCoeff() <= kExact;
  require(r.pi1_multiplicative, "pi1 does not preserve mu-tilde through the coproduct");

  r.unital = true;
  for (Eigen::Index v = 0; v < dim && r.unital; ++v) {
    Eigen::VectorXcd left = Eigen::VectorXcd::Zero(dim), right = Eigen::VectorXcd::Zero(dim);
    for (Element y = 0; y < n; ++y) {
      const Eigen::Index u = at.index(0, y);
      if (m.row_of(u * dim + v) >= 0) left(m.row_of(u * dim + v)) += m.coeff(u * dim + v);
      if (m.row_of(v * dim + u) >= 0) right(m.row_of(v * dim + u)) += m.coeff(v * dim + u);
    }
    const Eigen::VectorXcd e = Eigen::VectorXcd::Unit(dim, v);
    r.unital = (left - e).cwiseAbs().maxCoeff() <= kExact && (right - e).cwiseAbs().maxCoeff() <= kExact;
  }
  require(r.unital, "A-tilde is not unital");

  std::vector<bool> support(static_cast<std::size_t>(dim));
  for (Eigen::Index u = 0; u < dim; ++u) support[u] = w1[u] == 0;
  std::vector<MonomialMatrixXcd> gens;
  for (Element z : g.generators()) gens.push_back(at.pi1[z]);
  const auto inv = monomial_invariants(gens, support, kExact);
  r.invariant_dimension = static_cast<int>(inv.size());
  require(r.invariant_dimension == 1 && (Eigen::VectorXcd(inv[0]) - unit).cwiseAbs().maxCoeff() <= kExact,
          "A-tilde^D(G) is not the line through the unit");

  MonomialMatrixXcd rd(dim * dim, dim * dim);
  for (Eigen::Index u = 0; u < dim; ++u)
    for (Eigen::Index v = 0; v < dim; ++v) {
      const MonomialMatrixXcd& p1 = at.pi1[w1[u]];
      const auto v1 = p1.row_of(v);
      const MonomialMatrixXcd& p2 = at.pi2[w2[u]];
      const auto v2 = p2.row_of(v1);
      rd.set(u * dim + v, v2 * dim + u, p1.coeff(v) * p2.coeff(v1));
    }
  r.r_d_commutative = (m * rd).isApprox(m, kExact);
  require(r.r_d_commutative, "A-tilde is not commutative for the dressed braiding");
  return r;
}

TauReport tau_check(const GroupPtr& gp) {
  const DoubleBasis b(gp);
  const int d = b.dimension();
  TauReport r;
  r.involution = r.algebra_automorphism = r.coalgebra_anti_automorphism = r.commutes_with_antipode = true;
  for (int x = 0; x < d; ++x) {
    r.involution = r.involution && b.tau(b.tau(x)) == x;
    r.commutes_with_antipode = r.commutes_with_antipode && b.tau(b.antipode(x)) == b.antipode(b.tau(x));
    for (int y = 0; y < d && r.algebra_automorphism; ++y) {
      const int p = b.product(x, y);
      r.algebra_automorphism = (p < 0 ? -1 : b.tau(p)) == b.product(b.tau(x), b.tau(y));
    }
    auto lhs = b.coproduct(b.tau(x));
    std::vector<std::pair<int, int>> rhs;
    for (const auto& [u, v] : b.coproduct(x)) rhs.emplace_back(b.tau(v), b.tau(u));
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    r.coalgebra_anti_automorphism = r.coalgebra_anti_automorphism && lhs == rhs;
  }
  r.algebra_automorphism = r.algebra_automorphism && b.apply(b.unit(), &DoubleBasis::tau) == b.unit();
  const DoubleTensor rm = b.r_matrix(), ri = b.r_inverse(), one = b.unit_tensor();
  const DoubleTensor tr = b.tau_tensor(rm);
  r.inverts_r = tr == ri && b.multiply(rm, ri) == one && b.multiply(ri, rm) == one;
  r.r_product_is_unit = b.multiply(tr, rm) == one;
  return r;
}

PsiReport a_tilde_isomorphism(const BigAlgebra& at) {
  const GroupTable& g = *at.group;
  const int n = at.order();
  const int dim = at.dimension();
  const DoubleBasis b(at.group);
  PsiReport r;
  r.psi = MonomialMatrixXcd(dim, dim);
  for (Element s = 0; s < n; ++s)
    for (Element y = 0; y < n; ++y) r.psi.set(at.index(s, y), b.index(g.inv(y), at.sectors[s].basis[y].first), 1.0);

  auto as_monomial = [&](auto&& op) {
    MonomialMatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const DoubleElement e = op(DoubleElement{{i, 1}});
      if (e.size() > 1) throw ConsistencyError("regular action is not monomial");
      if (e.size() == 1) m.set(i, e.begin()->first, static_cast<double>(e.begin()->second));
    }
    return m;
  };
  auto left = [&](const DoubleElement& x) { return as_monomial([&](const DoubleElement& a) { return b.multiply(x, a); }); };
  auto right = [&](const DoubleElement& x) {
    const DoubleElement s = b.apply(b.apply(x, &DoubleBasis::tau), &DoubleBasis::antipode);
    return as_monomial([&](const DoubleElement& a) { return b.multiply(a, s); });
  };
  r.intertwines_pi1 = r.intertwines_pi2 = true;
  for (Element z = 0; z < n; ++z) {
    r.intertwines_pi1 = r.intertwines_pi1 && (r.psi * at.pi1[z]).isApprox(left(b.group_element(z)) * r.psi, kExact) &&
                        (r.psi * at.pi1_delta[z]).isApprox(left(b.delta(z)) * r.psi, kExact);
    r.intertwines_pi2 = r.intertwines_pi2 && (r.psi * at.pi2[z]).isApprox(right(b.group_element(z)) * r.psi, kExact) &&
                        (r.psi * at.pi2_delta[z]).isApprox(right(b.delta(z)) * r.psi, kExact);
  }
  require(r.intertwines_pi1, "Psi does not intertwine pi1 with left multiplication");
  require(r.intertwines_pi2, "Psi does not intertwine pi2 with the twisted right action");

  const MonomialMatrixXcd m = at.total_product();
  for (int u = 0; u < dim && r.witness.first < 0; ++u)
    for (int v = 0; v < dim; ++v) {
      DoubleElement via_mu;
      const auto row = m.row_of(static_cast<Eigen::Index>(u) * dim + v);
      if (row >= 0) via_mu[static_cast<int>(r.psi.row_of(row))] = to_integer(m.coeff(static_cast<Eigen::Index>(u) * dim + v));
      const DoubleElement prod =
          b.multiply(DoubleElement{{static_cast<int>(r.psi.row_of(u)), 1}}, DoubleElement{{static_cast<int>(r.psi.row_of(v)), 1}});
      if (normalized(via_mu) != prod) {
        r.witness = {u, v};
        r.witness_mu_tilde = normalized(via_mu);
        r.witness_product = prod;
        break;
      }
    }
  return r;
}

Eigen::MatrixXd phi_trace_table(const QuantumDouble& qd, const BigAlgebra& at) {
  const auto& pairs = qd.commuting_pairs();
  const GroupTable& g = *at.group;
  const int dim = at.dimension();
  const std::vector<Element> w1 = weights_of(at.pi1_delta), w2 = weights_of(at.pi2_delta);
  const auto np = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(np, np);
  for (Eigen::Index p = 0; p < np; ++p) {
    const auto [x, h] = pairs[p];
    const Element hinv = g.inv(h);
    for (Eigen::Index q = 0; q < np; ++q) {
      const auto [a, bw] = pairs[q];
      cd s = 0.0;
      for (int u = 0; u < dim; ++u) {
        if (w2[u] != bw) continue;
        const auto u1 = at.pi2[a].row_of(u);
        if (u1 < 0 || w1[u1] != hinv) continue;
        if (at.pi1[x].row_of(u1) != u) continue;
        s += at.pi2[a].coeff(u) * at.pi1[x].coeff(u1);
      }
      t(p, q) = static_cast<double>(to_integer(s));
    }
  }
  return t;
}

DoubleCharacter phi_character(const DoubleCharacter& x, const Eigen::MatrixXd& trace_table) {
  const double n = x.qd->group().order();
  return {x.qd, trace_table.transpose().cast<cd>() * x.values / n};
}

namespace {

int single_simple(const DoubleDecomposition& d) {
  int s = -1, count = 0;
  for (std::size_t i = 0; i < d.multiplicities.size(); ++i) {
    count += d.multiplicities[i];
    if (d.multiplicities[i] == 1) s = static_cast<int>(i);
  }
  return count == 1 ? s : -1;
}

}  // namespace

int explicit_phi_class(const QuantumDoublePtr& qd, const BigAlgebra& at, int simple) {
  const GroupTable& g = *at.group;
  const DoubleModule v = induced_module(*qd, simple);
  const int dv = v.dimension, dim = at.dimension();
  const std::vector<Element> w1 = weights_of(at.pi1_delta);
  std::vector<bool> support(static_cast<std::size_t>(dv) * dim);
  for (int i = 0; i < dv; ++i)
    for (int u = 0; u < dim; ++u) support[static_cast<std::size_t>(i) * dim + u] = g.mul(v.weight[i], w1[u]) == 0;
  std::vector<MonomialMatrixXcd> gens;
  for (Element z : g.generators()) gens.push_back(kron(MonomialMatrixXcd::fromSparse(v.action[z]), at.pi1[z]));
  const auto inv = monomial_invariants(gens, support, kExact);

  const auto& pairs = qd->commuting_pairs();
  DoubleCharacter x{qd, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pairs.size()))};
  const auto id = MonomialMatrixXcd::Identity(dv);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, bw] = pairs[p];
    const MonomialMatrixXcd op = kron(id, at.pi2[a] * at.pi2_delta[bw]);
    cd s = 0.0;
    for (const auto& o : inv) {
      const Eigen::VectorXcd dense(o);
      s += dense.dot(op * dense) / dense.squaredNorm();
    }
    x.values(static_cast<Eigen::Index>(p)) = s;
  }
  return single_simple(decompose_character(x));
}

PhiClass phi_functor(const QuantumDoublePtr& qd, const BigAlgebra& at, const Eigen::MatrixXd& trace_table, int simple) {
  PhiClass c;
  c.simple = simple;
  const DoubleDecomposition d = decompose_character(phi_character(double_character(qd, simple), trace_table));
  c.image = single_simple(d);
  for (std::size_t i = 0; i < d.multiplicities.size(); ++i) c.dimension += d.multiplicities[i] * qd->simples()[i].dim;
  c.tau_image = tau_simple(qd, simple);
  c.image_of_tau = single_simple(decompose_character(phi_character(double_character(qd, c.tau_image), trace_table)));
  const DoubleSimple& s = qd->simples()[simple];
  if (qd->centralizer_table(s.class_index).degrees[s.pi] == 1) c.explicit_image = explicit_phi_class(qd, at, simple);

  const std::string name = "Phi(V_" + std::to_string(simple) + ")";
  require(c.image >= 0, name + " is not simple");
  require(c.image == c.tau_image, name + " is not tau(V_" + std::to_string(simple) + ")");
  require(c.image_of_tau == simple, "Phi(tau(V_" + std::to_string(simple) + ")) is not V_" + std::to_string(simple));
  require(c.dimension == s.dim, name + " has the wrong dimension");
  require(c.explicit_image < 0 || c.explicit_image == c.image, name + ": explicit and character routes disagree");
  return c;
}

SectorCensus sector_census(const AlgebraObject& a, const BigAlgebra& at) {
  const GroupTable& g = *at.group;
  const int n = at.order();
  SectorCensus c;
  std::vector<bool> hit(n, false);
  c.bijective = true;
  for (Element x = 0; x < n; ++x) {
    const TwistedSector& s = at.sectors[x];
    const Element t = detect_twist(a, s.module, s.a_action);
    c.twist_of.push_back(t);
    if (hit[t]) c.bijective = false;
    hit[t] = true;
    for (Element h = 0; h < n; ++h) {
      const Element th = detect_twist(a, s.module, precompose_action(a, s.a_action, h));
      require(th == g.mul(g.mul(g.inv(h), t), h), "twist of X_" + std::to_string(x) + " precomposed by pi_" +
                                                       std::to_string(h) + " is not conjugated");
    }
    require(s.dimension() % a.dimension() == 0, "dim X_g is not a multiple of dim A");
    c.dimension_ratio.push_back(s.dimension() / a.dimension());

    const Element xi = g.inv(x);
    const MonomialMatrixXcd& mu = at.mu[xi * n + x];
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (Element u = 0; u < n; ++u)
      for (Element v = 0; v < n; ++v)
        if (mu.row_of(u * n + v) >= 0) p(u, v) = mu.coeff(u * n + v);
    c.pairing_rank.push_back(numeric_rank(p));
  }
  require(c.bijective && std::all_of(c.twist_of.begin(), c.twist_of.end(), [&, i = 0](Element t) mutable { return t == i++; }),
          "g -> X_g is not a bijection onto G");
  require(std::all_of(c.dimension_ratio.begin(), c.dimension_ratio.end(), [](int r) { return r == 1; }),
          "dim X_g / dim A is not 1");
  require(std::all_of(c.pairing_rank.begin(), c.pairing_rank.end(), [n](int r) { return r == n; }),
          "a duality pairing X_(g^-1) (x) X_g -> 1 is degenerate");
  return c;
}

}  // namespace qdouble
