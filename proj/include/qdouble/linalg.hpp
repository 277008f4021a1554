#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qdouble {

/// A matrix with at most one nonzero entry per column, stored column-wise.
///
/// Permutations, diagonal phases and partial projections of basis vectors
/// all have this shape; it is closed under products and Kronecker products.
template <typename Scalar>
class MonomialMatrix {
 public:
  using Index = Eigen::Index;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  MonomialMatrix() = default;
  MonomialMatrix(Index rows, Index cols) : rows_(rows), row_(cols, -1), coeff_(cols, Scalar(0)) {}

  static MonomialMatrix Identity(Index n) {
    MonomialMatrix m(n, n);
    for (Index j = 0; j < n; ++j) m.set(j, j, Scalar(1));
    return m;
  }

  Index rows() const { return rows_; }
  Index cols() const { return static_cast<Index>(row_.size()); }

  /// Sets column `col` to `c * e_row`; a zero `c` clears the column.
  void set(Index col, Index row, const Scalar& c) {
    if (c == Scalar(0)) {
      row_[col] = -1;
      coeff_[col] = Scalar(0);
    } else {
      row_[col] = row;
      coeff_[col] = c;
    }
  }
  /// Row of the nonzero entry of `col`, or -1.
  Index row_of(Index col) const { return row_[col]; }
  const Scalar& coeff(Index col) const { return coeff_[col]; }

  MonomialMatrix operator*(const MonomialMatrix& rhs) const {
    eigen_assert(cols() == rhs.rows());
    MonomialMatrix out(rows_, rhs.cols());
    for (Index j = 0; j < rhs.cols(); ++j) {
      Index mid = rhs.row_[j];
      if (mid < 0 || row_[mid] < 0) continue;
      out.set(j, row_[mid], coeff_[mid] * rhs.coeff_[j]);
    }
    return out;
  }

  Vector operator*(const Vector& v) const {
    Vector out = Vector::Zero(rows_);
    for (Index j = 0; j < cols(); ++j)
      if (row_[j] >= 0) out(row_[j]) += coeff_[j] * v(j);
    return out;
  }

  MonomialMatrix& operator*=(const Scalar& s) {
    for (Index j = 0; j < cols(); ++j) set(j, row_[j], coeff_[j] * s);
    return *this;
  }

  /// Inverse of an invertible monomial matrix (every row hit exactly once).
  MonomialMatrix inverse() const {
    eigen_assert(rows_ == cols());
    MonomialMatrix out(rows_, rows_);
    for (Index j = 0; j < cols(); ++j) {
      eigen_assert(row_[j] >= 0 && out.row_[row_[j]] < 0);
      out.set(row_[j], j, Scalar(1) / coeff_[j]);
    }
    return out;
  }

  /// Number of distinct rows hit by nonzero columns.
  Index rank() const {
    std::vector<bool> hit(rows_, false);
    Index r = 0;
    for (Index j = 0; j < cols(); ++j)
      if (row_[j] >= 0 && !hit[row_[j]]) {
        hit[row_[j]] = true;
        ++r;
      }
    return r;
  }

  /// Throws std::invalid_argument when `s` has a column with two nonzeros.
  static MonomialMatrix fromSparse(const Eigen::SparseMatrix<Scalar>& s) {
    MonomialMatrix m(s.rows(), s.cols());
    for (Index k = 0; k < s.outerSize(); ++k)
      for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(s, k); it; ++it) {
        if (it.value() == Scalar(0)) continue;
        if (m.row_[it.col()] >= 0) throw std::invalid_argument("matrix is not monomial");
        m.set(it.col(), it.row(), it.value());
      }
    return m;
  }

  Scalar trace() const {
    Scalar t(0);
    for (Index j = 0; j < cols(); ++j)
      if (row_[j] == j) t += coeff_[j];
    return t;
  }

  /// True when both matrices have the same shape and every entry agrees
  /// within `tol`.
  bool isApprox(const MonomialMatrix& o, RealScalar tol) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (Index j = 0; j < cols(); ++j) {
      if (row_[j] == o.row_[j]) {
        if (std::abs(coeff_[j] - o.coeff_[j]) > tol) return false;
      } else if (std::abs(coeff_[j]) > tol || std::abs(o.coeff_[j]) > tol) {
        return false;
      }
    }
    return true;
  }

  Eigen::SparseMatrix<Scalar> toSparse() const {
    std::vector<Eigen::Triplet<Scalar>> t;
    t.reserve(row_.size());
    for (Index j = 0; j < cols(); ++j)
      if (row_[j] >= 0) t.emplace_back(row_[j], j, coeff_[j]);
    Eigen::SparseMatrix<Scalar> s(rows_, cols());
    s.setFromTriplets(t.begin(), t.end());
    return s;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> toDense() const { return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(toSparse()); }

  friend MonomialMatrix kron(const MonomialMatrix& a, const MonomialMatrix& b) {
    MonomialMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.cols(); ++i) {
      if (a.row_[i] < 0) continue;
      for (Index j = 0; j < b.cols(); ++j)
        if (b.row_[j] >= 0) out.set(i * b.cols() + j, a.row_[i] * b.rows() + b.row_[j], a.coeff_[i] * b.coeff_[j]);
    }
    return out;
  }

 private:
  Index rows_ = 0;
  std::vector<Index> row_;
  std::vector<Scalar> coeff_;
};

using MonomialMatrixXcd = MonomialMatrix<std::complex<double>>;

/// The swap v (x) w -> w (x) v on C^a (x) C^b, row-major left factor major.
template <typename Scalar>
MonomialMatrix<Scalar> swap_factors(Eigen::Index a, Eigen::Index b) {
  MonomialMatrix<Scalar> p(a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j) p.set(i * b + j, j * a + i, Scalar(1));
  return p;
}

/// Orbit sums spanning the common fixed space of a group generated by
/// invertible monomial matrices, restricted to basis vectors in `support`
/// (an invariant set). Orbits whose phases are inconsistent carry no
/// invariant and are skipped.
template <typename Scalar>
std::vector<Eigen::SparseVector<Scalar>> monomial_invariants(const std::vector<MonomialMatrix<Scalar>>& generators,
                                                             const std::vector<bool>& support,
                                                             typename MonomialMatrix<Scalar>::RealScalar tol) {
  using Index = Eigen::Index;
  const Index n = static_cast<Index>(support.size());
  std::vector<Scalar> value(n, Scalar(0));
  std::vector<bool> seen(n, false);
  std::vector<Eigen::SparseVector<Scalar>> out;
  for (Index seed = 0; seed < n; ++seed) {
    if (!support[seed] || seen[seed]) continue;
    std::vector<Index> orbit{seed};
    seen[seed] = true;
    value[seed] = Scalar(1);
    bool consistent = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const Index i = orbit[head];
      for (const auto& g : generators) {
        const Index j = g.row_of(i);
        if (j < 0) {
          consistent = false;
          continue;
        }
        const Scalar v = g.coeff(i) * value[i];
        if (!seen[j]) {
          seen[j] = true;
          value[j] = v;
          orbit.push_back(j);
        } else if (std::abs(value[j] - v) > tol) {
          consistent = false;
        }
      }
    }
    if (!consistent) continue;
    Eigen::SparseVector<Scalar> s(n);
    std::sort(orbit.begin(), orbit.end());
    for (Index i : orbit) s.insert(i) = value[i];
    out.push_back(std::move(s));
  }
  return out;
}

/// Rank of p - q for monomial matrices of equal shape. Each column of the
/// difference has at most two nonzeros, so the rank follows from the graph on
/// rows joined by those columns: a connected component of size s contributes
/// s - 1 when a nonzero functional kills all its columns and s otherwise.
template <typename Scalar>
Eigen::Index difference_rank(const MonomialMatrix<Scalar>& p, const MonomialMatrix<Scalar>& q,
                             typename MonomialMatrix<Scalar>::RealScalar tol) {
  using Index = Eigen::Index;
  eigen_assert(p.rows() == q.rows() && p.cols() == q.cols());
  const Index n = p.rows();
  struct Edge {
    Index to;
    Scalar ratio;  // f(to) = ratio * f(from) on annihilating functionals
  };
  std::vector<std::vector<Edge>> adj(n);
  std::vector<bool> pinned(n, false);
  for (Index j = 0; j < p.cols(); ++j) {
    const Index a = p.row_of(j), b = q.row_of(j);
    if (a >= 0 && b >= 0 && a != b) {
      // p_j e_a - q_j e_b: f(a) p_j = f(b) q_j
      adj[a].push_back({b, p.coeff(j) / q.coeff(j)});
      adj[b].push_back({a, q.coeff(j) / p.coeff(j)});
    } else if (a >= 0 && b == a) {
      if (std::abs(p.coeff(j) - q.coeff(j)) > tol) pinned[a] = true;
    } else if (a >= 0) {
      pinned[a] = true;
    } else if (b >= 0) {
      pinned[b] = true;
    }
  }
  std::vector<Scalar> f(n, Scalar(0));
  std::vector<bool> seen(n, false);
  Index rank = 0;
  for (Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<Index> comp{root};
    seen[root] = true;
    f[root] = Scalar(1);
    bool free = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const Index v = comp[head];
      if (pinned[v]) free = false;
      for (const Edge& e : adj[v]) {
        const Scalar w = e.ratio * f[v];
        if (!seen[e.to]) {
          seen[e.to] = true;
          f[e.to] = w;
          comp.push_back(e.to);
        } else if (std::abs(f[e.to] - w) > tol * std::max<typename MonomialMatrix<Scalar>::RealScalar>(1, std::abs(w))) {
          free = false;
        }
      }
    }
    rank += static_cast<Index>(comp.size()) - (free ? 1 : 0);
  }
  return rank;
}

/// Condition left * X == X * right on an unknown X of shape
/// (left.rows() x right.cols()).
struct LinearCondition {
  Eigen::SparseMatrix<std::complex<double>> left;
  Eigen::SparseMatrix<std::complex<double>> right;
};

struct HomSpace {
  int dimension = 0;
  /// Orthonormal basis of the solution space, each of shape rows x cols.
  std::vector<Eigen::MatrixXcd> basis;
};

/// Solution space of a family of intertwining conditions. Conditions whose
/// two sides are both diagonal only restrict the support of X; the rest are
/// solved numerically through the Gram matrix of the reduced system.
HomSpace hom_space(Eigen::Index rows, Eigen::Index cols, const std::vector<LinearCondition>& conditions,
                   double tol = 1e-9);

/// Numerical rank with singular-value threshold `tol`.
int numeric_rank(const Eigen::MatrixXcd& m, double tol = 1e-8);

double smallest_singular_value(const Eigen::MatrixXcd& m);

/// Max-abs entry of a sparse difference; zero for empty matrices.
double max_abs_diff(const Eigen::SparseMatrix<std::complex<double>>& a,
                    const Eigen::SparseMatrix<std::complex<double>>& b);

}  // namespace qdouble
