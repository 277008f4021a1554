#include "qdouble/linalg.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qdouble {

namespace {

using cd = std::complex<double>;
using SparseXcd = Eigen::SparseMatrix<cd>;

bool is_diagonal(const SparseXcd& m) {
  if (m.rows() != m.cols()) return false;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseXcd::InnerIterator it(m, k); it; ++it)
      if (it.row() != it.col() && std::abs(it.value()) > 0.0) return false;
  return true;
}

std::vector<cd> diagonal_of(const SparseXcd& m) {
  std::vector<cd> d(static_cast<std::size_t>(m.rows()), cd(0.0));
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseXcd::InnerIterator it(m, k); it; ++it)
      if (it.row() == it.col()) d[it.row()] = it.value();
  return d;
}

using Key = std::vector<std::pair<long long, long long>>;

Key key_of(const std::vector<std::vector<cd>>& diags, Eigen::Index i, double tol) {
  Key k;
  k.reserve(diags.size());
  for (const auto& d : diags)
    k.emplace_back(std::llround(d[i].real() / tol), std::llround(d[i].imag() / tol));
  return k;
}

}  // namespace

HomSpace hom_space(Eigen::Index rows, Eigen::Index cols, const std::vector<LinearCondition>& conditions, double tol) {
  std::vector<std::vector<cd>> left_diag, right_diag;
  std::vector<const LinearCondition*> general;
  for (const auto& c : conditions) {
    eigen_assert(c.left.rows() == rows && c.right.cols() == cols);
    if (is_diagonal(c.left) && is_diagonal(c.right)) {
      left_diag.push_back(diagonal_of(c.left));
      right_diag.push_back(diagonal_of(c.right));
    } else {
      general.push_back(&c);
    }
  }

  // Unknown (i, j) survives the diagonal conditions iff its row and column
  // signatures agree.
  std::map<Key, std::vector<Eigen::Index>> rows_by_key;
  for (Eigen::Index i = 0; i < rows; ++i) rows_by_key[key_of(left_diag, i, 1e-6)].push_back(i);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> unknowns;
  for (Eigen::Index j = 0; j < cols; ++j) {
    auto it = rows_by_key.find(key_of(right_diag, j, 1e-6));
    if (it == rows_by_key.end()) continue;
    for (Eigen::Index i : it->second) unknowns.emplace_back(i, j);
  }
  std::sort(unknowns.begin(), unknowns.end());
  const auto u = static_cast<Eigen::Index>(unknowns.size());

  HomSpace out;
  if (u == 0) return out;

  auto to_matrix = [&](const Eigen::VectorXcd& x) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    for (Eigen::Index k = 0; k < u; ++k) m(unknowns[k].first, unknowns[k].second) = x(k);
    return m;
  };

  if (general.empty()) {
    out.dimension = static_cast<int>(u);
    for (Eigen::Index k = 0; k < u; ++k) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(u);
      e(k) = 1.0;
      out.basis.push_back(to_matrix(e));
    }
    return out;
  }

  std::vector<Eigen::Triplet<cd>> triplets;
  std::unordered_map<long long, Eigen::Index> equation_id;
  auto equation = [&](std::size_t c, Eigen::Index i, Eigen::Index j) {
    const long long key = (static_cast<long long>(c) * rows + i) * cols + j;
    auto [it, inserted] = equation_id.try_emplace(key, static_cast<Eigen::Index>(equation_id.size()));
    return it->second;
  };
  for (std::size_t c = 0; c < general.size(); ++c) {
    const SparseXcd& l = general[c]->left;
    const Eigen::SparseMatrix<cd, Eigen::RowMajor> r = general[c]->right;
    for (Eigen::Index k = 0; k < u; ++k) {
      const auto [i, j] = unknowns[k];
      for (SparseXcd::InnerIterator it(l, i); it; ++it) triplets.emplace_back(equation(c, it.row(), j), k, it.value());
      for (Eigen::SparseMatrix<cd, Eigen::RowMajor>::InnerIterator it(r, j); it; ++it)
        triplets.emplace_back(equation(c, i, it.col()), k, -it.value());
    }
  }
  SparseXcd system(static_cast<Eigen::Index>(equation_id.size()), u);
  system.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::MatrixXcd gram = Eigen::MatrixXcd(system.adjoint() * system);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < u; ++k) {
    if (es.eigenvalues()(k) > tol * scale) break;
    out.basis.push_back(to_matrix(es.eigenvectors().col(k)));
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

int numeric_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > tol;
  return r;
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

double max_abs_diff(const SparseXcd& a, const SparseXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  const SparseXcd d = a - b;
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseXcd::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace qdouble
