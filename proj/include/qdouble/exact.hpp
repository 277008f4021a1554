#pragma once

// Exact linear algebra over fields whose scalars compare exactly: prime
// fields with a runtime modulus and the rationals. Eigen supplies storage;
// elimination is done here because Eigen's decompositions assume an ordered
// floating scalar.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace qdouble::exact {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime(std::uint64_t n);
/// Least generator of the multiplicative group of the prime field F_p.
std::uint64_t primitive_root(std::uint64_t p);

/// Element of F_p carrying its modulus. A zero modulus marks a
/// default-constructed value that adopts the modulus of its partner.
struct ModP {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;

  ModP() = default;
  ModP(std::uint64_t v, std::uint64_t p) : value(p ? v % p : v), modulus(p) {}

  friend std::uint64_t common_modulus(const ModP& a, const ModP& b) {
    if (a.modulus && b.modulus && a.modulus != b.modulus)
      throw std::invalid_argument("mixing residues of different primes");
    return a.modulus ? a.modulus : b.modulus;
  }
  friend ModP operator+(const ModP& a, const ModP& b) {
    auto p = common_modulus(a, b);
    return {(a.value + b.value) % p, p};
  }
  friend ModP operator-(const ModP& a, const ModP& b) {
    auto p = common_modulus(a, b);
    return {(a.value + p - b.value % p) % p, p};
  }
  friend ModP operator*(const ModP& a, const ModP& b) {
    auto p = common_modulus(a, b);
    return {mulmod(a.value, b.value, p), p};
  }
  friend ModP operator/(const ModP& a, const ModP& b) {
    auto p = common_modulus(a, b);
    if (b.value % p == 0) throw std::domain_error("division by zero in F_p");
    return a * ModP(powmod(b.value, p - 2, p), p);
  }
  ModP operator-() const { return {modulus ? (modulus - value) % modulus : 0, modulus}; }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.value == b.value; }
};

template <typename Scalar>
struct field_traits;

template <>
struct field_traits<ModP> {
  static ModP zero(const ModP& like) { return {0, like.modulus}; }
  static ModP one(const ModP& like) { return {1, like.modulus}; }
  static bool is_zero(const ModP& x) { return x.value == 0; }
};

template <>
struct field_traits<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

/// Reduces `m` to reduced row echelon form in place; returns pivot columns.
template <typename Scalar>
std::vector<int> rref(Matrix<Scalar>& m) {
  using F = field_traits<Scalar>;
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = row;
    while (sel < m.rows() && F::is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Scalar piv = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) / piv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || F::is_zero(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

/// Basis of {x : m x = 0} as the columns of the result. `like` supplies the
/// field (its modulus, for prime fields).
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> m, const Scalar& like) {
  using F = field_traits<Scalar>;
  const auto pivots = rref(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  Matrix<Scalar> basis(n, n - static_cast<Eigen::Index>(pivots.size()));
  for (Eigen::Index i = 0; i < basis.rows(); ++i)
    for (Eigen::Index j = 0; j < basis.cols(); ++j) basis(i, j) = F::zero(like);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = F::one(like);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(static_cast<Eigen::Index>(r), free);
    ++k;
  }
  return basis;
}

template <typename Scalar>
int rank(Matrix<Scalar> m) {
  return static_cast<int>(rref(m).size());
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
std::vector<long long> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace qdouble::exact

namespace Eigen {
template <>
struct NumTraits<qdouble::exact::ModP> : GenericNumTraits<qdouble::exact::ModP> {
  using Real = qdouble::exact::ModP;
  using NonInteger = qdouble::exact::ModP;
  using Literal = qdouble::exact::ModP;
  using Nested = qdouble::exact::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
};
}  // namespace Eigen
