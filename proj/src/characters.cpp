#include "qdouble/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qdouble/errors.hpp"
#include "qdouble/exact.hpp"

namespace qdouble {

namespace {

using exact::ModP;

std::uint64_t dixon_prime(int order, int exponent) {
  const double bound = 2.0 * std::sqrt(static_cast<double>(order));
  for (std::uint64_t m = 1;; ++m) {
    std::uint64_t p = m * static_cast<std::uint64_t>(exponent) + 1;
    if (static_cast<double>(p) > bound && exact::is_prime(p)) return p;
  }
}

double snap(double x) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-12) x = r;
  return x == 0.0 ? 0.0 : x;
}

exact::Matrix<ModP> product(const exact::Matrix<ModP>& a, const exact::Matrix<ModP>& b, std::uint64_t p) {
  exact::Matrix<ModP> c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      ModP s(0, p);
      for (Eigen::Index l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

// Splits every multi-dimensional space into eigenspaces of m.
std::vector<exact::Matrix<ModP>> split(const std::vector<exact::Matrix<ModP>>& spaces,
                                       const exact::Matrix<ModP>& m, std::uint64_t p) {
  std::vector<exact::Matrix<ModP>> out;
  const ModP like(0, p);
  for (const auto& w : spaces) {
    if (w.cols() == 1) {
      out.push_back(w);
      continue;
    }
    const exact::Matrix<ModP> mw = product(m, w, p);
    Eigen::Index found = 0;
    for (std::uint64_t lambda = 0; lambda < p && found < w.cols(); ++lambda) {
      exact::Matrix<ModP> shifted = mw;
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) shifted(i, j) -= w(i, j) * ModP(lambda, p);
      exact::Matrix<ModP> coords = exact::nullspace(shifted, like);
      if (coords.cols() == 0) continue;
      out.push_back(product(w, coords, p));
      found += coords.cols();
    }
    if (found != w.cols()) throw ConsistencyError("class-algebra matrix is not split over F_p");
  }
  return out;
}

bool row_greater(const Eigen::MatrixXcd& t, int a, int b) {
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    double ra = std::round(t(a, c).real() * 1e9), rb = std::round(t(b, c).real() * 1e9);
    if (ra != rb) return ra > rb;
    double ia = std::round(t(a, c).imag() * 1e9), ib = std::round(t(b, c).imag() * 1e9);
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

std::vector<long long> class_structure_constants(const ConjugacyData& cd) {
  const GroupTable& g = *cd.group;
  const int k = cd.count();
  std::vector<long long> c(static_cast<std::size_t>(k) * k * k, 0);
  for (int j = 0; j < k; ++j)
    for (int m = 0; m < k; ++m)
      for (Element x : cd.classes[j]) {
        int l = cd.class_of[g.mul(g.inv(x), cd.reps[m])];
        ++c[(static_cast<std::size_t>(j) * k + l) * k + m];
      }
  return c;
}

CharacterTable character_table(const GroupPtr& g) { return character_table(conjugacy_classes(g)); }

CharacterTable character_table(const ConjugacyPtr& classes) {
  const ConjugacyData& cdata = *classes;
  const GroupTable& g = *cdata.group;
  const int k = cdata.count();
  const int n = g.order();
  const int e = g.exponent();
  const std::uint64_t p = dixon_prime(n, e);
  const ModP like(0, p);

  const auto constants = class_structure_constants(cdata);
  std::vector<exact::Matrix<ModP>> spaces{exact::Matrix<ModP>(k, k)};
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) spaces[0](i, j) = ModP(i == j ? 1 : 0, p);
  for (int j = 1; j < k && static_cast<int>(spaces.size()) < k; ++j) {
    exact::Matrix<ModP> m(k, k);
    for (int l = 0; l < k; ++l)
      for (int c = 0; c < k; ++c)
        m(l, c) = ModP(static_cast<std::uint64_t>(constants[(static_cast<std::size_t>(j) * k + l) * k + c]), p);
    spaces = split(spaces, m, p);
  }
  if (static_cast<int>(spaces.size()) != k) throw ConsistencyError("Dixon splitting did not separate all characters");

  std::vector<int> inv_class(k);
  for (int j = 0; j < k; ++j) inv_class[j] = cdata.class_of[g.inv(cdata.reps[j])];

  const std::uint64_t zeta = exact::powmod(exact::primitive_root(p), (p - 1) / e, p);
  const ModP e_inv = ModP(1, p) / ModP(static_cast<std::uint64_t>(e), p);

  // powers[j][t] = class of rep_j^t
  std::vector<std::vector<int>> powers(k, std::vector<int>(e));
  for (int j = 0; j < k; ++j) {
    Element x = 0;
    for (int t = 0; t < e; ++t) {
      powers[j][t] = cdata.class_of[x];
      x = g.mul(x, cdata.reps[j]);
    }
  }

  Eigen::MatrixXcd chars(k, k);
  std::vector<int> degrees(k);
  for (int i = 0; i < k; ++i) {
    exact::Matrix<ModP> v = spaces[i];
    if (v(0, 0).value == 0) throw ConsistencyError("eigenvector vanishes at the identity class");
    const ModP scale = ModP(1, p) / v(0, 0);
    for (Eigen::Index r = 0; r < v.rows(); ++r) v(r, 0) *= scale;

    ModP t(0, p);
    for (int j = 0; j < k; ++j)
      t += v(j, 0) * v(inv_class[j], 0) / ModP(static_cast<std::uint64_t>(cdata.class_size(j)), p);
    const ModP deg_sq = ModP(static_cast<std::uint64_t>(n), p) / t;
    int deg = 0;
    for (int d = 1; d * d <= n; ++d)
      if (ModP(static_cast<std::uint64_t>(d) * d, p) == deg_sq) {
        deg = d;
        break;
      }
    if (deg == 0) throw ConsistencyError("no integer degree matches the modular norm");
    degrees[i] = deg;

    std::vector<ModP> theta(k);
    for (int j = 0; j < k; ++j)
      theta[j] = v(j, 0) * ModP(static_cast<std::uint64_t>(deg), p) / ModP(static_cast<std::uint64_t>(cdata.class_size(j)), p);

    for (int j = 0; j < k; ++j) {
      cd value = 0.0;
      int total = 0;
      for (int l = 0; l < e; ++l) {
        ModP acc(0, p);
        const std::uint64_t zinv_l = exact::powmod(zeta, static_cast<std::uint64_t>(e - l) % e, p);
        std::uint64_t w = 1;
        for (int s = 0; s < e; ++s) {
          acc += theta[powers[j][s]] * ModP(w, p);
          w = exact::mulmod(w, zinv_l, p);
        }
        const std::uint64_t mult = (acc * e_inv).value;
        if (mult > static_cast<std::uint64_t>(deg)) throw ConsistencyError("eigenvalue multiplicity exceeds the degree");
        total += static_cast<int>(mult);
        if (mult) value += static_cast<double>(mult) * std::polar(1.0, 2.0 * std::numbers::pi * l / e);
      }
      if (total != deg) throw ConsistencyError("eigenvalue multiplicities do not sum to the degree");
      chars(i, j) = cd(snap(value.real()), snap(value.imag()));
    }
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
    return row_greater(chars, a, b);
  });
  CharacterTable t;
  t.classes = classes;
  t.prime = p;
  t.chars.resize(k, k);
  t.degrees.resize(k);
  for (int i = 0; i < k; ++i) {
    t.chars.row(i) = chars.row(order[i]);
    t.degrees[i] = degrees[order[i]];
  }
  return t;
}

int CharacterTable::dual(int i) const {
  for (int j = 0; j < count(); ++j)
    if ((chars.row(j) - chars.row(i).conjugate()).cwiseAbs().maxCoeff() < 1e-8) return j;
  throw ConsistencyError("character table is not closed under conjugation");
}

bool same_group(const GroupTable& a, const GroupTable& b) {
  if (&a == &b) return true;
  return a.order() == b.order() && std::equal(a.table().begin(), a.table().end(), b.table().begin());
}

ClassFunction regular_character(const ConjugacyPtr& classes) {
  ClassFunction f{classes, Eigen::VectorXcd::Zero(classes->count())};
  f.values(0) = static_cast<double>(classes->group->order());
  return f;
}

ClassFunction irreducible(const CharacterTable& t, int i) { return {t.classes, t.chars.row(i).transpose()}; }

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  if (!same_group(*a.classes->group, *b.classes->group)) throw GroupMismatchError("class functions on different groups");
  return {a.classes, a.values.cwiseProduct(b.values)};
}

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  if (!same_group(*a.classes->group, *b.classes->group)) throw GroupMismatchError("class functions on different groups");
  return {a.classes, a.values + b.values};
}

cd inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (!same_group(*a.classes->group, *b.classes->group)) throw GroupMismatchError("class functions on different groups");
  cd s = 0.0;
  for (int c = 0; c < a.classes->count(); ++c)
    s += static_cast<double>(a.classes->class_size(c)) * a.values(c) * std::conj(b.values(c));
  return s / static_cast<double>(a.classes->group->order());
}

Decomposition decompose(const ClassFunction& f, const CharacterTable& t, double tol) {
  Decomposition d;
  for (int i = 0; i < t.count(); ++i) {
    cd ip = inner_product(f, irreducible(t, i));
    double r = std::round(ip.real());
    double dev = std::abs(ip - cd(r, 0.0));
    d.residual = std::max(d.residual, dev);
    if (dev > tol || r < 0)
      throw NotACharacterError("class function has a non-integral or negative multiplicity", dev);
    d.multiplicities.push_back(static_cast<int>(r));
  }
  return d;
}

Restriction restrict(const CharacterTable& t, const Subgroup& h) {
  const GroupTable& g = t.group();
  Subgroup checked = make_subgroup(g, h.elements);
  Restriction r;
  auto sub = std::make_shared<const GroupTable>(subgroup_table(g, checked, g.label() + "|H"));
  r.subgroup_group = sub;
  r.subgroup_classes = conjugacy_classes(sub);
  for (int i = 0; i < t.count(); ++i) {
    ClassFunction f{r.subgroup_classes, Eigen::VectorXcd(r.subgroup_classes->count())};
    for (int c = 0; c < r.subgroup_classes->count(); ++c)
      f.values(c) = t.value(i, checked.elements[r.subgroup_classes->reps[c]]);
    r.characters.push_back(std::move(f));
  }
  return r;
}

Eigen::MatrixXi restriction_multiplicities(const CharacterTable& t, const Subgroup& h) {
  Restriction r = restrict(t, h);
  CharacterTable th = character_table(r.subgroup_classes);
  Eigen::MatrixXi m(t.count(), th.count());
  for (int i = 0; i < t.count(); ++i) {
    Decomposition d = decompose(r.characters[i], th);
    for (int j = 0; j < th.count(); ++j) m(i, j) = d.multiplicities[j];
  }
  return m;
}

std::vector<long long> vanishing_virtual_character(const CharacterTable& t, const Subgroup& h) {
  const Eigen::MatrixXi r = restriction_multiplicities(t, h);
  exact::Matrix<exact::Rational> rt(r.cols(), r.rows());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) rt(j, i) = exact::Rational(r(i, j));
  auto basis = exact::nullspace(rt, exact::Rational(0));
  if (basis.cols() == 0)
    throw NoSuchCharacterError("no nonzero virtual character vanishes on a subgroup equal to the whole group");
  std::vector<exact::Rational> col(basis.rows());
  for (Eigen::Index i = 0; i < basis.rows(); ++i) col[i] = basis(i, 0);
  auto m = exact::primitive_integer_vector(col);
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    long long s = 0;
    for (Eigen::Index i = 0; i < r.rows(); ++i) s += m[i] * r(i, j);
    if (s != 0) throw ConsistencyError("virtual character witness fails the exact restriction identity");
  }
  return m;
}

std::vector<long long> vanishing_virtual_character(const GroupPtr& g, const Subgroup& h) {
  return vanishing_virtual_character(character_table(g), h);
}

}  // namespace qdouble
