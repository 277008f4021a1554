#include <gtest/gtest.h>

#include <numeric>

#include "qdouble/errors.hpp"
#include "qdouble/quantum_double.hpp"

using namespace qdouble;

namespace {

QuantumDoublePtr make(const std::string& spec) {
  return make_quantum_double(std::make_shared<const GroupTable>(named_group(spec)));
}

const char* kGroups[] = {"Z:1", "Z:2", "Z:3", "Z:4", "Z:6", "Z:2*Z:2", "S:3", "D:4", "Q8", "A:4", "D:6", "S:4"};

}  // namespace

TEST(DoubleSimples, Census) {
  for (const char* spec : kGroups) {
    auto qd = make(spec);
    long long sum = 0;
    for (const auto& s : qd->simples()) sum += static_cast<long long>(s.dim) * s.dim;
    const long long n = qd->group().order();
    EXPECT_EQ(sum, n * n) << spec;
  }
  std::vector<int> dims;
  auto s3 = make("S:3");
  for (const auto& s : s3->simples()) dims.push_back(s.dim);
  EXPECT_EQ(dims, (std::vector<int>{1, 1, 2, 3, 3, 2, 2, 2}));
  EXPECT_EQ(make("Z:2")->simple_count(), 4);
  EXPECT_EQ(make("Z:1")->simple_count(), 1);
}

TEST(DoubleCharacter, Orthonormality) {
  for (const char* spec : kGroups) {
    auto qd = make(spec);
    const int k = qd->simple_count();
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const cd ip = pair_inner_product(double_character(qd, a), double_character(qd, b));
        EXPECT_NEAR(std::abs(ip - cd(a == b ? 1.0 : 0.0)), 0.0, 1e-8) << spec << " " << a << " " << b;
      }
  }
}

TEST(DoubleCharacter, ConjugationEquivariance) {
  auto qd = make("S:4");
  const GroupTable& g = qd->group();
  for (int s = 0; s < qd->simple_count(); ++s) {
    auto x = double_character(qd, s);
    for (const auto& [a, b] : qd->commuting_pairs())
      for (Element h : g.generators())
        EXPECT_NEAR(std::abs(x.value(g.conj(h, a), g.conj(h, b)) - x.value(a, b)), 0.0, 1e-10);
  }
}

TEST(DoubleCharacter, TranspositionSignValue) {
  auto qd = make("S:3");
  const auto& cd = qd->classes();
  // the simple over the transposition class with the sign character of Z2
  for (int s = 0; s < qd->simple_count(); ++s) {
    const auto& x = qd->simples()[s];
    if (cd.class_size(x.class_index) != 3 || x.pi != 1) continue;
    EXPECT_NEAR(double_character(qd, s).value(x.class_rep, x.class_rep).real(), -1.0, 1e-12);
  }
}

TEST(Fusion, InvariantsAllGroups) {
  for (const char* spec : kGroups) {
    auto qd = make(spec);
    FusionTensor f = fusion_tensor(qd);
    auto v = fusion_violations(f, *qd);
    EXPECT_TRUE(v.empty()) << spec << ": " << (v.empty() ? "" : v.front());
  }
}

TEST(Fusion, Z2IsKleinGroup) {
  auto qd = make("Z:2");
  FusionTensor f = fusion_tensor(qd);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int total = 0;
      for (int c = 0; c < 4; ++c) total += f(a, b, c);
      EXPECT_EQ(total, 1);
      EXPECT_EQ(f(a, a, 0), 1);
    }
}

TEST(Fusion, DualIsInvolutionAndMatchesConjugateCharacter) {
  for (const char* spec : {"Z:4", "Q8", "A:4", "S:4", "Z:6"}) {
    auto qd = make(spec);
    const GroupTable& g = qd->group();
    for (int s = 0; s < qd->simple_count(); ++s) {
      const int d = dual_simple(*qd, s);
      EXPECT_EQ(dual_simple(*qd, d), s);
      auto x = double_character(qd, s), y = double_character(qd, d);
      for (const auto& [a, b] : qd->commuting_pairs())
        EXPECT_NEAR(std::abs(y.value(a, b) - std::conj(x.value(a, g.inv(b)))), 0.0, 1e-10) << spec;
    }
  }
}

// Independent oracle: explicit intertwiner spaces between induced modules.
TEST(Fusion, IntertwinerOracleForMonomialSimples) {
  for (const char* spec : {"Z:2", "Z:3", "S:3", "D:4", "Q8"}) {
    auto qd = make(spec);
    FusionTensor f = fusion_tensor(qd);
    std::vector<int> monomial;
    for (int s = 0; s < qd->simple_count(); ++s)
      if (qd->centralizer_table(qd->simples()[s].class_index).degrees[qd->simples()[s].pi] == 1) monomial.push_back(s);
    for (int a : monomial)
      for (int b : monomial)
        for (int c : monomial) EXPECT_EQ(intertwiner_dimension(*qd, a, b, c), f(a, b, c)) << spec;
  }
}

TEST(Modules, InducedCharacterMatches) {
  auto qd = make("D:4");
  for (int s = 0; s < qd->simple_count(); ++s) {
    const auto& x = qd->simples()[s];
    if (qd->centralizer_table(x.class_index).degrees[x.pi] != 1) continue;
    DoubleModule m = induced_module(*qd, s);
    auto d = decompose_module(qd, m);
    for (int t = 0; t < qd->simple_count(); ++t) EXPECT_EQ(d.multiplicities[t], t == s ? 1 : 0);
  }
}

TEST(Modules, ValidationErrors) {
  auto qd = make("S:3");
  const GroupTable& g = qd->group();
  std::vector<Eigen::SparseMatrix<cd>> trivial(6);
  for (auto& m : trivial) {
    m.resize(1, 1);
    m.setIdentity();
  }
  EXPECT_NO_THROW(build_module(g, 1, {0}, trivial));
  // weight fixed at a transposition while the whole group acts trivially
  Element t = qd->classes().reps[1];
  EXPECT_THROW(build_module(g, 1, {t}, trivial), ValidationError);
  EXPECT_THROW(build_module(g, 2, {0}, trivial), ValidationError);
}

TEST(Modules, BraidingHexagonAndYangBaxter) {
  auto qd = make("S:3");
  const GroupTable& g = qd->group();
  std::vector<DoubleModule> mods;
  for (int s = 0; s < qd->simple_count(); ++s)
    if (qd->centralizer_table(qd->simples()[s].class_index).degrees[qd->simples()[s].pi] == 1)
      mods.push_back(induced_module(*qd, s));
  using Sp = Eigen::SparseMatrix<cd>;
  auto kron_id = [](const Sp& a, int d, bool left) {
    Sp id(d, d);
    id.setIdentity();
    const Sp& x = left ? a : id;
    const Sp& y = left ? id : a;
    std::vector<Eigen::Triplet<cd>> t;
    for (int i = 0; i < x.outerSize(); ++i)
      for (Sp::InnerIterator ix(x, i); ix; ++ix)
        for (int j = 0; j < y.outerSize(); ++j)
          for (Sp::InnerIterator iy(y, j); iy; ++iy)
            t.emplace_back(ix.row() * y.rows() + iy.row(), ix.col() * y.cols() + iy.col(), ix.value() * iy.value());
    Sp out(x.rows() * y.rows(), x.cols() * y.cols());
    out.setFromTriplets(t.begin(), t.end());
    return out;
  };
  for (const auto& v : mods)
    for (const auto& w : mods)
      for (const auto& u : mods) {
        // R_{V, W(x)U} = (1 (x) R_{VU}) (R_{VW} (x) 1)
        Sp lhs = braiding(g, v, tensor_modules(g, w, u));
        Sp rhs = kron_id(braiding(g, v, u), w.dimension, false) * kron_id(braiding(g, v, w), u.dimension, true);
        EXPECT_LT(Eigen::MatrixXcd(lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
      }
  const DoubleModule& v = mods.back();
  Sp r = braiding(g, v, v);
  Sp r1 = kron_id(r, v.dimension, true), r2 = kron_id(r, v.dimension, false);
  EXPECT_LT(Eigen::MatrixXcd(r1 * r2 * r1 - r2 * r1 * r2).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Modules, BraidingIsModuleMap) {
  auto qd = make("Q8");
  const GroupTable& g = qd->group();
  DoubleModule v = induced_module(*qd, qd->simple_count() - 1);
  DoubleModule w = induced_module(*qd, 1);
  auto vw = tensor_modules(g, v, w), wv = tensor_modules(g, w, v);
  auto r = braiding(g, v, w);
  for (Element h = 0; h < g.order(); ++h)
    EXPECT_LT(Eigen::MatrixXcd(r * vw.action[h] - wv.action[h] * r).cwiseAbs().maxCoeff(), 1e-10);
}
