#include <gtest/gtest.h>

#include "qdouble/characters.hpp"
#include "qdouble/errors.hpp"

using namespace qdouble;

namespace {

GroupPtr make(const std::string& spec) { return std::make_shared<const GroupTable>(named_group(spec)); }

// Column orthogonality checked against a brute-force centralizer count.
void expect_orthogonal(const CharacterTable& t) {
  const ConjugacyData& cd = *t.classes;
  const int k = t.count();
  Eigen::MatrixXcd gram = t.chars.adjoint() * t.chars;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int cent = 0;
      for (Element x = 0; x < t.group().order(); ++x) cent += t.group().commute(x, cd.reps[a]);
      EXPECT_NEAR(std::abs(gram(a, b) - std::complex<double>(a == b ? cent : 0)), 0.0, 1e-8);
    }
}

}  // namespace

TEST(CharacterTable, OrthogonalityAndDegrees) {
  for (const char* spec : {"Z:1", "Z:2", "Z:3", "Z:4", "Z:6", "Z:2*Z:2", "S:3", "D:4", "Q8", "A:4", "D:6", "S:4",
                           "A:5", "Z:3*S:3"}) {
    auto g = make(spec);
    CharacterTable t = character_table(g);
    ASSERT_EQ(t.count(), conjugacy_classes(g)->count()) << spec;
    int sum = 0;
    for (int d : t.degrees) sum += d * d;
    EXPECT_EQ(sum, g->order()) << spec;
    EXPECT_EQ(t.degrees.front(), 1);
    for (int c = 0; c < t.count(); ++c) EXPECT_NEAR(std::abs(t.chars(0, c) - 1.0), 0.0, 1e-12) << spec;
    for (int i = 0; i < t.count(); ++i) EXPECT_NEAR(std::abs(t.chars(i, 0) - double(t.degrees[i])), 0.0, 1e-12);
    expect_orthogonal(t);
  }
}

TEST(CharacterTable, A5HasGoldenRatioValues) {
  CharacterTable t = character_table(make("A:5"));
  EXPECT_EQ(t.degrees, (std::vector<int>{1, 3, 3, 4, 5}));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  int hits = 0;
  for (int i = 0; i < t.count(); ++i)
    for (int c = 0; c < t.count(); ++c) hits += std::abs(t.chars(i, c) - phi) < 1e-10;
  EXPECT_EQ(hits, 2);
}

TEST(CharacterTable, RowsSortedTrivialFirst) {
  CharacterTable t = character_table(make("S:3"));
  EXPECT_EQ(t.degrees, (std::vector<int>{1, 1, 2}));
  // row 1 is the sign character: nontrivial, so its class-weighted sum vanishes
  double s = 0.0;
  for (int c = 0; c < t.count(); ++c) s += t.classes->class_size(c) * t.chars(1, c).real();
  EXPECT_NEAR(s, 0.0, 1e-12);
}

TEST(CharacterTable, DecomposeRegular) {
  auto cd = conjugacy_classes(make("D:4"));
  CharacterTable t = character_table(cd);
  Decomposition d = decompose(regular_character(cd), t);
  for (int i = 0; i < t.count(); ++i) EXPECT_EQ(d.multiplicities[i], t.degrees[i]);
  EXPECT_LT(d.residual, 1e-9);
  ClassFunction half = regular_character(cd);
  half.values *= 0.5;
  half.values(0) += 0.25;
  EXPECT_THROW(decompose(half, t), NotACharacterError);
}

TEST(CharacterTable, TensorSquareOfStandardS3) {
  auto cd = conjugacy_classes(make("S:3"));
  CharacterTable t = character_table(cd);
  Decomposition d = decompose(irreducible(t, 2) * irreducible(t, 2), t);
  EXPECT_EQ(d.multiplicities, (std::vector<int>{1, 1, 1}));
}

TEST(CharacterTable, VanishingVirtualCharacterS3) {
  auto g = make("S:3");
  auto cd = conjugacy_classes(g);
  auto ns = normal_subgroups(*cd);
  const Subgroup* a3 = nullptr;
  for (const auto& h : ns)
    if (h.order() == 3) a3 = &h;
  ASSERT_NE(a3, nullptr);
  auto m = vanishing_virtual_character(g, *a3);
  EXPECT_EQ(m, (std::vector<long long>{1, -1, 0}));
  EXPECT_THROW(vanishing_virtual_character(g, make_subgroup(*g, [&] {
                                              std::vector<Element> all(6);
                                              for (int i = 0; i < 6; ++i) all[i] = i;
                                              return all;
                                            }())),
               NoSuchCharacterError);
}

TEST(CharacterTable, VanishingOnRestrictionEveryNormalSubgroup) {
  for (const char* spec : {"S:4", "D:4", "Q8", "A:4", "D:6"}) {
    auto g = make(spec);
    CharacterTable t = character_table(g);
    for (const auto& h : normal_subgroups(*t.classes)) {
      if (h.order() == g->order()) continue;
      auto m = vanishing_virtual_character(t, h);
      for (Element x : h.elements) {
        std::complex<double> v = 0.0;
        for (int i = 0; i < t.count(); ++i) v += double(m[i]) * t.value(i, x);
        EXPECT_LT(std::abs(v), 1e-8) << spec;
      }
    }
  }
}
