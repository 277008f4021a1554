#include <gtest/gtest.h>

#include "qdouble/errors.hpp"
#include "qdouble/modular.hpp"

using namespace qdouble;

namespace {

QuantumDoublePtr make(const std::string& spec) {
  return make_quantum_double(std::make_shared<const GroupTable>(named_group(spec)));
}

const char* kGroups[] = {"Z:1", "Z:2", "Z:3", "Z:4", "Z:6", "Z:2*Z:2", "S:3", "D:4", "Q8", "A:4", "D:6", "S:4"};

}  // namespace

TEST(ModularData, Z2Matrix) {
  auto md = modular_data(make("Z:2"));
  Eigen::MatrixXcd expected(4, 4);
  expected << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
  expected *= 0.5;
  EXPECT_LT((md.S - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(md.T(3).real(), -1.0, 1e-12);
}

TEST(ModularData, UnitRowIsDimensions) {
  auto qd = make("S:3");
  auto md = modular_data(qd);
  const double dims[] = {1, 1, 2, 3, 3, 2, 2, 2};
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(md.S(0, j) - dims[j] / 6.0), 0.0, 1e-12);
}

TEST(ModularData, RelationsAndVerlindeAllGroups) {
  for (const char* spec : kGroups) {
    auto qd = make(spec);
    auto md = modular_data(qd);
    auto rel = modular_relations(md, *qd);
    EXPECT_LT(rel.max(), 1e-8) << spec;
    EXPECT_EQ(verlinde(md), fusion_tensor(qd)) << spec;
    EXPECT_LT((md.S - s_matrix_trace_oracle(qd).conjugate()).cwiseAbs().maxCoeff(), 1e-8) << spec;
    EXPECT_EQ(md.convention, "conjugate");
    for (int s = 0; s < qd->simple_count(); ++s) {
      if (qd->simples()[s].class_index == 0) EXPECT_NEAR(std::abs(md.T(s) - 1.0), 0.0, 1e-12);
      // theta^ord(g) = 1
      const int ord = qd->group().element_order(qd->simples()[s].class_rep);
      EXPECT_NEAR(std::abs(std::pow(md.T(s), ord) - 1.0), 0.0, 1e-9);
    }
  }
}

TEST(ModularData, RestrictionCriterion) {
  for (const char* spec : {"S:3", "S:4", "Q8", "D:4", "Z:6", "A:4"}) {
    auto qd = make(spec);
    auto md = modular_data(qd);
    for (const auto& h : normal_subgroups(qd->classes())) {
      auto r = restrict_modular(md, qd, h);
      if (h.order() == qd->group().order()) {
        EXPECT_TRUE(r.modular) << spec;
        EXPECT_GT(r.smallest_singular_value, 1e-8);
      } else {
        EXPECT_FALSE(r.modular) << spec << " |H|=" << h.order();
        EXPECT_LT(r.witness_residual, 1e-8);
        bool nonzero = false;
        for (auto m : r.witness) nonzero |= m != 0;
        EXPECT_TRUE(nonzero);
      }
    }
  }
}

TEST(ModularData, S3A3Block) {
  auto qd = make("S:3");
  auto md = modular_data(qd);
  Subgroup a3;
  for (const auto& h : normal_subgroups(qd->classes()))
    if (h.order() == 3) a3 = h;
  auto r = restrict_modular(md, qd, a3);
  EXPECT_EQ(r.simples.size(), 6u);
  EXPECT_EQ(r.witness, (std::vector<long long>{1, -1, 0}));
}

TEST(ModularData, RejectsNonNormal) {
  auto qd = make("S:3");
  auto md = modular_data(qd);
  const GroupTable& g = qd->group();
  Element t = qd->classes().reps[1];
  std::vector<Element> h{0, t};
  std::sort(h.begin(), h.end());
  EXPECT_THROW(restrict_modular(md, qd, make_subgroup(g, h)), ValidationError);
}
