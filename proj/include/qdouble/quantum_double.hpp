#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qdouble/characters.hpp"
#include "qdouble/group.hpp"

namespace qdouble {

/// Simple D(G)-module (g, pi): g the canonical representative of its class,
/// pi an index into the character table of Z(g).
struct DoubleSimple {
  Element class_rep = 0;
  int class_index = 0;
  int pi = 0;
  int dim = 1;

  friend bool operator==(const DoubleSimple&, const DoubleSimple&) = default;
};

/// Class and centralizer character data of G, shared by everything that
/// works with characters of D(G).
class QuantumDouble {
 public:
  explicit QuantumDouble(const GroupPtr& g);
  /// Reuses precomputed tables; `centralizer_tables[c]` is the table of
  /// subgroup_table(G, Z(rep_c)).
  QuantumDouble(CharacterTable group_table, std::vector<CharacterTable> centralizer_tables);

  const GroupTable& group() const { return *classes_->group; }
  const GroupPtr& group_ptr() const { return classes_->group; }
  const ConjugacyData& classes() const { return *classes_; }
  const ConjugacyPtr& classes_ptr() const { return classes_; }
  const CharacterTable& group_table() const { return group_table_; }
  const CharacterTable& centralizer_table(int c) const { return centralizer_tables_[c]; }
  /// chi_pi of Z(rep_c) at z; z must commute with rep_c.
  cd centralizer_value(int c, int pi, Element z) const;

  const std::vector<DoubleSimple>& simples() const { return simples_; }
  int simple_count() const { return static_cast<int>(simples_.size()); }
  int simple_index(int class_index, int pi) const { return first_simple_[class_index] + pi; }

  /// Commuting pairs (a, b) in lexicographic order.
  const std::vector<std::pair<Element, Element>>& commuting_pairs() const { return pairs_; }
  /// Position of (a, b) in commuting_pairs(), or -1.
  int pair_index(Element a, Element b) const { return pair_of_[static_cast<std::size_t>(a) * group().order() + b]; }

 private:
  void index();

  ConjugacyPtr classes_;
  CharacterTable group_table_;
  std::vector<CharacterTable> centralizer_tables_;
  std::vector<std::vector<int>> local_index_;
  std::vector<DoubleSimple> simples_;
  std::vector<int> first_simple_;
  std::vector<std::pair<Element, Element>> pairs_;
  std::vector<int> pair_of_;
};

using QuantumDoublePtr = std::shared_ptr<const QuantumDouble>;

QuantumDoublePtr make_quantum_double(const GroupPtr& g);

/// Simples ordered by (class index, centralizer character index).
std::vector<DoubleSimple> double_simples(const GroupPtr& g);

/// Values on commuting pairs, indexed like QuantumDouble::commuting_pairs().
struct DoubleCharacter {
  QuantumDoublePtr qd;
  Eigen::VectorXcd values;

  /// Zero off the commuting pairs.
  cd value(Element a, Element b) const {
    int p = qd->pair_index(a, b);
    return p < 0 ? cd(0.0) : values(p);
  }
};

/// value(a, b) = trace of a on the weight-b block of V_(g, pi).
DoubleCharacter double_character(const QuantumDoublePtr& qd, const DoubleSimple& s);
DoubleCharacter double_character(const QuantumDoublePtr& qd, int simple);

/// (1/|G|) sum over commuting pairs of x conj(y)
cd pair_inner_product(const DoubleCharacter& x, const DoubleCharacter& y);
DoubleCharacter tensor_character(const DoubleCharacter& x, const DoubleCharacter& y);
DoubleCharacter operator+(const DoubleCharacter& x, const DoubleCharacter& y);

struct DoubleDecomposition {
  std::vector<int> multiplicities;
  double residual = 0.0;
};

/// Multiplicities of every simple; throws ConsistencyError when the
/// projections are not nonnegative integers within `tol`.
DoubleDecomposition decompose_character(const DoubleCharacter& x, double tol = 1e-6);

/// Index of the simple whose character equals `x`, or -1.
int find_simple(const DoubleCharacter& x, double tol = 1e-8);

/// Canonical representative of (g^-1, conj pi) transported to the class rep.
int dual_simple(const QuantumDouble& qd, int simple);
/// The simple whose character is (a, b) -> value(a, b^-1).
int tau_simple(const QuantumDoublePtr& qd, int simple);

struct FusionTensor {
  std::vector<DoubleSimple> simples;
  /// N(a, b, c) at (a * k + b) * k + c.
  std::vector<int> n;

  int count() const { return static_cast<int>(simples.size()); }
  int operator()(int a, int b, int c) const {
    const auto k = static_cast<std::size_t>(count());
    return n[(a * k + b) * k + c];
  }
  friend bool operator==(const FusionTensor&, const FusionTensor&) = default;
};

/// N_ab^c = <chi_a chi_b, chi_c> over commuting pairs.
FusionTensor fusion_tensor(const QuantumDoublePtr& qd);

/// Descriptions of violated fusion invariants (commutativity, unit,
/// rigidity, dimension count); empty when all hold.
std::vector<std::string> fusion_violations(const FusionTensor& f, const QuantumDouble& qd);

/// A D(G)-module given by a weight per basis vector and the action of every
/// group element.
struct DoubleModule {
  int dimension = 0;
  std::vector<Element> weight;
  std::vector<Eigen::SparseMatrix<cd>> action;
  std::string label;
};

/// Validates the group-action and weight-compatibility laws; throws
/// ValidationError naming the first offending pair.
DoubleModule build_module(const GroupTable& g, int dimension, std::vector<Element> weight,
                          std::vector<Eigen::SparseMatrix<cd>> action, std::string label = "");

/// Unit object: one basis vector of weight 1 with trivial action.
DoubleModule unit_module(const GroupTable& g);

/// Explicit V_(g, pi) for a one-dimensional pi: basis e_b over b in the
/// class of g, h e_b = pi(k_{hbh^-1}^-1 h k_b) e_{hbh^-1}.
DoubleModule induced_module(const QuantumDouble& qd, int simple);

DoubleModule tensor_modules(const GroupTable& g, const DoubleModule& v, const DoubleModule& w);
DoubleModule direct_sum(const GroupTable& g, const DoubleModule& v, const DoubleModule& w);

DoubleCharacter module_character(const QuantumDoublePtr& qd, const DoubleModule& m);
DoubleDecomposition decompose_module(const QuantumDoublePtr& qd, const DoubleModule& m, double tol = 1e-6);

/// Matrix of R-check: V (x) W -> W (x) V, v (x) w -> (wt(v) w) (x) v.
Eigen::SparseMatrix<cd> braiding(const GroupTable& g, const DoubleModule& v, const DoubleModule& w);

/// dim Hom_D(G)(V_a (x) V_b, V_c) by solving the intertwining equations on
/// explicit induced modules; all three simples need one-dimensional pi.
int intertwiner_dimension(const QuantumDouble& qd, int a, int b, int c);

}  // namespace qdouble
