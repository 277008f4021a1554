#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "qdouble/group.hpp"

namespace qdouble {

using cd = std::complex<double>;

/// Irreducible characters: row = character, column = conjugacy class.
///
/// Rows are sorted by degree, then by values in descending lexicographic
/// order of (re, im), which places the trivial character first.
struct CharacterTable {
  ConjugacyPtr classes;
  Eigen::MatrixXcd chars;
  std::vector<int> degrees;
  /// Prime used for the modular eigenvector computation.
  std::uint64_t prime = 0;

  int count() const { return static_cast<int>(degrees.size()); }
  const GroupTable& group() const { return *classes->group; }
  /// chi_i evaluated at an arbitrary group element.
  cd value(int i, Element x) const { return chars(i, classes->class_of[x]); }
  /// Index of the character conj(chi_i).
  int dual(int i) const;
};

using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

/// A class function; values indexed by class.
struct ClassFunction {
  ConjugacyPtr classes;
  Eigen::VectorXcd values;
};

/// Burnside–Dixon: simultaneous eigenvectors of the class-multiplication
/// matrices over F_p with p = 1 mod exp(G) and p > 2 sqrt|G|, lifted to
/// complex values through the eigenvalue multiplicities of each element.
CharacterTable character_table(const ConjugacyPtr& classes);
CharacterTable character_table(const GroupPtr& g);

/// Regular character, trivial character, and character rows as class functions.
ClassFunction regular_character(const ConjugacyPtr& classes);
ClassFunction irreducible(const CharacterTable& t, int i);

/// Pointwise product (character of the tensor product).
ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);

/// (1/|G|) sum_c |c| a(c) conj(b(c))
cd inner_product(const ClassFunction& a, const ClassFunction& b);

struct Decomposition {
  std::vector<int> multiplicities;
  double residual = 0.0;
};

/// Multiplicities of the irreducibles in a genuine character.
Decomposition decompose(const ClassFunction& f, const CharacterTable& t, double tol = 1e-6);

struct Restriction {
  std::shared_ptr<const GroupTable> subgroup_group;
  ConjugacyPtr subgroup_classes;
  std::vector<ClassFunction> characters;  // one per irreducible of G
};

Restriction restrict(const CharacterTable& t, const Subgroup& h);

/// Integer matrix R with R(i, j) = <Res chi_i, psi_j>_H.
Eigen::MatrixXi restriction_multiplicities(const CharacterTable& t, const Subgroup& h);

/// Nonzero integer combination of irreducibles of G vanishing on the proper
/// subgroup h, from the exact rational left nullspace of the restriction
/// multiplicity matrix.
std::vector<long long> vanishing_virtual_character(const CharacterTable& t, const Subgroup& h);
std::vector<long long> vanishing_virtual_character(const GroupPtr& g, const Subgroup& h);

/// Structure constants c(j, l, m) = #{(x, y) in C_j x C_l : xy = rep_m}.
std::vector<long long> class_structure_constants(const ConjugacyData& cd);

bool same_group(const GroupTable& a, const GroupTable& b);

}  // namespace qdouble
