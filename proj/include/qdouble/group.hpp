#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qdouble {

/// Dense element index; the identity is always 0.
using Element = int;

inline constexpr int kDefaultOrderCap = 5040;

/// A finite group stored as its multiplication table.
///
/// Construction validates the Latin-square property, the identity row and
/// column, inverses, and (for order <= 256) associativity over all triples.
class GroupTable {
 public:
  GroupTable(int order, std::vector<Element> mult, std::string label);

  int order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  /// h x h^-1
  Element conj(Element h, Element x) const { return mul(mul(h, x), inv_[h]); }
  bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }

  int element_order(Element a) const;
  /// Least common multiple of element orders.
  int exponent() const { return exponent_; }
  bool is_abelian() const;

  const std::string& label() const { return label_; }
  std::span<const Element> table() const { return mult_; }
  /// FNV-1a over the multiplication table; stable across runs and platforms.
  std::uint64_t content_hash() const;

  /// Greedy generating set: each new generator is the least element not yet
  /// in the subgroup generated so far.
  const std::vector<Element>& generators() const { return generators_; }

 private:
  int order_;
  std::vector<Element> mult_;
  std::vector<Element> inv_;
  std::string label_;
  int exponent_ = 1;
  std::vector<Element> generators_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

struct Subgroup {
  std::vector<Element> elements;  // sorted, parent indices
  bool is_normal = false;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(Element x) const;
};

/// Conjugacy classes ordered by canonical (minimal-index) representative.
struct ConjugacyData {
  GroupPtr group;
  std::vector<std::vector<Element>> classes;
  std::vector<int> class_of;
  std::vector<Element> reps;
  std::vector<Subgroup> centralizers;
  /// conjugator[b] = k with k * rep(class_of[b]) * k^-1 = b (least such k).
  std::vector<Element> conjugator;

  int count() const { return static_cast<int>(classes.size()); }
  int class_size(int c) const { return static_cast<int>(classes[c].size()); }
};

using ConjugacyPtr = std::shared_ptr<const ConjugacyData>;

/// Table of the group generated by permutations of 0..n-1, elements listed in
/// breadth-first order of discovery with the identity first.
GroupTable group_from_generators(int n, const std::vector<std::vector<int>>& gens,
                                 int cap = kDefaultOrderCap, std::string label = "");

/// Parses Z:n, D:n, S:n, A:n, Q8 and products "X*Y".
GroupTable named_group(const std::string& spec, int cap = kDefaultOrderCap);

/// Generator file: first line n, then one image list per line.
GroupTable read_generator_file(std::istream& in, int cap = kDefaultOrderCap,
                               std::string label = "gens");

ConjugacyPtr conjugacy_classes(const GroupPtr& g);

/// Normal subgroups as closed unions of conjugacy classes, sorted by order
/// and then by element list.
std::vector<Subgroup> normal_subgroups(const ConjugacyData& cd);

/// Checks closure and returns the subgroup with `is_normal` filled in.
Subgroup make_subgroup(const GroupTable& g, std::vector<Element> elements);

/// The subgroup as a group in its own right; element i of the result is
/// sub.elements[i].
GroupTable subgroup_table(const GroupTable& g, const Subgroup& sub, std::string label = "");

}  // namespace qdouble
