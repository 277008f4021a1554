#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qdouble/group.hpp"

namespace qdouble {

/// Element of D(G) with integer coefficients, keyed by basis index.
using DoubleElement = std::map<int, long long>;
/// Element of D(G) (x) D(G) with integer coefficients.
using DoubleTensor = std::map<std::pair<int, int>, long long>;

/// Exact Hopf structure of D(G) on the basis g delta_h, stored at g |G| + h.
class DoubleBasis {
 public:
  explicit DoubleBasis(GroupPtr g);

  const GroupTable& group() const { return *group_; }
  int dimension() const { return n_ * n_; }
  int index(Element g, Element h) const { return g * n_ + h; }
  Element group_part(int i) const { return i / n_; }
  Element weight_part(int i) const { return i % n_; }

  /// (g delta_h)(k delta_l) = [k^-1 h k = l] gk delta_l; -1 when zero.
  int product(int a, int b) const;
  /// Delta(g delta_h) = sum over h1 h2 = h of g delta_h1 (x) g delta_h2.
  std::vector<std::pair<int, int>> coproduct(int a) const;
  /// S(g delta_h) = g^-1 delta_(g h^-1 g^-1)
  int antipode(int a) const;
  /// epsilon(g delta_h) = [h = 1]
  int counit(int a) const;
  /// tau(g delta_h) = g delta_(h^-1)
  int tau(int a) const;

  DoubleElement unit() const;
  /// sum_h g delta_h
  DoubleElement group_element(Element g) const;
  /// 1 delta_h
  DoubleElement delta(Element h) const;

  DoubleElement multiply(const DoubleElement& x, const DoubleElement& y) const;
  DoubleElement apply(const DoubleElement& x, int (DoubleBasis::*map)(int) const) const;
  DoubleTensor multiply(const DoubleTensor& x, const DoubleTensor& y) const;
  DoubleTensor tau_tensor(const DoubleTensor& x) const;
  /// 1 (x) 1
  DoubleTensor unit_tensor() const;
  /// R = sum_(g,h) 1 delta_g (x) g delta_h
  DoubleTensor r_matrix() const;
  /// R^-1 = sum_(g,h) 1 delta_g (x) g^-1 delta_h
  DoubleTensor r_inverse() const;

 private:
  GroupPtr group_;
  int n_;
};

/// Drops zero coefficients so that equal elements compare equal.
template <typename K>
std::map<K, long long> normalized(std::map<K, long long> x) {
  std::erase_if(x, [](const auto& kv) { return kv.second == 0; });
  return x;
}

}  // namespace qdouble
