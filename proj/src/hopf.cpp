#include "qdouble/hopf.hpp"

namespace qdouble {

DoubleBasis::DoubleBasis(GroupPtr g) : group_(std::move(g)), n_(group_->order()) {}

int DoubleBasis::product(int a, int b) const {
  const GroupTable& g = *group_;
  const Element x = group_part(a), h = weight_part(a), k = group_part(b), l = weight_part(b);
  if (g.conj(g.inv(k), h) != l) return -1;
  return index(g.mul(x, k), l);
}

std::vector<std::pair<int, int>> DoubleBasis::coproduct(int a) const {
  const GroupTable& g = *group_;
  const Element x = group_part(a), h = weight_part(a);
  std::vector<std::pair<int, int>> out;
  out.reserve(n_);
  for (Element h1 = 0; h1 < n_; ++h1) out.emplace_back(index(x, h1), index(x, g.mul(g.inv(h1), h)));
  return out;
}

int DoubleBasis::antipode(int a) const {
  const GroupTable& g = *group_;
  const Element x = group_part(a), h = weight_part(a);
  return index(g.inv(x), g.conj(x, g.inv(h)));
}

int DoubleBasis::counit(int a) const { return weight_part(a) == 0 ? 1 : 0; }

int DoubleBasis::tau(int a) const { return index(group_part(a), group_->inv(weight_part(a))); }

DoubleElement DoubleBasis::unit() const { return group_element(0); }

DoubleElement DoubleBasis::group_element(Element g) const {
  DoubleElement x;
  for (Element h = 0; h < n_; ++h) x[index(g, h)] = 1;
  return x;
}

DoubleElement DoubleBasis::delta(Element h) const { return {{index(0, h), 1}}; }

DoubleElement DoubleBasis::multiply(const DoubleElement& x, const DoubleElement& y) const {
  DoubleElement out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      const int p = product(a, b);
      if (p >= 0) out[p] += ca * cb;
    }
  return normalized(std::move(out));
}

DoubleElement DoubleBasis::apply(const DoubleElement& x, int (DoubleBasis::*map)(int) const) const {
  DoubleElement out;
  for (const auto& [a, c] : x) out[(this->*map)(a)] += c;
  return normalized(std::move(out));
}

DoubleTensor DoubleBasis::multiply(const DoubleTensor& x, const DoubleTensor& y) const {
  DoubleTensor out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      const int p = product(a.first, b.first);
      if (p < 0) continue;
      const int q = product(a.second, b.second);
      if (q >= 0) out[{p, q}] += ca * cb;
    }
  return normalized(std::move(out));
}

DoubleTensor DoubleBasis::tau_tensor(const DoubleTensor& x) const {
  DoubleTensor out;
  for (const auto& [a, c] : x) out[{tau(a.first), tau(a.second)}] += c;
  return normalized(std::move(out));
}

DoubleTensor DoubleBasis::unit_tensor() const {
  DoubleTensor out;
  for (Element h = 0; h < n_; ++h)
    for (Element k = 0; k < n_; ++k) out[{index(0, h), index(0, k)}] = 1;
  return out;
}

DoubleTensor DoubleBasis::r_matrix() const {
  DoubleTensor out;
  for (Element g = 0; g < n_; ++g)
    for (Element h = 0; h < n_; ++h) out[{index(0, g), index(g, h)}] = 1;
  return out;
}

DoubleTensor DoubleBasis::r_inverse() const {
  DoubleTensor out;
  for (Element g = 0; g < n_; ++g)
    for (Element h = 0; h < n_; ++h) out[{index(0, g), index(group_->inv(g), h)}] = 1;
  return out;
}

}  // namespace qdouble
