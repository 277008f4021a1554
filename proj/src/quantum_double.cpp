#include "qdouble/quantum_double.hpp"

#include <cmath>
#include <sstream>

#include "qdouble/errors.hpp"
#include "qdouble/linalg.hpp"

namespace qdouble {

namespace {

using SparseXcd = Eigen::SparseMatrix<cd>;

void require_same(const QuantumDoublePtr& a, const QuantumDoublePtr& b) {
  if (a != b && !same_group(a->group(), b->group()))
    throw GroupMismatchError("double characters of different groups");
}

SparseXcd identity_sparse(int d) {
  SparseXcd m(d, d);
  m.setIdentity();
  return m;
}

}  // namespace

QuantumDouble::QuantumDouble(const GroupPtr& g) : classes_(conjugacy_classes(g)), group_table_(character_table(classes_)) {
  for (int c = 0; c < classes_->count(); ++c) {
    auto sub = std::make_shared<const GroupTable>(
        subgroup_table(*g, classes_->centralizers[c], g->label() + "/Z" + std::to_string(c)));
    centralizer_tables_.push_back(character_table(sub));
  }
  index();
}

QuantumDouble::QuantumDouble(CharacterTable group_table, std::vector<CharacterTable> centralizer_tables)
    : classes_(group_table.classes), group_table_(std::move(group_table)), centralizer_tables_(std::move(centralizer_tables)) {
  if (static_cast<int>(centralizer_tables_.size()) != classes_->count())
    throw ValidationError("one centralizer table per conjugacy class is required");
  for (int c = 0; c < classes_->count(); ++c)
    if (centralizer_tables_[c].group().order() != classes_->centralizers[c].order())
      throw ValidationError("centralizer table " + std::to_string(c) + " has the wrong order");
  index();
}

void QuantumDouble::index() {
  const GroupTable& g = group();
  const int n = g.order();
  local_index_.assign(classes_->count(), std::vector<int>(n, -1));
  for (int c = 0; c < classes_->count(); ++c) {
    const auto& elems = classes_->centralizers[c].elements;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) local_index_[c][elems[i]] = i;
    first_simple_.push_back(static_cast<int>(simples_.size()));
    const CharacterTable& t = centralizer_tables_[c];
    for (int pi = 0; pi < t.count(); ++pi)
      simples_.push_back({classes_->reps[c], c, pi, classes_->class_size(c) * t.degrees[pi]});
  }
  pair_of_.assign(static_cast<std::size_t>(n) * n, -1);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (g.commute(a, b)) {
        pair_of_[static_cast<std::size_t>(a) * n + b] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(a, b);
      }
}

cd QuantumDouble::centralizer_value(int c, int pi, Element z) const {
  const int local = local_index_[c][z];
  if (local < 0) throw ValidationError("element does not centralize the class representative");
  return centralizer_tables_[c].value(pi, local);
}

QuantumDoublePtr make_quantum_double(const GroupPtr& g) { return std::make_shared<const QuantumDouble>(g); }

std::vector<DoubleSimple> double_simples(const GroupPtr& g) { return QuantumDouble(g).simples(); }

DoubleCharacter double_character(const QuantumDoublePtr& qd, const DoubleSimple& s) {
  const GroupTable& g = qd->group();
  const ConjugacyData& cc = qd->classes();
  const auto& pairs = qd->commuting_pairs();
  DoubleCharacter x{qd, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pairs.size()))};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    if (cc.class_of[b] != s.class_index) continue;
    const Element k = cc.conjugator[b];
    x.values(static_cast<Eigen::Index>(p)) = qd->centralizer_value(s.class_index, s.pi, g.mul(g.mul(g.inv(k), a), k));
  }
  return x;
}

DoubleCharacter double_character(const QuantumDoublePtr& qd, int simple) {
  return double_character(qd, qd->simples()[simple]);
}

cd pair_inner_product(const DoubleCharacter& x, const DoubleCharacter& y) {
  require_same(x.qd, y.qd);
  return y.values.dot(x.values) / static_cast<double>(x.qd->group().order());
}

DoubleCharacter tensor_character(const DoubleCharacter& x, const DoubleCharacter& y) {
  require_same(x.qd, y.qd);
  const QuantumDouble& qd = *x.qd;
  const GroupTable& g = qd.group();
  const auto& pairs = qd.commuting_pairs();
  DoubleCharacter out{x.qd, Eigen::VectorXcd::Zero(x.values.size())};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    cd s = 0.0;
    for (Element b1 = 0; b1 < g.order(); ++b1) {
      const int p1 = qd.pair_index(a, b1);
      if (p1 < 0) continue;
      s += x.values(p1) * y.values(qd.pair_index(a, g.mul(g.inv(b1), b)));
    }
    out.values(static_cast<Eigen::Index>(p)) = s;
  }
  return out;
}

DoubleCharacter operator+(const DoubleCharacter& x, const DoubleCharacter& y) {
  require_same(x.qd, y.qd);
  return {x.qd, x.values + y.values};
}

DoubleDecomposition decompose_character(const DoubleCharacter& x, double tol) {
  DoubleDecomposition d;
  for (int s = 0; s < x.qd->simple_count(); ++s) {
    const cd ip = pair_inner_product(x, double_character(x.qd, s));
    const double r = std::round(ip.real());
    const double dev = std::abs(ip - cd(r, 0.0));
    d.residual = std::max(d.residual, dev);
    if (dev > tol || r < 0) {
      std::ostringstream msg;
      msg << "projection onto simple " << s << " is " << ip.real() << "+" << ip.imag() << "i, not a nonnegative integer";
      throw ConsistencyError(msg.str());
    }
    d.multiplicities.push_back(static_cast<int>(r));
  }
  return d;
}

int find_simple(const DoubleCharacter& x, double tol) {
  for (int s = 0; s < x.qd->simple_count(); ++s)
    if ((double_character(x.qd, s).values - x.values).cwiseAbs().maxCoeff() < tol) return s;
  return -1;
}

int dual_simple(const QuantumDouble& qd, int simple) {
  const GroupTable& g = qd.group();
  const ConjugacyData& cc = qd.classes();
  const DoubleSimple& s = qd.simples()[simple];
  const Element ginv = g.inv(s.class_rep);
  const int c = cc.class_of[ginv];
  const Element k = cc.conjugator[ginv];  // k rep_c k^-1 = g^-1
  const CharacterTable& t = qd.centralizer_table(c);
  const auto& elems = cc.centralizers[c].elements;
  for (int pi = 0; pi < t.count(); ++pi) {
    bool match = true;
    for (std::size_t i = 0; i < elems.size() && match; ++i) {
      const cd transported = std::conj(qd.centralizer_value(s.class_index, s.pi, g.conj(k, elems[i])));
      match = std::abs(t.value(pi, static_cast<Element>(i)) - transported) < 1e-8;
    }
    if (match) return qd.simple_index(c, pi);
  }
  throw ConsistencyError("dual character not found in the centralizer table");
}

int tau_simple(const QuantumDoublePtr& qd, int simple) {
  const GroupTable& g = qd->group();
  const DoubleCharacter x = double_character(qd, simple);
  DoubleCharacter y{qd, x.values};
  const auto& pairs = qd->commuting_pairs();
  for (std::size_t p = 0; p < pairs.size(); ++p)
    y.values(static_cast<Eigen::Index>(p)) = x.value(pairs[p].first, g.inv(pairs[p].second));
  const int t = find_simple(y);
  if (t < 0) throw ConsistencyError("tau image of a simple is not simple");
  return t;
}

FusionTensor fusion_tensor(const QuantumDoublePtr& qd) {
  const int k = qd->simple_count();
  std::vector<DoubleCharacter> chars;
  for (int s = 0; s < k; ++s) chars.push_back(double_character(qd, s));
  FusionTensor f{qd->simples(), std::vector<int>(static_cast<std::size_t>(k) * k * k, 0)};
  const double n = qd->group().order();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const DoubleCharacter ab = tensor_character(chars[a], chars[b]);
      for (int c = 0; c < k; ++c) {
        const cd ip = chars[c].values.dot(ab.values) / n;
        const double r = std::round(ip.real());
        if (std::abs(ip - cd(r, 0.0)) > 1e-6 || r < 0)
          throw ConsistencyError("fusion multiplicity is not a nonnegative integer");
        f.n[(static_cast<std::size_t>(a) * k + b) * k + c] = static_cast<int>(r);
      }
    }
  return f;
}

std::vector<std::string> fusion_violations(const FusionTensor& f, const QuantumDouble& qd) {
  std::vector<std::string> out;
  const int k = f.count();
  auto note = [&](const std::string& what, int a, int b, int c) {
    out.push_back(what + " at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  for (int a = 0; a < k; ++a) {
    const int dual = dual_simple(qd, a);
    for (int b = 0; b < k; ++b) {
      long long dims = 0;
      for (int c = 0; c < k; ++c) {
        if (f(a, b, c) != f(b, a, c)) note("N_ab^c != N_ba^c", a, b, c);
        if (f(a, b, c) < 0) note("negative multiplicity", a, b, c);
        dims += static_cast<long long>(f(a, b, c)) * f.simples[c].dim;
      }
      if (f(a, 0, b) != (a == b ? 1 : 0)) note("unit law", a, 0, b);
      if (f(a, b, 0) != (b == dual ? 1 : 0)) note("rigidity", a, b, 0);
      if (dims != static_cast<long long>(f.simples[a].dim) * f.simples[b].dim) note("dimension count", a, b, -1);
    }
  }
  return out;
}

DoubleModule build_module(const GroupTable& g, int dimension, std::vector<Element> weight,
                          std::vector<SparseXcd> action, std::string label) {
  const int n = g.order();
  if (dimension < 0 || static_cast<int>(weight.size()) != dimension)
    throw ValidationError("weight table size does not match the dimension");
  if (static_cast<int>(action.size()) != n) throw ValidationError("one action matrix per group element is required");
  for (Element w : weight)
    if (w < 0 || w >= n) throw ValidationError("weight outside the group");
  for (Element x = 0; x < n; ++x)
    if (action[x].rows() != dimension || action[x].cols() != dimension)
      throw ValidationError("action matrix of element " + std::to_string(x) + " has the wrong shape");
  if (max_abs_diff(action[0], identity_sparse(dimension)) > 1e-10)
    throw ValidationError("identity element does not act as the identity");
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const SparseXcd prod = action[a] * action[b];
      if (max_abs_diff(prod, action[g.mul(a, b)]) > 1e-10)
        throw ValidationError("action is not a homomorphism at pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (Element a = 0; a < n; ++a)
    for (int k = 0; k < action[a].outerSize(); ++k)
      for (SparseXcd::InnerIterator it(action[a], k); it; ++it) {
        if (std::abs(it.value()) <= 1e-12) continue;
        if (weight[it.row()] != g.conj(a, weight[it.col()]))
          throw ValidationError("element " + std::to_string(a) + " moves basis vector " + std::to_string(it.col()) +
                                " out of the conjugated weight space");
      }
  return {dimension, std::move(weight), std::move(action), std::move(label)};
}

DoubleModule unit_module(const GroupTable& g) {
  std::vector<SparseXcd> action(g.order(), identity_sparse(1));
  return {1, {g.identity()}, std::move(action), "unit"};
}

DoubleModule induced_module(const QuantumDouble& qd, int simple) {
  const GroupTable& g = qd.group();
  const ConjugacyData& cc = qd.classes();
  const DoubleSimple& s = qd.simples()[simple];
  if (qd.centralizer_table(s.class_index).degrees[s.pi] != 1)
    throw ValidationError("explicit induced modules need a one-dimensional centralizer character");
  const auto& cls = cc.classes[s.class_index];
  const int d = static_cast<int>(cls.size());
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < d; ++i) pos[cls[i]] = i;
  std::vector<SparseXcd> action;
  for (Element h = 0; h < g.order(); ++h) {
    std::vector<Eigen::Triplet<cd>> t;
    for (int i = 0; i < d; ++i) {
      const Element b = cls[i];
      const Element b2 = g.conj(h, b);
      const Element z = g.mul(g.mul(g.inv(cc.conjugator[b2]), h), cc.conjugator[b]);
      t.emplace_back(pos[b2], i, qd.centralizer_value(s.class_index, s.pi, z));
    }
    SparseXcd m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    action.push_back(std::move(m));
  }
  return build_module(g, d, std::vector<Element>(cls.begin(), cls.end()), std::move(action),
                      "V(" + std::to_string(s.class_rep) + "," + std::to_string(s.pi) + ")");
}

DoubleModule tensor_modules(const GroupTable& g, const DoubleModule& v, const DoubleModule& w) {
  const int d = v.dimension * w.dimension;
  std::vector<Element> weight(d);
  for (int i = 0; i < v.dimension; ++i)
    for (int j = 0; j < w.dimension; ++j) weight[i * w.dimension + j] = g.mul(v.weight[i], w.weight[j]);
  std::vector<SparseXcd> action;
  for (Element h = 0; h < g.order(); ++h) {
    std::vector<Eigen::Triplet<cd>> t;
    for (int a = 0; a < v.action[h].outerSize(); ++a)
      for (SparseXcd::InnerIterator iv(v.action[h], a); iv; ++iv)
        for (int b = 0; b < w.action[h].outerSize(); ++b)
          for (SparseXcd::InnerIterator iw(w.action[h], b); iw; ++iw)
            t.emplace_back(iv.row() * w.dimension + iw.row(), iv.col() * w.dimension + iw.col(), iv.value() * iw.value());
    SparseXcd m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    action.push_back(std::move(m));
  }
  return {d, std::move(weight), std::move(action), v.label + "*" + w.label};
}

DoubleModule direct_sum(const GroupTable& g, const DoubleModule& v, const DoubleModule& w) {
  const int d = v.dimension + w.dimension;
  std::vector<Element> weight(v.weight);
  weight.insert(weight.end(), w.weight.begin(), w.weight.end());
  std::vector<SparseXcd> action;
  for (Element h = 0; h < g.order(); ++h) {
    std::vector<Eigen::Triplet<cd>> t;
    for (int k = 0; k < v.action[h].outerSize(); ++k)
      for (SparseXcd::InnerIterator it(v.action[h], k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < w.action[h].outerSize(); ++k)
      for (SparseXcd::InnerIterator it(w.action[h], k); it; ++it)
        t.emplace_back(it.row() + v.dimension, it.col() + v.dimension, it.value());
    SparseXcd m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    action.push_back(std::move(m));
  }
  return {d, std::move(weight), std::move(action), v.label + "+" + w.label};
}

DoubleCharacter module_character(const QuantumDoublePtr& qd, const DoubleModule& m) {
  const auto& pairs = qd->commuting_pairs();
  DoubleCharacter x{qd, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pairs.size()))};
  std::vector<Eigen::VectorXcd> diag;
  for (const auto& a : m.action) diag.emplace_back(a.diagonal());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    cd s = 0.0;
    for (int i = 0; i < m.dimension; ++i)
      if (m.weight[i] == b) s += diag[a](i);
    x.values(static_cast<Eigen::Index>(p)) = s;
  }
  return x;
}

DoubleDecomposition decompose_module(const QuantumDoublePtr& qd, const DoubleModule& m, double tol) {
  DoubleDecomposition d = decompose_character(module_character(qd, m), tol);
  long long total = 0;
  for (int s = 0; s < qd->simple_count(); ++s) total += static_cast<long long>(d.multiplicities[s]) * qd->simples()[s].dim;
  if (total != m.dimension) throw ConsistencyError("decomposition does not account for the module dimension");
  return d;
}

SparseXcd braiding(const GroupTable& g, const DoubleModule& v, const DoubleModule& w) {
  (void)g;
  const int dv = v.dimension, dw = w.dimension;
  std::vector<Eigen::Triplet<cd>> t;
  for (int i = 0; i < dv; ++i) {
    const SparseXcd& act = w.action[v.weight[i]];
    for (int j = 0; j < dw; ++j)
      for (SparseXcd::InnerIterator it(act, j); it; ++it) t.emplace_back(it.row() * dv + i, i * dw + j, it.value());
  }
  SparseXcd r(dv * dw, dv * dw);
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

int intertwiner_dimension(const QuantumDouble& qd, int a, int b, int c) {
  const GroupTable& g = qd.group();
  const DoubleModule va = induced_module(qd, a), vb = induced_module(qd, b), vc = induced_module(qd, c);
  const DoubleModule ab = tensor_modules(g, va, vb);
  auto weight_diag = [](const DoubleModule& m) {
    SparseXcd d(m.dimension, m.dimension);
    std::vector<Eigen::Triplet<cd>> t;
    for (int i = 0; i < m.dimension; ++i) t.emplace_back(i, i, cd(static_cast<double>(m.weight[i]) + 1.0, 0.0));
    d.setFromTriplets(t.begin(), t.end());
    return d;
  };
  std::vector<LinearCondition> conds{{weight_diag(vc), weight_diag(ab)}};
  for (Element s : g.generators()) conds.push_back({vc.action[s], ab.action[s]});
  return hom_space(vc.dimension, ab.dimension, conds).dimension;
}

}  // namespace qdouble
