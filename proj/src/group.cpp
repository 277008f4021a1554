#include "qdouble/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "qdouble/errors.hpp"

namespace qdouble {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
  return out;
}

bool is_bijection(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<Element> closure(const GroupTable& g, const std::vector<Element>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> out{0};
  in[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Element s : gens) {
      Element y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b, std::string label) {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  std::vector<Element> mult(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      mult[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
  }
  return GroupTable(n, std::move(mult), std::move(label));
}

GroupTable cyclic(int n, std::string label) {
  std::vector<Element> mult(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mult[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  return GroupTable(n, std::move(mult), std::move(label));
}

// r^i s^j stored at i + n*j.
GroupTable dihedral(int n, std::string label) {
  const int order = 2 * n;
  std::vector<Element> mult(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      int a = x % n, b = x / n, c = y % n, d = y / n;
      int rot = ((a + (b ? -c : c)) % n + n) % n;
      mult[static_cast<std::size_t>(x) * order + y] = rot + n * ((b + d) % 2);
    }
  }
  return GroupTable(order, std::move(mult), std::move(label));
}

Perm cycle_perm(int n, const std::vector<int>& cycle) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

GroupTable parse_factor(const std::string& spec, int cap) {
  static const std::regex family(R"(^([ZDSA]):([0-9]{1,6})$)");
  std::smatch m;
  if (spec == "Q8") {
    // left regular action on {1,-1,i,-i,j,-j,k,-k}
    Perm li{2, 3, 1, 0, 6, 7, 5, 4};
    Perm lj{4, 5, 7, 6, 1, 0, 2, 3};
    return group_from_generators(8, {li, lj}, cap, spec);
  }
  if (!std::regex_match(spec, m, family)) throw ParseError("unrecognised group spec '" + spec + "'");
  const char kind = m[1].str()[0];
  const int n = std::stoi(m[2].str());
  if (n < 1) throw ParseError("group parameter must be positive in '" + spec + "'");
  switch (kind) {
    case 'Z':
      if (n > cap) throw SizeLimitError(spec + " exceeds the order cap");
      return cyclic(n, spec);
    case 'D':
      if (2L * n > cap) throw SizeLimitError(spec + " exceeds the order cap");
      return dihedral(n, spec);
    case 'S': {
      std::vector<Perm> gens;
      if (n >= 2) {
        std::vector<int> full(n);
        std::iota(full.begin(), full.end(), 0);
        gens.push_back(cycle_perm(n, {0, 1}));
        gens.push_back(cycle_perm(n, full));
      }
      return group_from_generators(n, gens, cap, spec);
    }
    case 'A': {
      std::vector<Perm> gens;
      for (int k = 2; k < n; ++k) gens.push_back(cycle_perm(n, {0, 1, k}));
      return group_from_generators(n, gens, cap, spec);
    }
  }
  throw ParseError("unrecognised group spec '" + spec + "'");
}

}  // namespace

GroupTable::GroupTable(int order, std::vector<Element> mult, std::string label)
    : order_(order), mult_(std::move(mult)), inv_(order, -1), label_(std::move(label)) {
  if (order_ < 1) throw ValidationError("group order must be positive");
  const std::size_t n = static_cast<std::size_t>(order_);
  if (mult_.size() != n * n) throw ValidationError("multiplication table has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      Element r = mult_[i * n + j], c = mult_[j * n + i];
      if (r < 0 || r >= order_ || c < 0 || c >= order_ || row[r] || col[c])
        throw ValidationError("multiplication table is not a Latin square");
      row[r] = col[c] = true;
    }
    if (mult_[i] != static_cast<Element>(i) || mult_[i * n] != static_cast<Element>(i))
      throw ValidationError("element 0 is not the identity");
  }
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
    }
    if (mul(inv_[a], a) != 0) throw ValidationError("left and right inverses differ");
  }
  if (order_ <= 256) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw ValidationError("multiplication is not associative");
  }
  for (int a = 0; a < order_; ++a) exponent_ = std::lcm(exponent_, element_order(a));

  std::vector<bool> reached(order_, false);
  reached[0] = true;
  for (Element x = 0; x < order_; ++x) {
    if (reached[x]) continue;
    generators_.push_back(x);
    for (Element y : closure(*this, generators_)) reached[y] = true;
  }
}

int GroupTable::element_order(Element a) const {
  int k = 1;
  for (Element p = a; p != 0; p = mul(p, a)) ++k;
  return k;
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (!commute(a, b)) return false;
  return true;
}

std::uint64_t GroupTable::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xFFu;
      h *= 1099511628211ULL;
    }
  };
  feed(static_cast<std::uint32_t>(order_));
  for (Element e : mult_) feed(static_cast<std::uint32_t>(e));
  return h;
}

bool Subgroup::contains(Element x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

GroupTable group_from_generators(int n, const std::vector<std::vector<int>>& gens, int cap,
                                 std::string label) {
  if (n < 1) throw ValidationError("permutation domain must be nonempty");
  for (const auto& s : gens)
    if (!is_bijection(s, n)) throw ValidationError("generator is not a permutation of 0..n-1");

  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, int> index{{id, 0}};
  std::vector<Perm> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      Perm p = compose(elems[i], s);
      if (index.emplace(p, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(p));
        if (static_cast<int>(elems.size()) > cap)
          throw SizeLimitError("generated group exceeds the order cap of " + std::to_string(cap));
      }
    }
  }
  const int order = static_cast<int>(elems.size());
  std::vector<Element> mult(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      mult[static_cast<std::size_t>(a) * order + b] = index.at(compose(elems[a], elems[b]));
  return GroupTable(order, std::move(mult), std::move(label));
}

GroupTable named_group(const std::string& spec, int cap) {
  if (spec.empty()) throw ParseError("empty group spec");
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, '*');) parts.push_back(part);
  if (parts.empty() || spec.back() == '*') throw ParseError("malformed product spec '" + spec + "'");
  GroupTable g = parse_factor(parts[0], cap);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    GroupTable h = parse_factor(parts[i], cap);
    if (static_cast<long>(g.order()) * h.order() > cap)
      throw SizeLimitError(spec + " exceeds the order cap");
    g = direct_product(g, h, spec);
  }
  return g;
}

GroupTable read_generator_file(std::istream& in, int cap, std::string label) {
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!(ls >> n) || n < 1) throw ParseError("generator file: first line must be a positive degree");
    break;
  }
  if (n < 1) throw ParseError("generator file is empty");
  std::vector<std::vector<int>> gens;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<int> perm;
    for (int v; ls >> v;) perm.push_back(v);
    if (!ls.eof()) throw ParseError("generator file: non-integer token");
    if (!is_bijection(perm, n)) throw ParseError("generator file: line is not a permutation of 0..n-1");
    gens.push_back(std::move(perm));
  }
  return group_from_generators(n, gens, cap, std::move(label));
}

ConjugacyPtr conjugacy_classes(const GroupPtr& g) {
  auto cd = std::make_shared<ConjugacyData>();
  const int n = g->order();
  cd->group = g;
  cd->class_of.assign(n, -1);
  cd->conjugator.assign(n, -1);
  for (Element x = 0; x < n; ++x) {
    if (cd->class_of[x] >= 0) continue;
    const int c = static_cast<int>(cd->classes.size());
    std::vector<Element> members;
    for (Element h = 0; h < n; ++h) {
      Element b = g->conj(h, x);
      if (cd->class_of[b] < 0) {
        cd->class_of[b] = c;
        cd->conjugator[b] = h;
        members.push_back(b);
      }
    }
    std::sort(members.begin(), members.end());
    cd->classes.push_back(std::move(members));
    cd->reps.push_back(x);
  }
  for (Element r : cd->reps) {
    std::vector<Element> z;
    for (Element h = 0; h < n; ++h)
      if (g->commute(h, r)) z.push_back(h);
    cd->centralizers.push_back(make_subgroup(*g, std::move(z)));
  }
  return cd;
}

std::vector<Subgroup> normal_subgroups(const ConjugacyData& cd) {
  const GroupTable& g = *cd.group;
  const int k = cd.count();
  // support[i][j][l]: class l meets C_i * C_j
  std::vector<std::vector<std::vector<bool>>> support(
      k, std::vector<std::vector<bool>>(k, std::vector<bool>(k, false)));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l)
      for (Element x : cd.classes[i]) support[i][cd.class_of[g.mul(g.inv(x), cd.reps[l])]][l] = true;

  auto close = [&](std::vector<bool> s) {
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < k; ++i) {
        if (!s[i]) continue;
        for (int j = 0; j < k; ++j) {
          if (!s[j]) continue;
          for (int l = 0; l < k; ++l) {
            if (support[i][j][l] && !s[l]) s[l] = grew = true;
          }
        }
      }
    }
    return s;
  };

  std::vector<bool> trivial(k, false);
  trivial[0] = true;
  std::vector<std::vector<bool>> found{close(trivial)};
  for (std::size_t q = 0; q < found.size(); ++q) {
    for (int c = 0; c < k; ++c) {
      if (found[q][c]) continue;
      auto s = found[q];
      s[c] = true;
      s = close(std::move(s));
      if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(std::move(s));
    }
  }

  std::vector<Subgroup> out;
  for (const auto& s : found) {
    std::vector<Element> elems;
    for (int c = 0; c < k; ++c)
      if (s[c]) elems.insert(elems.end(), cd.classes[c].begin(), cd.classes[c].end());
    std::sort(elems.begin(), elems.end());
    out.push_back(make_subgroup(g, std::move(elems)));
    if (!out.back().is_normal) throw ConsistencyError("class-union closure produced a non-normal subgroup");
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

Subgroup make_subgroup(const GroupTable& g, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup h{std::move(elements), false};
  if (h.elements.empty() || h.elements.front() != 0) throw ValidationError("subgroup must contain the identity");
  for (Element x : h.elements) {
    if (x < 0 || x >= g.order()) throw ValidationError("subgroup element out of range");
    if (!h.contains(g.inv(x))) throw ValidationError("subset is not closed under inverses");
    for (Element y : h.elements)
      if (!h.contains(g.mul(x, y))) throw ValidationError("subset is not closed under multiplication");
  }
  h.is_normal = true;
  for (Element a = 0; a < g.order() && h.is_normal; ++a)
    for (Element x : h.elements)
      if (!h.contains(g.conj(a, x))) {
        h.is_normal = false;
        break;
      }
  return h;
}

GroupTable subgroup_table(const GroupTable& g, const Subgroup& sub, std::string label) {
  const int m = sub.order();
  std::vector<int> local(g.order(), -1);
  for (int i = 0; i < m; ++i) local[sub.elements[i]] = i;
  std::vector<Element> mult(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = local[g.mul(sub.elements[i], sub.elements[j])];
      if (v < 0) throw ValidationError("subgroup is not closed");
      mult[static_cast<std::size_t>(i) * m + j] = v;
    }
  return GroupTable(m, std::move(mult), label.empty() ? g.label() + "[sub]" : std::move(label));
}

}  // namespace qdouble
