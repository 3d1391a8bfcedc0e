#pragma once

#include "groups.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

struct InvalidAutomorphism : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SizeCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Rack {
 public:
  Rack() = default;
  Rack(int n, std::vector<int> table, std::vector<std::string> labels = {})
      : n_(n), t_(std::move(table)), labels_(std::move(labels)) {
    if (static_cast<int>(t_.size()) != n_ * n_) throw std::invalid_argument("rack table has wrong size");
  }

  int size() const { return n_; }
  int op(int x, int y) const { return t_[x * n_ + y]; }
  const std::vector<int>& table() const { return t_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool rows_bijective() const {
    for (int x = 0; x < n_; ++x) {
      std::vector<bool> hit(n_, false);
      for (int y = 0; y < n_; ++y) {
        int z = op(x, y);
        if (z < 0 || z >= n_ || hit[z]) return false;
        hit[z] = true;
      }
    }
    return true;
  }

  bool self_distributive() const {
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        for (int z = 0; z < n_; ++z)
          if (op(x, op(y, z)) != op(op(x, y), op(x, z))) return false;
    return true;
  }

  bool is_rack() const { return rows_bijective() && self_distributive(); }

  bool is_trivial() const {
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (op(x, y) != y) return false;
    return true;
  }

  // Transitivity of the inner group.
  bool is_indecomposable() const {
    if (n_ == 0) return false;
    std::vector<bool> seen(n_, false);
    std::vector<int> todo{0};
    seen[0] = true;
    while (!todo.empty()) {
      int y = todo.back();
      todo.pop_back();
      for (int x = 0; x < n_; ++x) {
        int z = op(x, y);
        if (!seen[z]) {
          seen[z] = true;
          todo.push_back(z);
        }
      }
    }
    for (bool b : seen)
      if (!b) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<int> t_;
  std::vector<std::string> labels_;
};

inline Rack conjugation_rack(const ConjClass& c) {
  const auto& d = c.ambient.domain();
  int n = static_cast<int>(c.elements.size());
  std::unordered_map<Element, int, ElementHash> idx;
  for (int i = 0; i < n; ++i) idx.emplace(c.elements[i], i);
  std::vector<int> t(n * n);
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    Element xi = d.inv(c.elements[x]);
    labels.push_back(d.to_string(c.elements[x]));
    for (int y = 0; y < n; ++y) {
      Element z = d.mul(d.mul(c.elements[x], c.elements[y]), xi);
      auto it = idx.find(z);
      if (it == idx.end()) throw std::logic_error("class not closed under conjugation");
      t[x * n + y] = it->second;
    }
  }
  return Rack(n, std::move(t), std::move(labels));
}

// Rack on a set of group elements closed under conjugation by its members.
inline Rack subrack_of_elements(const Domain& d, const std::vector<Element>& elems) {
  int n = static_cast<int>(elems.size());
  std::unordered_map<Element, int, ElementHash> idx;
  for (int i = 0; i < n; ++i) idx.emplace(elems[i], i);
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x) {
    Element xi = d.inv(elems[x]);
    for (int y = 0; y < n; ++y) {
      auto it = idx.find(d.mul(d.mul(elems[x], elems[y]), xi));
      if (it == idx.end()) throw std::invalid_argument("element set is not a subrack");
      t[x * n + y] = it->second;
    }
  }
  return Rack(n, std::move(t));
}

// Gamma = Z/orders[0] x ... x Z/orders[k-1]; column j of matrix is the image of
// the j-th generator.
struct AffineRackSpec {
  std::vector<int> orders;
  std::vector<std::vector<int>> matrix;

  int rank() const { return static_cast<int>(orders.size()); }
  int group_size() const {
    int s = 1;
    for (int o : orders) s *= o;
    return s;
  }
  std::vector<int> decode(int a) const {
    std::vector<int> v(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
      v[i] = a % orders[i];
      a /= orders[i];
    }
    return v;
  }
  int encode(const std::vector<int>& v) const {
    int a = 0;
    for (int i = rank() - 1; i >= 0; --i) a = a * orders[i] + (((v[i] % orders[i]) + orders[i]) % orders[i]);
    return a;
  }
  int apply(int a) const {
    auto v = decode(a);
    std::vector<int> r(orders.size(), 0);
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) r[i] += matrix[i][j] * v[j];
    return encode(r);
  }
  int add(int a, int b) const {
    auto u = decode(a), v = decode(b);
    for (int i = 0; i < rank(); ++i) u[i] += v[i];
    return encode(u);
  }
  int sub(int a, int b) const {
    auto u = decode(a), v = decode(b);
    for (int i = 0; i < rank(); ++i) u[i] -= v[i];
    return encode(u);
  }

  void validate() const {
    int k = rank();
    if (k == 0) throw InvalidAutomorphism("empty group");
    for (int o : orders)
      if (o < 1) throw InvalidAutomorphism("cyclic orders must be positive");
    if (static_cast<int>(matrix.size()) != k) throw InvalidAutomorphism("matrix shape mismatch");
    for (const auto& row : matrix)
      if (static_cast<int>(row.size()) != k) throw InvalidAutomorphism("matrix shape mismatch");
    // well defined: orders[j] * column j must vanish
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        if ((static_cast<long long>(orders[j]) * matrix[i][j]) % orders[i] != 0)
          throw InvalidAutomorphism("matrix does not define an endomorphism");
    int n = group_size();
    std::vector<bool> hit(n, false);
    for (int a = 0; a < n; ++a) {
      int b = apply(a);
      if (hit[b]) throw InvalidAutomorphism("matrix is not invertible on the group");
      hit[b] = true;
    }
  }
};

inline Rack affine_rack(const AffineRackSpec& s) {
  s.validate();
  int n = s.group_size();
  std::vector<int> t(n * n);
  for (int a = 0; a < n; ++a) {
    int ma = s.sub(a, s.apply(a));
    for (int b = 0; b < n; ++b) t[a * n + b] = s.add(s.apply(b), ma);
  }
  return Rack(n, std::move(t));
}

struct AffineEquivalences {
  bool injective;
  bool surjective;
  bool fixed_trivial;
};

inline AffineEquivalences affine_equivalences(const AffineRackSpec& s) {
  s.validate();
  int n = s.group_size();
  std::vector<int> img(n);
  std::vector<bool> hit(n, false);
  int distinct = 0, kernel = 0, fixed = 0;
  for (int a = 0; a < n; ++a) {
    int ta = s.apply(a);
    img[a] = s.sub(a, ta);
    if (!hit[img[a]]) {
      hit[img[a]] = true;
      ++distinct;
    }
    if (img[a] == 0) ++kernel;
    if (ta == a) ++fixed;
  }
  return {kernel == 1, distinct == n, fixed == 1};
}

inline bool is_indecomposable_affine(const AffineRackSpec& s) {
  auto e = affine_equivalences(s);
  if (e.injective != e.surjective || e.injective != e.fixed_trivial)
    throw std::logic_error("injectivity, surjectivity and fixed points disagree");
  return e.injective;
}

inline bool is_prime_power(int q, int* p_out = nullptr, int* m_out = nullptr) {
  if (q < 2) return false;
  int p = 2;
  while (q % p) ++p;
  int m = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) return false;
  if (p_out) *p_out = p;
  if (m_out) *m_out = m;
  return true;
}

// d is a field element code (see FiniteField); for prime q it is the residue.
inline bool in_finite_affine_list(int q, int d) {
  if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");
  if (d < 1 || d >= q) throw std::invalid_argument("multiplier must be a nonzero field element");
  switch (q) {
    case 3: return d == 2;
    case 4: return d == 2 || d == 3;
    case 5: return d == 2 || d == 3;
    case 7: return d == 3 || d == 5;
    default: return false;
  }
}

// Multiplication by d on the additive group of F_q, written over the polynomial basis.
inline AffineRackSpec field_affine_spec(int q, int d) {
  int p, m;
  if (!is_prime_power(q, &p, &m)) throw std::invalid_argument("q must be a prime power");
  FiniteField F(p, m);
  AffineRackSpec s;
  s.orders.assign(m, p);
  s.matrix.assign(m, std::vector<int>(m, 0));
  int basis = 1;
  for (int j = 0; j < m; ++j) {
    int img = F.mul(d, basis);
    for (int i = 0; i < m; ++i) {
      s.matrix[i][j] = img % p;
      img /= p;
    }
    basis *= p;
  }
  return s;
}

// Gamma semidirect <t> realized as affine permutations x -> t^k(x) + a of Gamma.
struct AffineGroup {
  FiniteGroup group;
  Element t;                        // x -> t(x)
  std::vector<Element> translation;  // x -> x + a, indexed by a
};

inline AffineGroup affine_group(const AffineRackSpec& s) {
  s.validate();
  int n = s.group_size();
  auto dom = Domain::permutations(n);
  AffineGroup out;
  std::vector<int> img(n);
  for (int x = 0; x < n; ++x) img[x] = s.apply(x);
  out.t = dom->from_images(img);
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < n; ++x) img[x] = s.add(x, a);
    out.translation.push_back(dom->from_images(img));
  }
  std::vector<Element> gens{out.t};
  for (int j = 0; j < s.rank(); ++j) {
    std::vector<int> unit(s.rank(), 0);
    unit[j] = 1;
    gens.push_back(out.translation[s.encode(unit)]);
  }
  out.group = FiniteGroup(dom, gens);
  return out;
}

namespace detail {

inline std::vector<int> rack_profile(const Rack& r, int x) {
  // cycle type of the left translation, then the number of y with y > x = x
  int n = r.size();
  std::vector<int> cyc;
  std::vector<bool> seen(n, false);
  for (int y = 0; y < n; ++y) {
    if (seen[y]) continue;
    int len = 0, z = y;
    while (!seen[z]) {
      seen[z] = true;
      z = r.op(x, z);
      ++len;
    }
    cyc.push_back(len);
  }
  std::sort(cyc.begin(), cyc.end());
  int stab = 0;
  for (int y = 0; y < n; ++y)
    if (r.op(y, x) == x) ++stab;
  cyc.push_back(-1);
  cyc.push_back(stab);
  return cyc;
}

inline bool extend_iso(const Rack& a, const Rack& b, std::vector<int>& f, std::vector<int>& g,
                       const std::vector<std::vector<int>>& pa, const std::vector<std::vector<int>>& pb) {
  int n = a.size();
  int x = -1;
  for (int i = 0; i < n; ++i)
    if (f[i] < 0) {
      x = i;
      break;
    }
  if (x < 0) return true;
  for (int u = 0; u < n; ++u) {
    if (g[u] >= 0 || pa[x] != pb[u]) continue;
    std::vector<int> f2 = f, g2 = g;
    std::vector<std::pair<int, int>> todo{{x, u}};
    bool ok = true;
    while (ok && !todo.empty()) {
      auto [p, v] = todo.back();
      todo.pop_back();
      if (f2[p] >= 0) {
        if (f2[p] != v) ok = false;
        continue;
      }
      if (g2[v] >= 0) {
        ok = false;
        continue;
      }
      f2[p] = v;
      g2[v] = p;
      for (int y = 0; y < n && ok; ++y) {
        if (f2[y] < 0) continue;
        todo.push_back({a.op(p, y), b.op(v, f2[y])});
        todo.push_back({a.op(y, p), b.op(f2[y], v)});
      }
    }
    if (!ok) continue;
    if (extend_iso(a, b, f2, g2, pa, pb)) {
      f = f2;
      g = g2;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline constexpr int kRackIsoCap = 24;

inline bool rack_isomorphic(const Rack& a, const Rack& b) {
  if (a.size() > kRackIsoCap || b.size() > kRackIsoCap)
    throw SizeCapExceeded("rack isomorphism is limited to 24 elements");
  if (a.size() != b.size()) return false;
  int n = a.size();
  std::vector<std::vector<int>> pa(n), pb(n);
  for (int i = 0; i < n; ++i) {
    pa[i] = detail::rack_profile(a, i);
    pb[i] = detail::rack_profile(b, i);
  }
  auto sa = pa, sb = pb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<int> f(n, -1), g(n, -1);
  return detail::extend_iso(a, b, f, g, pa, pb);
}

struct ExemptRack {
  std::string label;
  Rack rack;
};

// The affine racks of the finite list together with the classes of 2- and
// 4-cycles in S4.
inline const std::vector<ExemptRack>& exempt_racks() {
  static const std::vector<ExemptRack> list = [] {
    std::vector<ExemptRack> out;
    const std::vector<std::pair<int, int>> pairs{{3, 2}, {4, 2}, {4, 3}, {5, 2}, {5, 3}, {7, 3}, {7, 5}};
    for (auto [q, d] : pairs)
      out.push_back({"Aff(F" + std::to_string(q) + "," + std::to_string(d) + ")", affine_rack(field_affine_spec(q, d))});
    auto dom = Domain::permutations(4);
    FiniteGroup S4(dom, {perm_from_cycles("(1,2)", 4), perm_from_cycles("(1,2,3,4)", 4)}, "S4");
    out.push_back({"S4 transpositions", conjugation_rack(conjugacy_class(S4, perm_from_cycles("(1,2)", 4)))});
    out.push_back({"S4 4-cycles", conjugation_rack(conjugacy_class(S4, perm_from_cycles("(1,2,3,4)", 4)))});
    return out;
  }();
  return list;
}

// Label of the exempt rack isomorphic to r, or empty.
inline std::string exempt_match(const Rack& r) {
  if (r.size() < 3 || r.size() > 7) return {};
  for (const auto& e : exempt_racks())
    if (rack_isomorphic(r, e.rack)) return e.label;
  return {};
}

inline std::string dump(const Rack& r) {
  std::ostringstream os;
  os << r.size() << "\n";
  for (int x = 0; x < r.size(); ++x) {
    for (int y = 0; y < r.size(); ++y) os << (y ? " " : "") << r.op(x, y);
    os << "\n";
  }
  return os.str();
}

inline Rack parse_dump(const std::string& text) {
  std::istringstream is(text);
  int n;
  if (!(is >> n) || n < 0) throw std::invalid_argument("bad rack dump header");
  std::vector<int> t(n * n);
  for (auto& v : t)
    if (!(is >> v)) throw std::invalid_argument("truncated rack dump");
  return Rack(n, std::move(t));
}

}  // namespace rc
