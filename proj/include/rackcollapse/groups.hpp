#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rc {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ElementNotInGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

// F_{p^m} with elements coded as integers 0..q-1 (base-p digits of a polynomial in
// a root x of the lexicographically least primitive polynomial).  Internally
// nonzero elements are handled through discrete logs to base x.
class FiniteField {
 public:
  FiniteField(int p, int m) : p_(p), m_(m) {
    if (p < 2 || m < 1) throw std::invalid_argument("bad field parameters");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= p;
    if (q_ > 65535) throw std::invalid_argument("field too large");
    find_primitive();
  }

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }
  const std::vector<int>& modulus_poly() const { return poly_; }

  // log of a nonzero element code; -1 for zero
  int log(int a) const { return log_[a]; }
  int exp(int k) const { return exp_[((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }

  int add(int a, int b) const {
    int r = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }
  int neg(int a) const {
    int r = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }
  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp(log_[a] + log_[b]);
  }
  int inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp(-log_[a]);
  }

 private:
  std::vector<int> mulx(const std::vector<int>& v) const {
    // multiply a polynomial of degree < m by x modulo the monic poly_
    std::vector<int> r(m_, 0);
    int top = v[m_ - 1];
    for (int i = m_ - 1; i > 0; --i) r[i] = v[i - 1];
    r[0] = 0;
    for (int i = 0; i < m_; ++i) r[i] = ((r[i] - top * poly_[i]) % p_ + p_) % p_;
    return r;
  }
  int code(const std::vector<int>& v) const {
    int r = 0;
    for (int i = m_ - 1; i >= 0; --i) r = r * p_ + v[i];
    return r;
  }

  void find_primitive() {
    // poly_ holds the non-leading coefficients c_0..c_{m-1} of x^m + ...
    if (m_ == 1) {
      for (int g = 1; g < p_; ++g) {
        poly_ = {(p_ - g) % p_};
        if (try_generator_prime(g)) return;
      }
      throw std::logic_error("no primitive root found");
    }
    for (int enc = 0; enc < q_; ++enc) {
      poly_.assign(m_, 0);
      int e = enc;
      for (int i = 0; i < m_; ++i) {
        poly_[i] = e % p_;
        e /= p_;
      }
      if (try_poly()) return;
    }
    throw std::logic_error("no primitive polynomial found");
  }

  bool try_generator_prime(int g) {
    std::vector<int> lg(q_, -1), ex(q_ - 1);
    int x = 1;
    for (int k = 0; k < q_ - 1; ++k) {
      if (lg[x] != -1) return false;
      lg[x] = k;
      ex[k] = x;
      x = x * g % p_;
    }
    if (x != 1) return false;
    log_ = lg;
    exp_ = ex;
    return true;
  }

  bool try_poly() {
    std::vector<int> lg(q_, -1), ex(q_ - 1);
    std::vector<int> v(m_, 0);
    v[0] = 1;
    for (int k = 0; k < q_ - 1; ++k) {
      int c = code(v);
      if (c == 0 || lg[c] != -1) return false;
      lg[c] = k;
      ex[k] = c;
      v = mulx(v);
    }
    if (code(v) != 1) return false;
    log_ = lg;
    exp_ = ex;
    return true;
  }

  int p_, m_, q_;
  std::vector<int> poly_;
  std::vector<int> log_, exp_;
};

// A group element is a flat code vector; its meaning comes from the Domain.
// Permutations store images of 0..n-1; matrices store row-major entries coded as
// 0 for zero and 1 + log for a nonzero entry.
struct Element {
  std::vector<std::uint16_t> v;
  bool operator==(const Element& o) const { return v == o.v; }
  bool operator!=(const Element& o) const { return v != o.v; }
  bool operator<(const Element& o) const { return v < o.v; }
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : e.v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using ElementSet = std::unordered_set<Element, ElementHash>;

class Domain {
 public:
  enum class Kind { Perm, Matrix };

  static std::shared_ptr<Domain> permutations(int degree) {
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Perm;
    d->n_ = degree;
    return d;
  }
  static std::shared_ptr<Domain> matrices(int dim, int p, int m) {
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Matrix;
    d->n_ = dim;
    d->field_ = std::make_shared<FiniteField>(p, m);
    return d;
  }

  Kind kind() const { return kind_; }
  int degree() const { return n_; }
  const FiniteField& field() const { return *field_; }
  const std::vector<Element>& central() const { return central_; }

  // Turns the domain into the quotient by the central subgroup generated by zs.
  void set_central_quotient(const std::vector<Element>& zs) {
    central_.clear();
    std::vector<Element> todo{raw_identity()};
    ElementSet seen{todo[0]};
    while (!todo.empty()) {
      Element x = todo.back();
      todo.pop_back();
      central_.push_back(x);
      for (const auto& z : zs) {
        Element y = raw_mul(x, z);
        if (seen.insert(y).second) todo.push_back(y);
      }
    }
    std::sort(central_.begin(), central_.end());
  }

  Element identity() const { return normalize(raw_identity()); }

  Element mul(const Element& a, const Element& b) const { return normalize(raw_mul(a, b)); }

  Element inv(const Element& a) const { return normalize(raw_inv(a)); }

  Element conj(const Element& g, const Element& x) const { return mul(mul(g, x), inv(g)); }

  Element commutator(const Element& a, const Element& b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }

  Element pow(Element a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Element r = identity();
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  long long order(const Element& a) const {
    Element e = identity(), x = a;
    long long k = 1;
    while (x != e) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  Element normalize(const Element& x) const {
    if (central_.size() <= 1) return x;
    Element best = x;
    for (const auto& z : central_) {
      Element y = raw_mul(z, x);
      if (y < best) best = y;
    }
    return best;
  }

  bool is_valid(const Element& x) const {
    if (kind_ == Kind::Perm) {
      if (static_cast<int>(x.v.size()) != n_) return false;
      std::vector<bool> hit(n_, false);
      for (auto i : x.v) {
        if (i >= n_ || hit[i]) return false;
        hit[i] = true;
      }
      return true;
    }
    if (static_cast<int>(x.v.size()) != n_ * n_) return false;
    for (auto c : x.v)
      if (c > field_->q() - 1) return false;
    return determinant(x) != 0;
  }

  // matrix helpers in field-integer coding
  int entry(const Element& x, int i, int j) const {
    auto c = x.v[i * n_ + j];
    return c == 0 ? 0 : field_->exp(c - 1);
  }
  static std::uint16_t encode_entry(const FiniteField& F, int a) {
    return a == 0 ? 0 : static_cast<std::uint16_t>(F.log(a) + 1);
  }

  Element from_entries(const std::vector<std::vector<int>>& rows) const {
    if (kind_ != Kind::Matrix || static_cast<int>(rows.size()) != n_)
      throw std::invalid_argument("matrix shape mismatch");
    Element x;
    x.v.resize(n_ * n_);
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(rows[i].size()) != n_) throw std::invalid_argument("matrix shape mismatch");
      for (int j = 0; j < n_; ++j) {
        int a = rows[i][j];
        if (a < 0 || a >= field_->q()) throw std::invalid_argument("matrix entry outside field");
        x.v[i * n_ + j] = encode_entry(*field_, a);
      }
    }
    if (determinant(x) == 0) throw std::invalid_argument("singular matrix");
    return normalize(x);
  }

  std::vector<std::vector<int>> entries(const Element& x) const {
    std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[i][j] = entry(x, i, j);
    return r;
  }

  // 0-based images
  Element from_images(const std::vector<int>& img) const {
    Element x;
    for (int i : img) x.v.push_back(static_cast<std::uint16_t>(i));
    if (!is_valid(x)) throw std::invalid_argument("not a permutation");
    return x;
  }

  int determinant(const Element& x) const {
    const auto& F = *field_;
    std::vector<std::vector<int>> a = entries(x);
    int det = 1;
    for (int c = 0; c < n_; ++c) {
      int piv = -1;
      for (int r = c; r < n_; ++r)
        if (a[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = F.neg(det);
      }
      det = F.mul(det, a[c][c]);
      int ic = F.inv(a[c][c]);
      for (int r = c + 1; r < n_; ++r) {
        if (a[r][c] == 0) continue;
        int f = F.mul(a[r][c], ic);
        for (int k = c; k < n_; ++k) a[r][k] = F.add(a[r][k], F.neg(F.mul(f, a[c][k])));
      }
    }
    return det;
  }

  std::string to_string(const Element& x) const;

 private:
  Domain() = default;

  Element raw_identity() const {
    Element e;
    if (kind_ == Kind::Perm) {
      e.v.resize(n_);
      std::iota(e.v.begin(), e.v.end(), 0);
    } else {
      e.v.assign(n_ * n_, 0);
      for (int i = 0; i < n_; ++i) e.v[i * n_ + i] = 1;  // log 0 + 1
    }
    return e;
  }

  // product a*b: for permutations (a*b)(i) = a(b(i)), i.e. apply b first
  Element raw_mul(const Element& a, const Element& b) const {
    Element r;
    if (kind_ == Kind::Perm) {
      r.v.resize(n_);
      for (int i = 0; i < n_; ++i) r.v[i] = a.v[b.v[i]];
      return r;
    }
    const auto& F = *field_;
    r.v.assign(n_ * n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        int s = 0;
        for (int k = 0; k < n_; ++k) {
          auto x = a.v[i * n_ + k], y = b.v[k * n_ + j];
          if (x && y) s = F.add(s, F.exp(x - 1 + y - 1));
        }
        r.v[i * n_ + j] = encode_entry(F, s);
      }
    return r;
  }

  Element raw_inv(const Element& a) const {
    Element r;
    if (kind_ == Kind::Perm) {
      r.v.resize(n_);
      for (int i = 0; i < n_; ++i) r.v[a.v[i]] = static_cast<std::uint16_t>(i);
      return r;
    }
    const auto& F = *field_;
    auto m = entries(a);
    std::vector<std::vector<int>> id(n_, std::vector<int>(n_, 0));
    for (int i = 0; i < n_; ++i) id[i][i] = 1;
    for (int c = 0; c < n_; ++c) {
      int piv = c;
      while (m[piv][c] == 0) ++piv;
      std::swap(m[piv], m[c]);
      std::swap(id[piv], id[c]);
      int ic = F.inv(m[c][c]);
      for (int k = 0; k < n_; ++k) {
        m[c][k] = F.mul(m[c][k], ic);
        id[c][k] = F.mul(id[c][k], ic);
      }
      for (int r2 = 0; r2 < n_; ++r2) {
        if (r2 == c || m[r2][c] == 0) continue;
        int f = m[r2][c];
        for (int k = 0; k < n_; ++k) {
          m[r2][k] = F.add(m[r2][k], F.neg(F.mul(f, m[c][k])));
          id[r2][k] = F.add(id[r2][k], F.neg(F.mul(f, id[c][k])));
        }
      }
    }
    r.v.resize(n_ * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.v[i * n_ + j] = encode_entry(F, id[i][j]);
    return r;
  }

  Kind kind_ = Kind::Perm;
  int n_ = 0;
  std::shared_ptr<FiniteField> field_;
  std::vector<Element> central_;
};

inline std::string perm_to_cycles(const Element& x) {
  std::ostringstream os;
  int n = static_cast<int>(x.v.size());
  std::vector<bool> seen(n, false);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || x.v[i] == i) continue;
    os << "(";
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ",";
      os << j + 1;
      first = false;
      j = x.v[j];
    }
    os << ")";
    any = true;
  }
  return any ? os.str() : "()";
}

// Parses "(1,2,3)(4,5)" (1-based points) into a permutation of the given degree.
// Cycles are composed right to left, matching the product convention.
inline Element perm_from_cycles(const std::string& s, int degree) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  while (i < s.size()) {
    if (s[i] != '(') throw std::invalid_argument("bad cycle notation: " + s);
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip();
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw std::invalid_argument("bad cycle notation: " + s);
      int pt = std::stoi(s.substr(i, j - i));
      if (pt < 1 || pt > degree) throw std::invalid_argument("point outside degree: " + s);
      cyc.push_back(pt - 1);
      i = j;
      skip();
      if (i < s.size() && s[i] == ',') ++i;
    }
    cycles.push_back(cyc);
    skip();
  }
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& cyc = *it;
    std::vector<int> c(degree);
    std::iota(c.begin(), c.end(), 0);
    std::vector<bool> used(degree, false);
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (used[cyc[k]]) throw std::invalid_argument("repeated point in cycle: " + s);
      used[cyc[k]] = true;
      c[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    // img <- c o img
    for (int k = 0; k < degree; ++k) img[k] = c[img[k]];
  }
  Element x;
  for (int k : img) x.v.push_back(static_cast<std::uint16_t>(k));
  return x;
}

inline std::string Domain::to_string(const Element& x) const {
  if (kind_ == Kind::Perm) return perm_to_cycles(x);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << entry(x, i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::shared_ptr<const Domain> dom, std::vector<Element> gens, std::string name = {})
      : dom_(std::move(dom)), gens_(std::move(gens)), name_(std::move(name)) {
    for (auto& g : gens_) g = dom_->normalize(g);
  }

  // Builds a group whose element set is already known to be closed.
  static FiniteGroup from_closed_set(std::shared_ptr<const Domain> dom, std::vector<Element> elems,
                                     std::string name = {}) {
    FiniteGroup G(dom, {}, std::move(name));
    auto cache = std::make_shared<Cache>();
    std::sort(elems.begin(), elems.end());
    Element e = dom->identity();
    // identity first, remaining in lexicographic order
    auto it = std::find(elems.begin(), elems.end(), e);
    if (it == elems.end()) throw std::invalid_argument("set does not contain the identity");
    std::rotate(elems.begin(), it, it + 1);
    for (size_t i = 0; i < elems.size(); ++i) cache->index.emplace(elems[i], i);
    cache->elems = std::move(elems);
    // greedy generating set
    ElementSet span{e};
    for (const auto& x : cache->elems) {
      if (span.count(x)) continue;
      G.gens_.push_back(x);
      span = closure_set(*dom, G.gens_);
    }
    G.cache_ = cache;
    return G;
  }

  const Domain& domain() const { return *dom_; }
  std::shared_ptr<const Domain> domain_ptr() const { return dom_; }
  const std::vector<Element>& generators() const { return gens_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<Element>& elements(std::size_t cap = kDefaultEnumerationCap) const {
    return cache(cap).elems;
  }
  std::size_t order(std::size_t cap = kDefaultEnumerationCap) const { return elements(cap).size(); }

  bool contains(const Element& x) const { return cache(kDefaultEnumerationCap).index.count(x) > 0; }

  std::size_t index_of(const Element& x) const {
    const auto& c = cache(kDefaultEnumerationCap);
    auto it = c.index.find(x);
    if (it == c.index.end()) throw ElementNotInGroup("element not in group");
    return it->second;
  }

  static ElementSet closure_set(const Domain& d, const std::vector<Element>& gens,
                                std::size_t cap = kDefaultEnumerationCap) {
    ElementSet seen;
    std::vector<Element> order;
    closure_into(d, gens, cap, seen, order);
    return seen;
  }

 private:
  struct Cache {
    std::vector<Element> elems;
    std::unordered_map<Element, std::size_t, ElementHash> index;
  };

  static void closure_into(const Domain& d, const std::vector<Element>& gens, std::size_t cap, ElementSet& seen,
                           std::vector<Element>& order) {
    Element e = d.identity();
    seen.insert(e);
    order.push_back(e);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const auto& g : gens) {
        Element y = d.mul(order[i], g);
        if (seen.insert(y).second) {
          order.push_back(std::move(y));
          if (order.size() > cap) throw CapExceeded("enumeration passed the cap of " + std::to_string(cap));
        }
      }
    }
  }

  const Cache& cache(std::size_t cap) const {
    std::lock_guard<std::mutex> lock(*mu_);
    if (!cache_) {
      auto c = std::make_shared<Cache>();
      ElementSet seen;
      closure_into(*dom_, gens_, cap, seen, c->elems);
      for (std::size_t i = 0; i < c->elems.size(); ++i) c->index.emplace(c->elems[i], i);
      cache_ = c;
    }
    return *cache_;
  }

  std::shared_ptr<const Domain> dom_;
  std::vector<Element> gens_;
  std::string name_;
  mutable std::shared_ptr<const Cache> cache_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
};

inline std::vector<Element> enumerate(const FiniteGroup& G, std::size_t cap = kDefaultEnumerationCap) {
  return G.elements(cap);
}

struct ConjClass {
  FiniteGroup ambient;
  Element representative;
  std::vector<Element> elements;  // ordered by index in the ambient group

  std::size_t size() const { return elements.size(); }
  std::vector<Element> sorted;  // same elements, lexicographic order

  bool contains(const Element& x) const { return std::binary_search(sorted.begin(), sorted.end(), x); }
  void finalize() {
    std::sort(elements.begin(), elements.end(), [&](const Element& a, const Element& b) {
      return ambient.index_of(a) < ambient.index_of(b);
    });
    sorted = elements;
    std::sort(sorted.begin(), sorted.end());
  }
};

// Orbit of x under conjugation by the given generators.
inline std::vector<Element> conjugation_orbit(const Domain& d, const std::vector<Element>& gens, const Element& x) {
  std::vector<Element> orbit{x};
  ElementSet seen{x};
  std::vector<Element> ginv;
  for (const auto& g : gens) ginv.push_back(d.inv(g));
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Element y = d.mul(d.mul(gens[k], orbit[i]), ginv[k]);
      if (seen.insert(y).second) orbit.push_back(y);
    }
  return orbit;
}

inline ConjClass conjugacy_class(const FiniteGroup& G, const Element& g) {
  Element x = G.domain().normalize(g);
  if (!G.contains(x)) throw ElementNotInGroup("element " + G.domain().to_string(x) + " not in group");
  ConjClass c{G, x, conjugation_orbit(G.domain(), G.generators(), x)};
  c.finalize();
  return c;
}

inline FiniteGroup generated(const FiniteGroup& G, const std::vector<Element>& S) {
  std::vector<Element> gens;
  for (const auto& s : S) gens.push_back(G.domain().normalize(s));
  return FiniteGroup(G.domain_ptr(), gens);
}

inline FiniteGroup centralizer(const FiniteGroup& G, const Element& g) {
  Element x = G.domain().normalize(g);
  if (!G.contains(x)) throw ElementNotInGroup("element not in group");
  const auto& d = G.domain();
  std::vector<Element> out;
  for (const auto& h : G.elements())
    if (d.mul(h, x) == d.mul(x, h)) out.push_back(h);
  return FiniteGroup::from_closed_set(G.domain_ptr(), out);
}

inline FiniteGroup center(const FiniteGroup& G) {
  const auto& d = G.domain();
  std::vector<Element> out;
  for (const auto& h : G.elements()) {
    bool ok = true;
    for (const auto& g : G.generators())
      if (d.mul(h, g) != d.mul(g, h)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return FiniteGroup::from_closed_set(G.domain_ptr(), out);
}

// Smallest subgroup of G containing S and normalized by G.
inline FiniteGroup normal_closure(const FiniteGroup& G, const std::vector<Element>& S) {
  const auto& d = G.domain();
  std::vector<Element> gens;
  ElementSet span{d.identity()};
  std::vector<Element> todo(S.begin(), S.end());
  while (!todo.empty()) {
    Element s = d.normalize(todo.back());
    todo.pop_back();
    if (span.count(s)) continue;
    gens.push_back(s);
    span = FiniteGroup::closure_set(d, gens);
    for (const auto& g : G.generators()) todo.push_back(d.conj(g, s));
  }
  // every generator's conjugates are in span; span is therefore normal
  return FiniteGroup(G.domain_ptr(), gens);
}

inline FiniteGroup derived_subgroup(const FiniteGroup& G) {
  const auto& d = G.domain();
  std::vector<Element> comms;
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(d.commutator(gens[i], gens[j]));
  return normal_closure(G, comms);
}

inline bool is_abelian(const FiniteGroup& G) {
  const auto& d = G.domain();
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (d.mul(gens[i], gens[j]) != d.mul(gens[j], gens[i])) return false;
  return true;
}

inline bool is_solvable(const FiniteGroup& G) {
  FiniteGroup H = G;
  std::size_t n = H.order();
  while (n > 1) {
    FiniteGroup D = derived_subgroup(H);
    std::size_t m = D.order();
    if (m == n) return false;
    H = D;
    n = m;
  }
  return true;
}

inline bool is_perfect(const FiniteGroup& G) { return derived_subgroup(G).order() == G.order(); }

// Representatives of the conjugacy classes of G, lowest index first.
inline std::vector<Element> class_representatives(const FiniteGroup& G) {
  const auto& elems = G.elements();
  std::vector<bool> done(elems.size(), false);
  std::vector<Element> reps;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (done[i]) continue;
    reps.push_back(elems[i]);
    for (const auto& y : conjugation_orbit(G.domain(), G.generators(), elems[i])) done[G.index_of(y)] = true;
  }
  return reps;
}

inline bool is_quasi_simple(const FiniteGroup& G) {
  std::size_t n = G.order();
  if (n <= 1) return false;
  if (!is_perfect(G)) return false;
  FiniteGroup Z = center(G);
  if (Z.order() == n) return false;
  std::vector<Element> zg = Z.generators();
  for (const auto& g : class_representatives(G)) {
    if (Z.contains(g)) continue;
    std::vector<Element> s = zg;
    s.push_back(g);
    if (normal_closure(G, s).order() != n) return false;
  }
  return true;
}

inline bool is_normal_in(const FiniteGroup& G, const FiniteGroup& N) {
  const auto& d = G.domain();
  for (const auto& g : G.generators())
    for (const auto& x : N.generators())
      if (!N.contains(d.conj(g, x))) return false;
  return true;
}

}  // namespace rc
