#pragma once

#include "galois.hpp"
#include "groups.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rc {

struct InvalidType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidBase : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Square integer matrix, row-major.
struct IMat {
  int n = 0;
  std::vector<long long> a;

  IMat() = default;
  explicit IMat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
  static IMat identity(int n) {
    IMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  long long& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  long long operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  IMat operator*(const IMat& o) const {
    IMat r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        long long x = (*this)(i, k);
        if (!x) continue;
        for (int j = 0; j < n; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  std::vector<long long> apply(const std::vector<long long>& v) const {
    std::vector<long long> r(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  bool operator==(const IMat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const IMat& o) const { return !(*this == o); }
  bool operator<(const IMat& o) const { return a < o.a; }
};

using Root = std::vector<int>;

// Characteristic polynomial det(X I - M) by Faddeev-LeVerrier.
inline IntPolynomial char_poly_of(const IMat& M) {
  int n = M.n;
  std::vector<long long> c(n + 1, 0);
  c[n] = 1;
  IMat Mk = IMat::identity(n);  // M_k
  IMat AM(n);
  for (int k = 1; k <= n; ++k) {
    AM = M * Mk;
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr += AM(i, i);
    long long ck = -tr / k;
    c[n - k] = ck;
    Mk = AM;
    for (int i = 0; i < n; ++i) Mk(i, i) += ck;
  }
  return IntPolynomial(c);
}

inline long long abs_det(const IMat& M) {
  // fraction-free elimination
  int n = M.n;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  BigInt d = a[n - 1][n - 1];
  if (d < 0) d = -d;
  return static_cast<long long>(d);
}

inline int rank_of(const IMat& M) {
  int n = M.n;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      BigInt f = a[i][c], g = a[r][c];
      for (int j = c; j < n; ++j) a[i][j] = a[i][j] * g - a[r][j] * f;
    }
    ++r;
  }
  return r;
}

struct WeylElement {
  std::vector<int> word;   // provenance only
  IMat B;                  // action on the coroot basis
  std::vector<int> twist;  // diagram automorphism as a permutation of nodes; empty = identity

  bool operator==(const WeylElement& o) const { return B == o.B && twist == o.twist; }
};

struct PartitionSpec {
  std::vector<int> parts;

  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  void validate() const {
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) throw InvalidPartition("parts must be positive");
      if (i && parts[i] > parts[i - 1]) throw InvalidPartition("parts must be weakly decreasing");
    }
  }
  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ")";
    return os.str();
  }
};

inline std::vector<PartitionSpec> partitions_of(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  std::vector<PartitionSpec> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (int p = std::min(n, max_part); p >= 1; --p)
    for (auto rest : partitions_of(n - p, p)) {
      rest.parts.insert(rest.parts.begin(), p);
      out.push_back(rest);
    }
  return out;
}

class RootSystem {
 public:
  RootSystem() = default;

  // pair[i][j] = <alpha_i, alpha_j^vee>; d[i] = (alpha_i, alpha_i)/2 up to a common scale.
  RootSystem(std::string label, std::vector<std::vector<int>> pair, std::vector<int> d)
      : label_(std::move(label)), pair_(std::move(pair)), d_(std::move(d)) {
    n_ = static_cast<int>(pair_.size());
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (pair_[i][j] * d_[j] != pair_[j][i] * d_[i]) throw InvalidType("pairing matrix is not symmetrizable by d");
    generate_roots();
  }

  static RootSystem build(char type, int rank) {
    int n = rank;
    std::vector<std::vector<int>> p(n, std::vector<int>(n, 0));
    std::vector<int> d(n, 1);
    for (int i = 0; i < n; ++i) p[i][i] = 2;
    auto link = [&](int i, int j) {  // 1-based, simply laced
      p[i - 1][j - 1] = -1;
      p[j - 1][i - 1] = -1;
    };
    std::string label = std::string(1, type) + std::to_string(rank);
    switch (type) {
      case 'A':
        if (n < 1) throw InvalidType("A_n needs n >= 1");
        for (int i = 1; i < n; ++i) link(i, i + 1);
        break;
      case 'B':
        if (n < 1) throw InvalidType("B_n needs n >= 1");
        if (n == 1) break;  // a single short root, W(B_1) = W(A_1)
        for (int i = 1; i < n - 1; ++i) link(i, i + 1);
        for (int i = 0; i < n - 1; ++i) d[i] = 2;
        p[n - 2][n - 1] = -2;  // <alpha_{n-1}, alpha_n^vee>
        p[n - 1][n - 2] = -1;
        break;
      case 'C':
        if (n < 2) throw InvalidType("C_n needs n >= 2");
        for (int i = 1; i < n - 1; ++i) link(i, i + 1);
        d[n - 1] = 2;
        p[n - 2][n - 1] = -1;
        p[n - 1][n - 2] = -2;
        break;
      case 'D':
        if (n < 3) throw InvalidType("D_n needs n >= 3");
        for (int i = 1; i < n - 1; ++i) link(i, i + 1);
        p[n - 2][n - 1] = p[n - 1][n - 2] = 0;
        link(n - 2, n);
        break;
      case 'E':
        if (n < 6 || n > 8) throw InvalidType("E_n needs 6 <= n <= 8");
        link(1, 3);
        link(2, 4);
        for (int i = 3; i < n; ++i) link(i, i + 1);
        break;
      case 'F':
        if (n != 4) throw InvalidType("F has rank 4");
        link(1, 2);
        link(3, 4);
        d = {2, 2, 1, 1};
        p[1][2] = -2;  // <alpha_2, alpha_3^vee>
        p[2][1] = -1;
        break;
      case 'G':
        if (n != 2) throw InvalidType("G has rank 2");
        d = {1, 3};
        p[0][1] = -1;  // <alpha_1, alpha_2^vee>
        p[1][0] = -3;
        break;
      default:
        throw InvalidType(std::string("unknown type ") + type);
    }
    return RootSystem(label, p, d);
  }

  const std::string& label() const { return label_; }
  int rank() const { return n_; }
  int pairing(int i, int j) const { return pair_[i][j]; }
  const std::vector<std::vector<int>>& pairing_matrix() const { return pair_; }
  int d(int i) const { return d_[i]; }
  const std::vector<int>& symmetrizer() const { return d_; }
  const std::vector<Root>& positive_roots() const { return pos_; }
  const std::vector<Root>& roots() const { return all_; }  // positive then negative
  const Root& highest_root() const { return highest_; }

  int root_index(const Root& r) const {
    auto it = index_.find(key(r));
    return it == index_.end() ? -1 : it->second;
  }
  bool is_root(const Root& r) const { return root_index(r) >= 0; }
  static bool is_positive(const Root& r) {
    for (int c : r)
      if (c != 0) return c > 0;
    return false;
  }
  int negation(int idx) const { return neg_[idx]; }

  // (beta, gamma) in the scale where (alpha_i, alpha_i) = 2 d_i
  long long form(const Root& b, const Root& g) const {
    long long s = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += static_cast<long long>(b[i]) * g[j] * pair_[i][j] * d_[j];
    return s;
  }
  long long root_d(const Root& r) const { return form(r, r) / 2; }

  // <beta, alpha_j^vee>
  int pair_with_simple_coroot(const Root& b, int j) const {
    int s = 0;
    for (int k = 0; k < n_; ++k) s += b[k] * pair_[k][j];
    return s;
  }
  // <beta, gamma^vee>
  long long pair_roots(const Root& b, const Root& g) const { return form(b, g) / root_d(g); }

  // gamma^vee in the coroot basis
  std::vector<long long> coroot(const Root& g) const {
    long long dg = root_d(g);
    std::vector<long long> c(n_);
    for (int k = 0; k < n_; ++k) {
      long long num = static_cast<long long>(g[k]) * d_[k];
      if (num % dg) throw std::logic_error("non-integral coroot");
      c[k] = num / dg;
    }
    return c;
  }

  IMat simple_reflection(int i) const {
    IMat m = IMat::identity(n_);
    for (int j = 0; j < n_; ++j) m(i, j) -= pair_[i][j];
    return m;
  }

  // s_gamma on the coroot lattice: x -> x - <gamma, x> gamma^vee
  IMat reflection(const Root& g) const {
    if (!is_root(g)) throw std::invalid_argument("reflection in a non-root");
    auto cv = coroot(g);
    IMat m = IMat::identity(n_);
    for (int k = 0; k < n_; ++k) {
      int gk = pair_with_simple_coroot(g, k);
      for (int i = 0; i < n_; ++i) m(i, k) -= static_cast<long long>(gk) * cv[i];
    }
    return m;
  }

  WeylElement identity() const { return {{}, IMat::identity(n_), {}}; }

  WeylElement from_word(const std::vector<int>& word) const {
    IMat m = IMat::identity(n_);
    for (int i : word) {
      if (i < 0 || i >= n_) throw std::invalid_argument("reflection index out of range");
      m = m * simple_reflection(i);
    }
    return {word, m, {}};
  }

  WeylElement from_matrix(const IMat& B) const {
    WeylElement w{{}, B, {}};
    w.word = reduced_word(w);
    return w;
  }

  WeylElement multiply(const WeylElement& a, const WeylElement& b) const {
    std::vector<int> word = a.word;
    word.insert(word.end(), b.word.begin(), b.word.end());
    return {word, a.B * b.B, {}};
  }

  WeylElement inverse(const WeylElement& w) const {
    std::vector<int> word(w.word.rbegin(), w.word.rend());
    return {word, invert(w.B), {}};
  }

  WeylElement power(const WeylElement& w, int k) const {
    WeylElement r = identity();
    for (int i = 0; i < k; ++i) r = multiply(r, w);
    return r;
  }

  // matrix of the inverse of a finite-order integer matrix
  static IMat invert(const IMat& B) {
    IMat p = B, prev = IMat::identity(B.n);
    for (int k = 0; k < 1000; ++k) {
      if (p == IMat::identity(B.n)) return prev;
      prev = p;
      p = p * B;
    }
    throw std::logic_error("matrix has no small finite order");
  }

  // twisted matrix B_w * theta, theta acting on coroots by permuting nodes
  IMat twisted(const WeylElement& w) const {
    if (w.twist.empty()) return w.B;
    IMat P(n_);
    for (int i = 0; i < n_; ++i) P(w.twist[i], i) = 1;
    return w.B * P;
  }

  // action on root coefficients: D^{-1} B D
  IMat root_action(const IMat& B) const {
    IMat R(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        long long v = B(i, j) * d_[j];
        if (v % d_[i]) throw std::logic_error("non-integral root action");
        R(i, j) = v / d_[i];
      }
    return R;
  }

  Root act_on_root(const IMat& R, const Root& r) const {
    Root out(n_, 0);
    for (int i = 0; i < n_; ++i) {
      long long s = 0;
      for (int j = 0; j < n_; ++j) s += R(i, j) * r[j];
      out[i] = static_cast<int>(s);
    }
    return out;
  }

  int order(const WeylElement& w) const {
    IMat B = twisted(w), p = B;
    IMat I = IMat::identity(n_);
    int k = 1;
    while (p != I) {
      p = p * B;
      if (++k > 10000) throw std::logic_error("element of unbounded order");
    }
    return k;
  }

  int length(const WeylElement& w) const {
    IMat R = root_action(w.B);
    int l = 0;
    for (const auto& r : pos_)
      if (!is_positive(act_on_root(R, r))) ++l;
    return l;
  }

  std::vector<int> reduced_word(const WeylElement& w) const {
    IMat B = w.B;
    std::vector<int> rev;
    for (;;) {
      IMat R = root_action(B);
      int found = -1;
      for (int i = 0; i < n_; ++i) {
        Root ai(n_, 0);
        ai[i] = 1;
        if (!is_positive(act_on_root(R, ai))) {
          found = i;
          break;
        }
      }
      if (found < 0) break;
      B = B * simple_reflection(found);
      rev.push_back(found);
      if (rev.size() > pos_.size()) throw std::logic_error("descent did not terminate");
    }
    if (B != IMat::identity(n_)) throw std::invalid_argument("matrix is not in the Weyl group");
    return {rev.rbegin(), rev.rend()};
  }

  bool permutes_coroots(const IMat& B) const {
    IMat R = root_action(B);
    for (const auto& r : all_)
      if (!is_root(act_on_root(R, r))) return false;
    return true;
  }

  std::vector<int> support(const WeylElement& w) const {
    auto word = reduced_word(w);
    std::set<int> s(word.begin(), word.end());
    return {s.begin(), s.end()};
  }

 private:
  static std::string key(const Root& r) {
    std::string k;
    for (int c : r) k.push_back(static_cast<char>(c));
    return k;
  }

  void generate_roots() {
    std::set<Root> seen;
    std::deque<Root> todo;
    for (int i = 0; i < n_; ++i) {
      Root r(n_, 0);
      r[i] = 1;
      seen.insert(r);
      todo.push_back(r);
    }
    while (!todo.empty()) {
      Root r = todo.front();
      todo.pop_front();
      for (int i = 0; i < n_; ++i) {
        int c = pair_with_simple_coroot(r, i);
        Root s = r;
        s[i] -= c;
        if (!is_positive(s)) continue;
        if (seen.insert(s).second) {
          todo.push_back(s);
          if (seen.size() > 100000) throw InvalidType("pairing matrix is not of finite type");
        }
      }
    }
    pos_.assign(seen.begin(), seen.end());
    std::stable_sort(pos_.begin(), pos_.end(), [](const Root& a, const Root& b) {
      int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
      return ha < hb;
    });
    all_ = pos_;
    for (const auto& r : pos_) {
      Root m = r;
      for (auto& c : m) c = -c;
      all_.push_back(m);
    }
    for (size_t i = 0; i < all_.size(); ++i) index_[key(all_[i])] = static_cast<int>(i);
    size_t np = pos_.size();
    neg_.resize(all_.size());
    for (size_t i = 0; i < all_.size(); ++i) neg_[i] = static_cast<int>(i < np ? i + np : i - np);
    highest_ = pos_.back();
  }

  std::string label_;
  int n_ = 0;
  std::vector<std::vector<int>> pair_;
  std::vector<int> d_;
  std::vector<Root> pos_, all_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> neg_;
  Root highest_;
};

inline IntPolynomial char_poly(const RootSystem& R, const WeylElement& w) { return char_poly_of(R.twisted(w)); }

inline bool is_cuspidal(const RootSystem& R, const WeylElement& w) { return char_poly(R, w).eval(1) != 0; }

inline int minimal_support_rank(const RootSystem& R, const WeylElement& w) {
  IMat M = R.twisted(w);
  IMat I = IMat::identity(R.rank());
  IMat D(R.rank());
  for (int i = 0; i < R.rank(); ++i)
    for (int j = 0; j < R.rank(); ++j) D(i, j) = I(i, j) - M(i, j);
  return rank_of(D);
}

// Classical orders of the irreducible Weyl groups.
inline BigInt weyl_order(char type, int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  switch (type) {
    case 'A': return f * (n + 1);
    case 'B':
    case 'C': return f * ipow(2, n);
    case 'D': return f * ipow(2, n - 1);
    case 'E': return n == 6 ? BigInt(51840) : n == 7 ? BigInt(2903040) : BigInt(696729600);
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw InvalidType("unknown type");
}

// ---- subsystems ---------------------------------------------------------

struct Subsystem {
  RootSystem system;
  std::vector<Root> base;  // simple roots of the subsystem as ambient roots

  Root to_ambient(const Root& c) const {
    Root r(base.empty() ? 0 : base[0].size(), 0);
    for (size_t k = 0; k < base.size(); ++k)
      for (size_t i = 0; i < r.size(); ++i) r[i] += c[k] * base[k][i];
    return r;
  }
  std::vector<Root> ambient_roots() const {
    std::vector<Root> out;
    for (const auto& r : system.roots()) out.push_back(to_ambient(r));
    return out;
  }
  std::vector<Root> ambient_positive_roots() const {
    std::vector<Root> out;
    for (const auto& r : system.positive_roots()) out.push_back(to_ambient(r));
    return out;
  }
};

inline std::string identify_component(const std::vector<std::vector<int>>& p) {
  int k = static_cast<int>(p.size());
  int maxbond = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) maxbond = std::max(maxbond, -p[i][j]);
  std::vector<int> d(k, 1);
  // symmetrizer for a connected component by propagation
  std::vector<long long> num(k, 0);
  num[0] = 1;
  std::vector<long long> den(k, 1);
  std::vector<bool> set(k, false);
  set[0] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (set[i] && !set[j] && p[i][j] != 0) {
          // p[i][j] d_j = p[j][i] d_i
          num[j] = num[i] * p[j][i];
          den[j] = den[i] * p[i][j];
          set[j] = true;
          changed = true;
        }
  }
  RootSystem tmp("", p, [&] {
    long long L = 1;
    for (int i = 0; i < k; ++i) L = std::lcm(L, std::llabs(den[i]));
    std::vector<int> dd(k);
    for (int i = 0; i < k; ++i) dd[i] = static_cast<int>(num[i] * (L / den[i]));
    long long g = 0;
    for (int x : dd) g = std::gcd(g, static_cast<long long>(std::abs(x)));
    for (auto& x : dd) x = static_cast<int>(std::abs(x) / g);
    return dd;
  }());
  int np = static_cast<int>(tmp.positive_roots().size());
  if (maxbond == 3) return "G2";
  if (maxbond == 2) {
    if (k == 4 && np == 24) return "F4";
    int longs = 0;
    int dmax = *std::max_element(tmp.symmetrizer().begin(), tmp.symmetrizer().end());
    for (int x : tmp.symmetrizer()) longs += (x == dmax);
    if (k == 2) return "B2";
    return (longs == 1 ? "C" : "B") + std::to_string(k);
  }
  if (np == k * (k + 1) / 2) return "A" + std::to_string(k);
  if (np == k * (k - 1)) return "D" + std::to_string(k);
  if (k == 6 && np == 36) return "E6";
  if (k == 7 && np == 63) return "E7";
  if (k == 8 && np == 120) return "E8";
  return "?" + std::to_string(k);
}

// Connected components of the Dynkin diagram of a pairing matrix (node lists).
inline std::vector<std::vector<int>> dynkin_components(const std::vector<std::vector<int>>& p) {
  int k = static_cast<int>(p.size());
  std::vector<int> comp(k, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> c{s};
    comp[s] = static_cast<int>(out.size());
    for (size_t i = 0; i < c.size(); ++i)
      for (int j = 0; j < k; ++j)
        if (comp[j] < 0 && p[c[i]][j] != 0) {
          comp[j] = comp[s];
          c.push_back(j);
        }
    std::sort(c.begin(), c.end());
    out.push_back(c);
  }
  return out;
}

inline std::string type_label(const std::vector<std::vector<int>>& p) {
  std::vector<std::string> parts;
  for (const auto& c : dynkin_components(p)) {
    std::vector<std::vector<int>> sub(c.size(), std::vector<int>(c.size()));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j) sub[i][j] = p[c[i]][c[j]];
    parts.push_back(identify_component(sub));
  }
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + parts[i];
  return s.empty() ? "empty" : s;
}

inline Subsystem subsystem_from_base(const RootSystem& R, const std::vector<Root>& base) {
  int k = static_cast<int>(base.size());
  for (const auto& b : base)
    if (!R.is_root(b)) throw InvalidBase("base element is not a root");
  std::vector<std::vector<int>> p(k, std::vector<int>(k));
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = static_cast<int>(R.root_d(base[i]));
    for (int j = 0; j < k; ++j) {
      p[i][j] = static_cast<int>(R.pair_roots(base[i], base[j]));
      if (i != j && p[i][j] > 0) throw InvalidBase("base roots have a positive Cartan integer");
    }
  }
  // linear independence
  IMat M(R.rank());
  if (k > R.rank()) throw InvalidBase("too many base roots");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < R.rank(); ++j) M(i, j) = base[i][j];
  if (rank_of(M) != k) throw InvalidBase("base roots are linearly dependent");
  long long g = 0;
  for (int x : d) g = std::gcd(g, static_cast<long long>(x));
  for (auto& x : d) x = static_cast<int>(x / (g ? g : 1));
  RootSystem sys(type_label(p), p, d);
  Subsystem s{sys, base};
  for (const auto& r : s.ambient_roots())
    if (!R.is_root(r)) throw InvalidBase("span of base produces a non-root");
  return s;
}

inline Subsystem parabolic_subsystem(const RootSystem& R, const std::vector<int>& J) {
  std::vector<Root> base;
  for (int j : J) {
    if (j < 0 || j >= R.rank()) throw InvalidBase("node index out of range");
    Root r(R.rank(), 0);
    r[j] = 1;
    base.push_back(r);
  }
  return subsystem_from_base(R, base);
}

// Element of the ambient Weyl group given by a word in the subsystem's simple reflections.
inline WeylElement embed_word(const RootSystem& R, const Subsystem& S, const std::vector<int>& word) {
  IMat m = IMat::identity(R.rank());
  for (int i : word) m = m * R.reflection(S.base.at(i));
  WeylElement w{{}, m, {}};
  w.word = R.reduced_word(w);
  return w;
}

// ---- Weyl group enumeration and centralizers -------------------------------

inline std::vector<IMat> enumerate_weyl(const RootSystem& R, std::size_t cap = 1'000'000) {
  std::vector<IMat> out{IMat::identity(R.rank())};
  std::set<std::vector<long long>> seen{out[0].a};
  std::vector<IMat> gens;
  for (int i = 0; i < R.rank(); ++i) gens.push_back(R.simple_reflection(i));
  for (size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      IMat y = out[i] * g;
      if (seen.insert(y.a).second) {
        out.push_back(y);
        if (out.size() > cap) throw CapExceeded("Weyl group larger than the exhaustive cap");
      }
    }
  return out;
}

inline std::vector<IMat> weyl_centralizer(const RootSystem& R, const WeylElement& w, std::size_t cap = 1'000'000) {
  std::vector<IMat> out;
  IMat B = R.twisted(w);
  for (const auto& u : enumerate_weyl(R, cap))
    if (u * B == B * u) out.push_back(u);
  return out;
}

// Flat open-addressing set of 64-bit keys; ~0 marks an empty slot.
class U64Set {
 public:
  explicit U64Set(std::size_t expected = 1024) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }
  bool insert(std::uint64_t k) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    return place(k);
  }
  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint64_t kEmpty = ~0ull;
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
  }
  bool place(std::uint64_t k) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = mix(k) & mask;
    while (slots_[i] != kEmpty) {
      if (slots_[i] == k) return false;
      i = (i + 1) & mask;
    }
    slots_[i] = k;
    ++size_;
    return true;
  }
  void grow() {
    std::vector<std::uint64_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    size_ = 0;
    for (auto k : old)
      if (k != kEmpty) place(k);
  }
  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

// Conjugacy class size of w computed on the encoding "images of the simple roots
// as root indices", one byte per node.
inline std::uint64_t weyl_class_size_orbit(const RootSystem& R, const WeylElement& w,
                                           std::size_t max_elements = 400'000'000) {
  int n = R.rank();
  int nr = static_cast<int>(R.roots().size());
  if (n > 8 || nr > 255) throw std::invalid_argument("orbit mode supports rank <= 8");
  // add[k][a][b] = index of root a + k*root b, or -1
  std::vector<std::vector<int>> add(4, std::vector<int>(static_cast<size_t>(nr) * nr, -1));
  for (int k = 1; k <= 3; ++k)
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b) {
        Root s = R.roots()[a];
        for (int i = 0; i < n; ++i) s[i] += k * R.roots()[b][i];
        add[k][static_cast<size_t>(a) * nr + b] = R.root_index(s);
      }
  std::vector<std::vector<int>> refl(n, std::vector<int>(nr));
  for (int i = 0; i < n; ++i) {
    IMat Ri = R.root_action(R.simple_reflection(i));
    for (int a = 0; a < nr; ++a) refl[i][a] = R.root_index(R.act_on_root(Ri, R.roots()[a]));
  }
  auto encode = [&](const std::vector<int>& img) {
    std::uint64_t k = 0;
    for (int j = 0; j < n; ++j) k |= static_cast<std::uint64_t>(img[j]) << (8 * j);
    return k;
  };
  std::vector<int> img(n);
  IMat Rw = R.root_action(w.B);
  for (int j = 0; j < n; ++j) {
    Root a(n, 0);
    a[j] = 1;
    img[j] = R.root_index(R.act_on_root(Rw, a));
  }
  U64Set seen(1 << 20);
  std::vector<std::uint64_t> frontier{encode(img)};
  seen.insert(frontier[0]);
  std::vector<std::uint64_t> next;
  std::vector<int> cur(n), out(n);
  while (!frontier.empty()) {
    next.clear();
    for (auto key : frontier) {
      for (int j = 0; j < n; ++j) cur[j] = static_cast<int>((key >> (8 * j)) & 0xff);
      for (int i = 0; i < n; ++i) {
        // (s_i w s_i)(alpha_j) = s_i( w(alpha_j) - <alpha_j, alpha_i^vee> w(alpha_i) )
        for (int j = 0; j < n; ++j) {
          int v;
          if (j == i) {
            v = R.negation(cur[i]);
          } else {
            int c = -R.pairing(j, i);
            v = c == 0 ? cur[j] : add[c][static_cast<size_t>(cur[j]) * nr + cur[i]];
          }
          out[j] = refl[i][v];
        }
        std::uint64_t k2 = encode(out);
        if (seen.insert(k2)) {
          next.push_back(k2);
          if (seen.size() > max_elements) throw CapExceeded("orbit enumeration passed the memory cap");
        }
      }
    }
    frontier.swap(next);
  }
  return seen.size();
}

enum class CentralizerMode { Exhaustive, Orbit };

inline BigInt centralizer_order_W(const RootSystem& R, const WeylElement& w, char type, CentralizerMode mode,
                                  std::size_t cap = 1'000'000) {
  if (mode == CentralizerMode::Exhaustive) return weyl_centralizer(R, w, cap).size();
  BigInt W = weyl_order(type, R.rank());
  std::uint64_t cls = weyl_class_size_orbit(R, w);
  return W / cls;
}

// J_w: lexicographically least support of a conjugate of w whose size equals
// rank(id - w).
struct JwResult {
  int rank;
  std::vector<int> J;
  WeylElement conjugate;
};

inline JwResult find_Jw(const RootSystem& R, const WeylElement& w, std::size_t budget = 1'000'000) {
  int r = minimal_support_rank(R, w);
  std::set<std::vector<long long>> seen{w.B.a};
  std::vector<IMat> frontier{w.B};
  std::optional<JwResult> best;
  std::vector<IMat> S;
  for (int i = 0; i < R.rank(); ++i) S.push_back(R.simple_reflection(i));
  auto consider = [&](const IMat& B) {
    WeylElement c = R.from_matrix(B);
    auto sup = R.support(c);
    if (static_cast<int>(sup.size()) == r && (!best || sup < best->J)) best = JwResult{r, sup, c};
  };
  consider(w.B);
  while (!frontier.empty()) {
    std::vector<IMat> next;
    for (const auto& B : frontier)
      for (const auto& s : S) {
        IMat C = s * B * s;
        if (seen.insert(C.a).second) {
          if (seen.size() > budget) {
            if (best) return *best;
            throw SearchBudgetExceeded("J_w search exceeded its budget");
          }
          consider(C);
          next.push_back(C);
        }
      }
    frontier.swap(next);
  }
  if (!best) throw std::logic_error("no conjugate with minimal support");
  return *best;
}

// ---- cuspidal representatives in types B and D -----------------------------

struct CuspidalRep {
  char type;
  int n;
  PartitionSpec lambda;
  WeylElement w;
  std::vector<WeylElement> factors;
};

namespace detail {

// factors w_{lambda_j} in W(B_n), built from s_{gamma_j} and simple reflections
inline std::vector<WeylElement> b_factors(const RootSystem& B, int n, const PartitionSpec& lam) {
  std::vector<WeylElement> out;
  int Lambda = 0;
  for (int lj : lam.parts) {
    Root gamma(n, 0);
    for (int i = 0; i <= Lambda; ++i) gamma[n - 1 - i] = 1;  // alpha_{n-i}
    IMat m = B.reflection(gamma);
    for (int k = 1; k <= lj - 1; ++k) {
      int node = n - Lambda - k;  // 1-based
      m = m * B.simple_reflection(node - 1);
    }
    WeylElement f{{}, m, {}};
    f.word = B.reduced_word(f);
    out.push_back(f);
    Lambda += lj;
  }
  return out;
}

// Restrict an element of W(B_n) lying in W(D_n) to the long roots, in the D_n basis.
inline WeylElement b_to_d(const RootSystem& B, const RootSystem& D, const WeylElement& w) {
  int n = B.rank();
  IMat R = B.root_action(w.B);
  IMat out(n);
  for (int j = 0; j < n; ++j) {
    Root a(n, 0);  // D-simple root j in B coordinates
    if (j < n - 1) {
      a[j] = 1;
    } else {
      a[n - 2] = 1;
      a[n - 1] = 2;
    }
    Root img = B.act_on_root(R, a);
    if (img[n - 1] % 2) throw std::logic_error("element does not preserve the long roots");
    Root dc(n);
    for (int i = 0; i < n - 2; ++i) dc[i] = img[i];
    dc[n - 2] = img[n - 2] - img[n - 1] / 2;
    dc[n - 1] = img[n - 1] / 2;
    for (int i = 0; i < n; ++i) out(i, j) = dc[i];
  }
  WeylElement r{{}, out, {}};  // simply laced: root and coroot actions agree
  if (!D.permutes_coroots(out)) throw std::logic_error("conversion left the D_n root system");
  r.word = D.reduced_word(r);
  return r;
}

}  // namespace detail

inline CuspidalRep cuspidal_rep(char type, int n, const PartitionSpec& lam) {
  lam.validate();
  if (lam.parts.empty()) throw InvalidPartition("empty partition");
  if (type == 'B') {
    if (lam.total() > n) throw InvalidPartition("partition exceeds the rank");
    RootSystem B = RootSystem::build('B', n);
    auto f = detail::b_factors(B, n, lam);
    WeylElement w = B.identity();
    for (const auto& x : f) w.B = w.B * x.B;
    w.word = B.reduced_word(w);
    return {'B', n, lam, w, f};
  }
  if (type == 'D') {
    if (lam.total() != n || lam.parts.size() % 2) throw InvalidPartition("type D needs an even number of parts summing to n");
    RootSystem B = RootSystem::build('B', n);
    RootSystem D = RootSystem::build('D', n);
    auto f = detail::b_factors(B, n, lam);
    std::vector<WeylElement> pairs;
    IMat total = IMat::identity(n);
    for (size_t i = 0; i + 1 < f.size(); i += 2) {
      WeylElement p{{}, f[i].B * f[i + 1].B, {}};
      total = total * p.B;
      pairs.push_back(detail::b_to_d(B, D, p));
    }
    WeylElement w = detail::b_to_d(B, D, WeylElement{{}, total, {}});
    return {'D', n, lam, w, pairs};
  }
  throw InvalidType("cuspidal representatives are built for types B and D");
}

inline RootSystem system_for(char type, int n) { return RootSystem::build(type, n); }

}  // namespace rc
