#pragma once

#include "galois.hpp"
#include "rootdata.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

struct RootNotInSystem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using BMat = std::vector<std::vector<BigInt>>;

// Smith normal form U*A*V = D with U, V unimodular.
struct SmithForm {
  BMat U, D, V;
  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (size_t i = 0; i < D.size() && i < D[0].size(); ++i) d.push_back(D[i][i]);
    return d;
  }
};

inline BMat bmat_identity(size_t n) {
  BMat m(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline BMat bmat_mul(const BMat& a, const BMat& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  BMat m(r, std::vector<BigInt>(c, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
    }
  return m;
}

inline SmithForm smith_normal_form(BMat A) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  BMat U = bmat_identity(m), V = bmat_identity(n);
  auto abs_ = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };
  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
  };
  auto add_row = [&](size_t dst, size_t src, const BigInt& f) {  // row dst += f*row src
    for (size_t j = 0; j < n; ++j) A[dst][j] += f * A[src][j];
    for (size_t j = 0; j < m; ++j) U[dst][j] += f * U[src][j];
  };
  auto add_col = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t i = 0; i < m; ++i) A[i][dst] += f * A[i][src];
    for (size_t i = 0; i < n; ++i) V[i][dst] += f * V[i][src];
  };
  for (size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // pivot: smallest nonzero entry in the trailing block
      bool any = false;
      size_t pi = t, pj = t;
      BigInt best;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (!any || abs_(A[i][j]) < best)) {
            any = true;
            best = abs_(A[i][j]);
            pi = i;
            pj = j;
          }
      if (!any) goto done;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        BigInt q = A[i][t] / A[t][t];
        add_row(i, t, -q);
        if (A[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        BigInt q = A[t][j] / A[t][t];
        add_col(j, t, -q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest of the block
      bool fixed = false;
      for (size_t i = t + 1; i < m && !fixed; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (A[i][j] % A[t][t] != 0) {
            add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (A[t][t] < 0) {
      for (size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
      for (size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
    }
  }
done:
  return {U, A, V};
}

struct TorusElement {
  int q = 0;
  int N = 1;
  BigInt M = 1;            // q^N - 1
  std::vector<BigInt> e;  // exponents over the coroot basis

  static TorusElement identity(int rank, int q, int N) {
    TorusElement t;
    t.q = q;
    t.N = N;
    t.M = ipow(q, N) - 1;
    t.e.assign(rank, 0);
    return t;
  }
  static TorusElement from_exponents(std::vector<BigInt> ex, int q, int N) {
    TorusElement t = identity(static_cast<int>(ex.size()), q, N);
    for (size_t i = 0; i < ex.size(); ++i) t.e[i] = mod_floor(ex[i], t.M);
    return t;
  }

  int rank() const { return static_cast<int>(e.size()); }
  ExponentScalar coordinate(int j) const { return {e[j], M}; }
  bool is_identity() const {
    for (const auto& x : e)
      if (x != 0) return false;
    return true;
  }
  TorusElement operator*(const TorusElement& o) const {
    check(o);
    TorusElement r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = mod_floor(e[i] + o.e[i], M);
    return r;
  }
  TorusElement pow(const BigInt& k) const {
    TorusElement r = *this;
    for (auto& x : r.e) x = mod_floor(x * k, M);
    return r;
  }
  TorusElement inverse() const { return pow(-1); }
  bool operator==(const TorusElement& o) const { return M == o.M && e == o.e; }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }
  bool operator<(const TorusElement& o) const { return e < o.e; }

  std::string to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + e[i].str();
    return s + "] mod " + M.str();
  }

 private:
  void check(const TorusElement& o) const {
    if (M != o.M || e.size() != o.e.size()) throw std::invalid_argument("torus elements from different ambients");
  }
};

// -1 and primitive k-th roots of unity as exponents in a cyclic group of order M
inline BigInt root_of_unity_exponent(const BigInt& M, int k) {
  if (M % k != 0) throw std::invalid_argument("no element of order " + std::to_string(k) + " in this field");
  return M / k;
}
inline BigInt minus_one_exponent(const BigInt& M) {
  if (M % 2 != 0) throw std::invalid_argument("-1 equals 1 in characteristic 2");
  return M / 2;
}

inline ExponentScalar root_eval(const RootSystem& R, const Root& a, const TorusElement& t) {
  if (static_cast<int>(a.size()) != R.rank() || !R.is_root(a)) throw RootNotInSystem("not a root of the ambient system");
  BigInt s = 0;
  for (int j = 0; j < R.rank(); ++j) s += BigInt(R.pair_with_simple_coroot(a, j)) * t.e[j];
  return {s, t.M};
}

inline TorusElement weyl_act_matrix(const IMat& B, const TorusElement& t) {
  TorusElement r = t;
  for (int i = 0; i < B.n; ++i) {
    BigInt s = 0;
    for (int j = 0; j < B.n; ++j) s += BigInt(B(i, j)) * t.e[j];
    r.e[i] = mod_floor(s, t.M);
  }
  return r;
}

inline TorusElement weyl_act(const RootSystem& R, const WeylElement& w, const TorusElement& t) {
  return weyl_act_matrix(R.twisted(w), t);
}

// t * gamma^vee(x) for x given as an exponent
inline TorusElement times_coroot(const RootSystem& R, const TorusElement& t, const Root& g, const BigInt& x) {
  auto c = R.coroot(g);
  TorusElement r = t;
  for (int i = 0; i < R.rank(); ++i) r.e[i] = mod_floor(r.e[i] + BigInt(c[i]) * x, t.M);
  return r;
}

inline bool is_regular(const RootSystem& R, const TorusElement& t) {
  for (const auto& a : R.positive_roots())
    if (root_eval(R, a, t).is_one()) return false;
  return true;
}

inline bool is_fixed(const RootSystem& R, const WeylElement& w, const TorusElement& t) {
  return weyl_act(R, w, t.pow(t.q)) == t;
}

// Finite abelian group given by generators with orders; elements as exponent vectors mod M.
struct TorusFixedGroup {
  WeylElement w;
  int q = 0;
  int N = 1;
  BigInt M = 1;
  std::vector<BigInt> invariant_factors;  // all n, including 1s
  std::vector<TorusElement> generators;   // one per invariant factor
  BigInt order = 1;

  std::vector<BigInt> nontrivial_factors() const {
    std::vector<BigInt> out;
    for (const auto& d : invariant_factors)
      if (d != 1) out.push_back(d);
    return out;
  }

  std::vector<TorusElement> elements(std::size_t cap = 10'000'000) const {
    if (order > cap) throw CapExceeded("torus fixed group larger than the enumeration cap");
    int rank = generators.empty() ? 0 : generators[0].rank();
    std::vector<TorusElement> out{TorusElement::identity(rank, q, N)};
    for (size_t g = 0; g < generators.size(); ++g) {
      if (invariant_factors[g] == 1) continue;
      std::vector<TorusElement> next;
      long long d = static_cast<long long>(invariant_factors[g]);
      for (const auto& x : out) {
        TorusElement y = x;
        for (long long k = 0; k < d; ++k) {
          next.push_back(y);
          y = y * generators[g];
        }
      }
      out.swap(next);
    }
    return out;
  }
};

inline TorusFixedGroup fixed_group(const RootSystem& R, const WeylElement& w, int q) {
  int n = R.rank();
  TorusFixedGroup G;
  G.w = w;
  G.q = q;
  G.N = R.order(w);
  G.M = ipow(q, G.N) - 1;
  IMat B = R.twisted(w);
  BMat A(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = BigInt(q) * B(i, j) - (i == j ? 1 : 0);
  auto snf = smith_normal_form(A);
  auto d = snf.diagonal();
  for (int i = 0; i < n; ++i) {
    if (d[i] == 0) throw std::logic_error("q*B_w - I is singular");
    if (G.M % d[i] != 0) throw std::logic_error("invariant factor does not divide q^N - 1");
    G.invariant_factors.push_back(d[i]);
    G.order *= d[i];
    std::vector<BigInt> ex(n);
    BigInt step = G.M / d[i];
    for (int k = 0; k < n; ++k) ex[k] = snf.V[k][i] * step;
    G.generators.push_back(TorusElement::from_exponents(ex, q, G.N));
  }
  return G;
}

// Center of the simply connected group: x in T(F_q) with alpha_i(x) = 1 for all i,
// written in a cyclic group of order M (q - 1 must divide M).
inline std::vector<TorusElement> center_elements(const RootSystem& R, int q, int N = 1) {
  int n = R.rank();
  BigInt M = ipow(q, N) - 1;
  BigInt m = q - 1;
  BMat P(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P[i][j] = R.pairing(i, j);
  auto snf = smith_normal_form(P);
  auto d = snf.diagonal();
  std::vector<TorusElement> gens;
  std::vector<long long> ords;
  for (int i = 0; i < n; ++i) {
    BigInt g = gcd(d[i], m);
    if (g == 1) continue;
    std::vector<BigInt> ex(n);
    BigInt step = (m / g) * (M / m);
    for (int k = 0; k < n; ++k) ex[k] = snf.V[k][i] * step;
    gens.push_back(TorusElement::from_exponents(ex, q, N));
    ords.push_back(static_cast<long long>(g));
  }
  std::set<TorusElement> all{TorusElement::identity(n, q, N)};
  for (size_t g = 0; g < gens.size(); ++g) {
    std::set<TorusElement> next;
    for (const auto& x : all) {
      TorusElement y = x;
      for (long long k = 0; k < ords[g]; ++k) {
        next.insert(y);
        y = y * gens[g];
      }
    }
    all.swap(next);
  }
  for (const auto& z : all)
    for (int i = 0; i < n; ++i) {
      Root a(n, 0);
      a[i] = 1;
      if (!root_eval(R, a, z).is_one()) throw std::logic_error("computed center element is not central");
    }
  return {all.begin(), all.end()};
}

// Table rows exist for these types; others are rejected.
inline std::vector<TorusElement> center_elements(char type, int rank, int q, int N = 1) {
  if (std::string("BDEFG").find(type) == std::string::npos) throw UnsupportedType(std::string("no center row for type ") + type);
  return center_elements(RootSystem::build(type, rank), q, N);
}

// Smallest subgroup containing the given elements.
inline std::vector<TorusElement> torus_span(const std::vector<TorusElement>& gens, int rank, int q, int N) {
  std::set<TorusElement> all{TorusElement::identity(rank, q, N)};
  std::vector<TorusElement> todo(all.begin(), all.end());
  for (size_t i = 0; i < todo.size(); ++i)
    for (const auto& g : gens) {
      TorusElement y = todo[i] * g;
      if (all.insert(y).second) todo.push_back(y);
    }
  return {all.begin(), all.end()};
}

}  // namespace rc
