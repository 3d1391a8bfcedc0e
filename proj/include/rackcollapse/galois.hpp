#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Element of a cyclic group of order M written additively as an exponent.
class ExponentScalar {
 public:
  ExponentScalar() : exp_(0), mod_(1) {}
  ExponentScalar(BigInt exponent, BigInt modulus) : mod_(std::move(modulus)) {
    if (mod_ < 1) throw std::invalid_argument("modulus must be positive");
    exp_ = mod_floor(exponent, mod_);
  }

  const BigInt& exponent() const { return exp_; }
  const BigInt& modulus() const { return mod_; }
  bool is_one() const { return exp_ == 0; }

  ExponentScalar operator*(const ExponentScalar& o) const {
    check_same(o);
    return {exp_ + o.exp_, mod_};
  }
  ExponentScalar pow(const BigInt& k) const { return {exp_ * k, mod_}; }
  ExponentScalar inverse() const { return {-exp_, mod_}; }

  bool operator==(const ExponentScalar& o) const { return exp_ == o.exp_ && mod_ == o.mod_; }
  bool operator!=(const ExponentScalar& o) const { return !(*this == o); }

 private:
  void check_same(const ExponentScalar& o) const {
    if (mod_ != o.mod_) throw std::invalid_argument("scalars live in different cyclic groups");
  }
  BigInt exp_;
  BigInt mod_;
};

inline BigInt element_order(const ExponentScalar& s) {
  return s.modulus() / gcd(s.exponent(), s.modulus());
}

// Integer polynomial, lowest degree first, no trailing zeros.
struct IntPolynomial {
  std::vector<long long> c;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<long long> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  long long coeff(int i) const { return i < static_cast<int>(c.size()) ? c[i] : 0; }

  BigInt eval(const BigInt& x) const {
    BigInt r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }

  IntPolynomial operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<long long> r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return IntPolynomial(r);
  }

  // Division by a monic divisor; returns quotient and remainder.
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& d) const {
    if (d.is_zero() || d.c.back() != 1) throw std::invalid_argument("divisor must be monic");
    std::vector<long long> rem = c;
    int dd = d.degree();
    if (degree() < dd) return {IntPolynomial{}, *this};
    std::vector<long long> quo(degree() - dd + 1, 0);
    for (int i = degree(); i >= dd; --i) {
      long long f = rem[i];
      quo[i - dd] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c[j];
    }
    return {IntPolynomial(quo), IntPolynomial(rem)};
  }

  bool operator==(const IntPolynomial& o) const { return c == o.c; }
  bool operator!=(const IntPolynomial& o) const { return c != o.c; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      long long a = c[i];
      if (a == 0) continue;
      long long m = a < 0 ? -a : a;
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (m != 1 || i == 0) os << m;
      if (i > 0) os << "X";
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os.str();
  }
};

inline IntPolynomial cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<unsigned, IntPolynomial> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<long long> xn(n + 1, 0);
  xn[0] = -1;
  xn[n] = 1;
  IntPolynomial p(xn);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    auto [q, r] = p.divmod_monic(cyclotomic(d));
    if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
    p = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, p);
  return p;
}

inline BigInt eval_cyclotomic(unsigned n, const BigInt& q) { return cyclotomic(n).eval(q); }

// Writes p as a product of cyclotomic polynomials, if it is one.
inline std::optional<std::map<unsigned, int>> cyclotomic_factorization(IntPolynomial p) {
  std::map<unsigned, int> out;
  if (p.is_zero()) return std::nullopt;
  int deg = p.degree();
  for (unsigned d = 1; p.degree() > 0 && d <= static_cast<unsigned>(4 * deg * deg + 2); ++d) {
    IntPolynomial f = cyclotomic(d);
    if (f.degree() > p.degree()) continue;
    for (;;) {
      auto [q, r] = p.divmod_monic(f);
      if (!r.is_zero()) break;
      p = q;
      ++out[d];
    }
  }
  if (p != IntPolynomial({1})) return std::nullopt;
  return out;
}

inline std::string cyclotomic_label(const std::map<unsigned, int>& f) {
  std::ostringstream os;
  bool first = true;
  for (auto [d, m] : f) {
    if (!first) os << "*";
    os << "phi" << d;
    if (m > 1) os << "^" << m;
    first = false;
  }
  return first ? std::string("1") : os.str();
}

}  // namespace rc
