#include "test_main.hpp"

#include "rackcollapse/torus.hpp"

using namespace rc;

namespace {

TorusElement random_torus(int rank, int q, std::mt19937_64& rng) {
  std::vector<BigInt> e(rank);
  for (auto& x : e) x = BigInt(rng() % (q - 1));
  return TorusElement::from_exponents(e, q, 1);
}

// generic route: s_gamma . t through the reflection matrix
TorusElement reflect(const RootSystem& R, const Root& g, const TorusElement& t) {
  return weyl_act(R, R.from_matrix(R.reflection(g)), t);
}

// hand formulas below are written as exponent vectors: zeta_i = x^{e_i}
using Formula = std::function<std::vector<BigInt>(const std::vector<BigInt>&)>;

void check_formula(const RootSystem& R, const Root& g, const Formula& f, int q, std::mt19937_64& rng, int trials = 500) {
  for (int k = 0; k < trials; ++k) {
    auto t = random_torus(R.rank(), q, rng);
    auto want = TorusElement::from_exponents(f(t.e), q, 1);
    REQUIRE_MESSAGE(reflect(R, g, t) == want, R.label() << " " << t.to_string());
  }
}

Root simple(int n, int i) {
  Root r(n, 0);
  r[i] = 1;
  return r;
}

// s_0 . t = t * alpha_0^vee(zeta_k^{-1}) when alpha_0 pairs only with alpha_k
Formula s0_formula(std::vector<long long> coroot_coeffs, int k) {
  return [=](const std::vector<BigInt>& z) {
    auto r = z;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= coroot_coeffs[i] * z[k];
    return r;
  };
}

BigInt bareiss_det(BMat a) {
  size_t n = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BMat to_bmat(const IMat& m) {
  BMat b(m.n, std::vector<BigInt>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) b[i][j] = m(i, j);
  return b;
}

BigInt cyclotomic_value(const IntPolynomial& chi, int q) {
  auto f = cyclotomic_factorization(chi);
  REQUIRE(f.has_value());
  BigInt v = 1;
  for (auto [d, m] : *f)
    for (int i = 0; i < m; ++i) v *= eval_cyclotomic(d, q);
  return v;
}

// count solutions of (q B - I) e = 0 mod M by brute force
long long brute_fixed_count(const IMat& B, int q, long long M) {
  int n = B.n;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= M;
  long long count = 0;
  std::vector<long long> e(n);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      e[i] = c % M;
      c /= M;
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      long long s = -e[i];
      for (int j = 0; j < n; ++j) s += q * B(i, j) * e[j];
      if (((s % M) + M) % M) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("simple reflections in types B, F and G match the hand formulas") {
  auto rng = rc_test::rng(11);
  for (int n : {3, 4, 5}) {
    auto R = RootSystem::build('B', n);
    for (int j = 0; j < n; ++j) {
      Formula f = [n, j](const std::vector<BigInt>& z) {
        auto r = z;
        if (j == 0) r[0] = -z[0] + z[1];
        else if (j == n - 2) r[j] = z[j - 1] - z[j] + 2 * z[n - 1];
        else if (j == n - 1) r[j] = z[n - 2] - z[j];
        else r[j] = z[j - 1] - z[j] + z[j + 1];
        return r;
      };
      check_formula(R, simple(n, j), f, 13, rng);
    }
  }
  auto F4 = RootSystem::build('F', 4);
  std::vector<Formula> f4{
      [](const std::vector<BigInt>& z) { auto r = z; r[0] = -z[0] + z[1]; return r; },
      [](const std::vector<BigInt>& z) { auto r = z; r[1] = z[0] - z[1] + 2 * z[2]; return r; },
      [](const std::vector<BigInt>& z) { auto r = z; r[2] = z[1] - z[2] + z[3]; return r; },
      [](const std::vector<BigInt>& z) { auto r = z; r[3] = -z[3] + z[2]; return r; }};
  for (int j = 0; j < 4; ++j) check_formula(F4, simple(4, j), f4[j], 13, rng);
  auto G2 = RootSystem::build('G', 2);
  check_formula(G2, simple(2, 0), [](const std::vector<BigInt>& z) { return std::vector<BigInt>{-z[0] + z[1], z[1]}; }, 13, rng);
  check_formula(G2, simple(2, 1), [](const std::vector<BigInt>& z) { return std::vector<BigInt>{z[0], -z[1] + 3 * z[0]}; }, 13, rng);
}

TEST_CASE("s_0 action matches the hand formulas") {
  auto rng = rc_test::rng(12);
  struct Row {
    char t;
    int n;
    std::vector<long long> coroot;
    int k;
  };
  std::vector<Row> rows{{'E', 6, {1, 2, 2, 3, 2, 1}, 1},
                        {'E', 7, {2, 2, 3, 4, 3, 2, 1}, 0},
                        {'E', 8, {2, 3, 4, 6, 5, 4, 3, 2}, 7},
                        {'F', 4, {2, 3, 2, 1}, 0},
                        {'D', 4, {1, 2, 1, 1}, 1},
                        {'D', 5, {1, 2, 2, 1, 1}, 1},
                        {'D', 6, {1, 2, 2, 2, 1, 1}, 1},
                        {'G', 2, {1, 2}, 1},
                        {'B', 4, {1, 2, 2, 1}, 1}};
  for (const auto& row : rows) {
    auto R = RootSystem::build(row.t, row.n);
    CHECK(R.coroot(R.highest_root()) == row.coroot);
    for (int q : {7, 16, 31}) check_formula(R, R.highest_root(), s0_formula(row.coroot, row.k), q, rng, q == 31 ? 500 : 50);
  }
  // E8 written out coefficient by coefficient
  auto E8 = RootSystem::build('E', 8);
  check_formula(E8, E8.highest_root(), [](const std::vector<BigInt>& z) {
    const long long c[8] = {2, 3, 4, 6, 5, 4, 3, 2};
    std::vector<BigInt> r(8);
    for (int i = 0; i < 7; ++i) r[i] = z[i] - c[i] * z[7];
    r[7] = -z[7];
    return r;
  }, 31, rng);
}

TEST_CASE("w_0 in types E6 and odd D") {
  auto rng = rc_test::rng(13);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'E', 6}, {'D', 5}, {'D', 4}}) {
    auto R = RootSystem::build(t, n);
    IMat w0;
    for (const auto& B : enumerate_weyl(R))
      if (R.length(R.from_matrix(B)) == static_cast<int>(R.positive_roots().size())) w0 = B;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    if (t == 'E') perm = {5, 1, 4, 3, 2, 0};
    if (t == 'D' && n % 2) std::swap(perm[n - 2], perm[n - 1]);
    for (int k = 0; k < 200; ++k) {
      auto x = random_torus(n, 31, rng);
      std::vector<BigInt> want(n);
      for (int i = 0; i < n; ++i) want[i] = -x.e[perm[i]];
      CHECK(weyl_act_matrix(w0, x) == TorusElement::from_exponents(want, 31, 1));
    }
  }
}

TEST_CASE("root evaluation is a character and reflections preserve it") {
  auto rng = rc_test::rng(14);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'B', 3}, {'F', 4}, {'G', 2}, {'E', 6}}) {
    auto R = RootSystem::build(t, n);
    for (int k = 0; k < 50; ++k) {
      auto x = random_torus(n, 19, rng), y = random_torus(n, 19, rng);
      for (const auto& a : R.roots()) CHECK(root_eval(R, a, x * y) == root_eval(R, a, x) * root_eval(R, a, y));
      const auto& g = R.positive_roots()[rng() % R.positive_roots().size()];
      auto sx = reflect(R, g, x);
      // beta(s . t) = (s beta)(t)
      IMat A = R.root_action(R.reflection(g));
      for (const auto& b : R.positive_roots()) CHECK(root_eval(R, b, sx) == root_eval(R, R.act_on_root(A, b), x));
    }
  }
  CHECK_THROWS_AS(root_eval(RootSystem::build('A', 2), {1, 2}, TorusElement::identity(2, 5, 1)), RootNotInSystem);
}

TEST_CASE("Smith normal form: U A V = D with divisibility") {
  auto rng = rc_test::rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    BMat A(r, std::vector<BigInt>(c));
    for (auto& row : A)
      for (auto& x : row) x = static_cast<long long>(rng() % 21) - 10;
    auto s = smith_normal_form(A);
    CHECK(bmat_mul(bmat_mul(s.U, A), s.V) == s.D);
    CHECK(abs(bareiss_det(s.U)) == 1);
    CHECK(abs(bareiss_det(s.V)) == 1);
    auto d = s.diagonal();
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D[i][j] == 0);
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (d[i] == 0) CHECK(d[i + 1] == 0);
      else CHECK(d[i + 1] % d[i] == 0);
    }
  }
}

TEST_CASE("torus orders of B and D cuspidal classes") {
  for (char type : {'B', 'D'})
    for (int n = 2; n <= 5; ++n) {
      if (type == 'D' && n < 4) continue;
      auto R = RootSystem::build(type, n);
      for (const auto& lam : partitions_of(n)) {
        if (type == 'D' && lam.parts.size() % 2) continue;
        auto rep = cuspidal_rep(type, n, lam);
        for (int q : {2, 3, 4, 5, 7}) {
          auto G = fixed_group(R, rep.w, q);
          IMat qB(n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) qB(i, j) = q * rep.w.B(i, j) - (i == j);
          BigInt det = abs(bareiss_det(to_bmat(qB)));
          CHECK(G.order == det);
          BigInt direct = 1;
          for (int l : lam.parts) direct *= ipow(q, l) + 1;
          CHECK(G.order == direct);
          CHECK(G.order == cyclotomic_value(char_poly(R, rep.w), q));
        }
      }
    }
}

TEST_CASE("fixed groups agree with brute-force solution counts") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'G', 2}}) {
    auto R = RootSystem::build(t, n);
    for (const auto& B : enumerate_weyl(R)) {
      auto w = R.from_matrix(B);
      for (int q : {2, 3}) {
        auto G = fixed_group(R, w, q);
        long long M = static_cast<long long>(G.M);
        long long size = 1;
        for (int i = 0; i < n; ++i) size *= M;
        if (size > 300000) continue;
        CHECK(G.order == brute_fixed_count(B, q, M));
        auto els = G.elements();
        CHECK(BigInt(els.size()) == G.order);
        std::set<TorusElement> distinct(els.begin(), els.end());
        CHECK(distinct.size() == els.size());
        for (const auto& x : els) CHECK(is_fixed(R, w, x));
      }
    }
  }
}

TEST_CASE("E8 named tori") {
  auto E8 = RootSystem::build('E', 8);
  auto cox = E8.from_word({0, 1, 2, 3, 4, 5, 6, 7});
  for (int q : {2, 3, 4, 5}) CHECK(fixed_group(E8, cox, q).order == eval_cyclotomic(30, q));
  CHECK(fixed_group(E8, cox, 2).order == 331);
  auto c5 = E8.power(cox, 5);
  auto G = fixed_group(E8, c5, 2);
  CHECK(G.order == 81);
  CHECK(G.nontrivial_factors() == std::vector<BigInt>{3, 3, 3, 3});
  CHECK(char_poly(E8, c5) == cyclotomic(6) * cyclotomic(6) * cyclotomic(6) * cyclotomic(6));
  CHECK(char_poly(E8, E8.power(cox, 2)) == cyclotomic(15));
}

TEST_CASE("centers by brute force") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7}, {'F', 4}, {'G', 2}, {'A', 3}})
    for (int q : {2, 3, 4, 5, 7}) {
      auto R = RootSystem::build(t, n);
      long long m = q - 1, total = 1;
      for (int i = 0; i < n; ++i) total *= m;
      if (total > 400000) continue;
      long long count = 0;
      std::vector<long long> e(n);
      for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
          e[i] = c % m;
          c /= m;
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          long long s = 0;
          for (int j = 0; j < n; ++j) s += R.pairing(i, j) * e[j];
          if (s % m) ok = false;
        }
        count += ok;
      }
      CHECK_MESSAGE(static_cast<long long>(center_elements(R, q).size()) == count, R.label() << " q=" << q);
    }
  CHECK_THROWS_AS(center_elements('A', 3, 5), UnsupportedType);
}

TEST_CASE("regularity") {
  auto R = RootSystem::build('A', 2);
  CHECK_FALSE(is_regular(R, TorusElement::identity(2, 7, 1)));
  CHECK_FALSE(is_regular(R, TorusElement::from_exponents({1, 2}, 7, 1)));  // alpha_1 = 1
  CHECK(is_regular(R, TorusElement::from_exponents({1, 3}, 7, 1)));
  auto t = TorusElement::from_exponents({1, 3}, 7, 1);
  bool want = true;
  for (const auto& a : R.roots())
    if (root_eval(R, a, t).is_one()) want = false;
  CHECK(is_regular(R, t) == want);
}

TEST_CASE("torus element arithmetic") {
  auto rng = rc_test::rng(16);
  for (int k = 0; k < 100; ++k) {
    auto x = random_torus(4, 9, rng), y = random_torus(4, 9, rng);
    CHECK((x * x.inverse()).is_identity());
    CHECK(x * y == y * x);
    CHECK(x.pow(8).is_identity());
  }
  CHECK_THROWS(TorusElement::identity(2, 5, 1) * TorusElement::identity(3, 5, 1));
  CHECK_THROWS(minus_one_exponent(ipow(4, 1) - 1));
  CHECK(root_of_unity_exponent(24, 3) == 8);
  auto span = torus_span({TorusElement::from_exponents({2, 0}, 7, 1)}, 2, 7, 1);
  CHECK(span.size() == 3);
}
