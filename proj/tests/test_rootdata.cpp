#include "test_main.hpp"

#include "rackcollapse/rootdata.hpp"

#include <set>

using namespace rc;

namespace {

const std::vector<std::pair<char, int>> kTypes{{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4},
                                               {'C', 3}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4},
                                               {'G', 2}};

int positive_count(char t, int n) {
  switch (t) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
  }
  return -1;
}

int coxeter_number(char t, int n) {
  switch (t) {
    case 'A': return n + 1;
    case 'B':
    case 'C': return 2 * n;
    case 'D': return 2 * n - 2;
    case 'E': return n == 6 ? 12 : n == 7 ? 18 : 30;
    case 'F': return 12;
    case 'G': return 6;
  }
  return -1;
}

// roots sent to negative roots, counted directly
int inversions(const RootSystem& R, const WeylElement& w) {
  IMat A = R.root_action(w.B);
  int k = 0;
  for (const auto& a : R.positive_roots())
    if (!RootSystem::is_positive(R.act_on_root(A, a))) ++k;
  return k;
}

IntPolynomial prod_x_pow_plus_one(const std::vector<int>& parts) {
  IntPolynomial p({1});
  for (int l : parts) {
    std::vector<long long> c(l + 1, 0);
    c[0] = 1;
    c[l] = 1;
    p = p * IntPolynomial(c);
  }
  return p;
}

WeylElement random_element(const RootSystem& R, std::mt19937_64& rng, int len) {
  std::vector<int> w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % R.rank()));
  return R.from_word(w);
}

}  // namespace

TEST_CASE("root counts") {
  for (auto [t, n] : kTypes) {
    auto R = RootSystem::build(t, n);
    CHECK_MESSAGE(static_cast<int>(R.positive_roots().size()) == positive_count(t, n), R.label());
    CHECK(R.roots().size() == 2 * R.positive_roots().size());
    for (size_t i = 0; i < R.roots().size(); ++i) {
      Root neg = R.roots()[i];
      for (auto& x : neg) x = -x;
      CHECK(R.roots()[R.negation(static_cast<int>(i))] == neg);
    }
  }
}

TEST_CASE("highest roots and coroots") {
  CHECK(RootSystem::build('E', 6).highest_root() == Root{1, 2, 2, 3, 2, 1});
  CHECK(RootSystem::build('E', 7).highest_root() == Root{2, 2, 3, 4, 3, 2, 1});
  CHECK(RootSystem::build('E', 8).highest_root() == Root{2, 3, 4, 6, 5, 4, 3, 2});
  auto F4 = RootSystem::build('F', 4);
  CHECK(F4.highest_root() == Root{2, 3, 4, 2});
  CHECK(F4.coroot(F4.highest_root()) == std::vector<long long>{2, 3, 2, 1});
  CHECK(RootSystem::build('G', 2).highest_root() == Root{3, 2});
  CHECK(RootSystem::build('B', 4).highest_root() == Root{1, 2, 2, 2});
  CHECK(RootSystem::build('D', 5).highest_root() == Root{1, 2, 2, 1, 1});
}

TEST_CASE("Cartan integers of the non-simply-laced types") {
  auto B3 = RootSystem::build('B', 3);
  CHECK(B3.pairing(1, 2) == -2);
  CHECK(B3.pairing(2, 1) == -1);
  auto G2 = RootSystem::build('G', 2);
  CHECK(G2.pairing(0, 1) == -1);
  CHECK(G2.pairing(1, 0) == -3);
  CHECK(G2.symmetrizer() == std::vector<int>{1, 3});
  auto F4 = RootSystem::build('F', 4);
  CHECK(F4.pairing(1, 2) == -2);
  CHECK(F4.symmetrizer() == std::vector<int>{2, 2, 1, 1});
}

TEST_CASE("Coxeter relations") {
  for (auto [t, n] : kTypes) {
    auto R = RootSystem::build(t, n);
    for (int i = 0; i < n; ++i) {
      IMat s = R.simple_reflection(i);
      CHECK(s * s == IMat::identity(n));
      for (int j = i + 1; j < n; ++j) {
        int c = R.pairing(i, j) * R.pairing(j, i);
        int m = c == 0 ? 2 : c == 1 ? 3 : c == 2 ? 4 : 6;
        IMat st = s * R.simple_reflection(j), p = IMat::identity(n);
        for (int k = 0; k < m; ++k) {
          if (k > 0) CHECK_FALSE(p == IMat::identity(n));
          p = p * st;
        }
        CHECK(p == IMat::identity(n));
      }
    }
  }
}

TEST_CASE("Weyl group orders by enumeration") {
  for (auto [t, n] : kTypes) {
    if (t == 'E' && n > 6) continue;
    auto R = RootSystem::build(t, n);
    CHECK_MESSAGE(enumerate_weyl(R).size() == weyl_order(t, n), R.label());
  }
  CHECK_THROWS_AS(enumerate_weyl(RootSystem::build('E', 7), 1000), CapExceeded);
}

TEST_CASE("length, reduced words and inversions") {
  auto rng = rc_test::rng(6);
  for (auto [t, n] : kTypes) {
    auto R = RootSystem::build(t, n);
    for (int trial = 0; trial < 40; ++trial) {
      auto w = random_element(R, rng, 1 + static_cast<int>(rng() % 25));
      auto red = R.reduced_word(w);
      CHECK(static_cast<int>(red.size()) == R.length(w));
      CHECK(R.length(w) == inversions(R, w));
      CHECK(R.from_word(red) == w);
      CHECK(R.permutes_coroots(w.B));
      CHECK(R.multiply(w, R.inverse(w)) == R.identity());
      CHECK(R.from_matrix(w.B) == w);
    }
  }
}

TEST_CASE("Coxeter elements have order h and are cuspidal") {
  for (auto [t, n] : kTypes) {
    auto R = RootSystem::build(t, n);
    std::vector<int> word(n);
    for (int i = 0; i < n; ++i) word[i] = i;
    auto c = R.from_word(word);
    CHECK_MESSAGE(R.order(c) == coxeter_number(t, n), R.label());
    CHECK(is_cuspidal(R, c));
    CHECK(minimal_support_rank(R, c) == n);
  }
  CHECK(cyclotomic_label(*cyclotomic_factorization(char_poly(RootSystem::build('E', 8),
                                                             RootSystem::build('E', 8).from_word({0, 1, 2, 3, 4, 5, 6, 7})))) ==
        "phi30");
}

TEST_CASE("the longest element is -1 exactly when expected") {
  for (auto [t, n] : kTypes) {
    if (t == 'E' && n > 6) continue;
    auto R = RootSystem::build(t, n);
    int maxlen = -1;
    IMat w0;
    for (const auto& B : enumerate_weyl(R)) {
      int l = R.length(WeylElement{{}, B, {}});
      if (l > maxlen) {
        maxlen = l;
        w0 = B;
      }
    }
    CHECK(maxlen == static_cast<int>(R.positive_roots().size()));
    IMat minus(n);
    for (int i = 0; i < n; ++i) minus(i, i) = -1;
    bool expect = !(t == 'A' && n > 1) && !(t == 'D' && n % 2) && !(t == 'E' && n == 6);
    CHECK_MESSAGE((w0 == minus) == expect, R.label());
  }
}

TEST_CASE("cuspidal representatives in W(B_n)") {
  const int pn[] = {0, 1, 2, 3, 5, 7, 11};
  for (int n = 1; n <= 6; ++n) {
    int count = 0;
    std::set<std::vector<long long>> distinct;
    auto R = RootSystem::build('B', n);
    for (const auto& lam : partitions_of(n)) {
      auto rep = cuspidal_rep('B', n, lam);
      CHECK(is_cuspidal(R, rep.w));
      // char poly of a negative cycle product
      CHECK(char_poly(R, rep.w) == prod_x_pow_plus_one(lam.parts));
      REQUIRE(rep.factors.size() == lam.parts.size());
      for (size_t j = 0; j < lam.parts.size(); ++j) CHECK(R.order(rep.factors[j]) == 2 * lam.parts[j]);
      // factors commute pairwise
      for (size_t i = 0; i < rep.factors.size(); ++i)
        for (size_t j = i + 1; j < rep.factors.size(); ++j)
          CHECK(rep.factors[i].B * rep.factors[j].B == rep.factors[j].B * rep.factors[i].B);
      distinct.insert(rep.w.B.a);
      ++count;
    }
    CHECK(count == pn[n]);
    CHECK(static_cast<int>(distinct.size()) == pn[n]);
  }
}

TEST_CASE("cuspidal representatives in W(D_n)") {
  auto D4 = RootSystem::build('D', 4);
  auto r31 = cuspidal_rep('D', 4, {{3, 1}});
  auto r1111 = cuspidal_rep('D', 4, {{1, 1, 1, 1}});
  CHECK(D4.order(r31.w) == 6);
  CHECK(D4.order(r1111.w) == 2);
  CHECK(is_cuspidal(D4, r31.w));
  CHECK(is_cuspidal(D4, r1111.w));
  for (int n = 4; n <= 6; ++n) {
    auto D = RootSystem::build('D', n);
    for (const auto& lam : partitions_of(n)) {
      if (lam.parts.size() % 2) {
        CHECK_THROWS_AS(cuspidal_rep('D', n, lam), InvalidPartition);
        continue;
      }
      auto rep = cuspidal_rep('D', n, lam);
      CHECK(D.permutes_coroots(rep.w.B));
      CHECK(is_cuspidal(D, rep.w));
      CHECK(char_poly(D, rep.w) == prod_x_pow_plus_one(lam.parts));
    }
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(RootSystem::build('H', 3), InvalidType);
  CHECK_THROWS_AS(RootSystem::build('E', 5), InvalidType);
  CHECK_THROWS_AS(RootSystem::build('G', 3), InvalidType);
  CHECK_THROWS_AS(cuspidal_rep('B', 3, {{2, 2}}), InvalidPartition);
  CHECK_THROWS_AS(cuspidal_rep('B', 3, {{1, 2}}), InvalidPartition);
  CHECK_THROWS_AS(cuspidal_rep('A', 3, {{3}}), InvalidType);
  CHECK_THROWS(RootSystem::build('A', 2).from_word({2}));
}

TEST_CASE("subsystems") {
  auto E8 = RootSystem::build('E', 8);
  Root a0 = E8.highest_root();
  for (auto& x : a0) x = -x;
  std::vector<Root> base{a0};
  for (int k = 8; k >= 2; --k) {
    Root r(8, 0);
    r[k - 1] = 1;
    base.push_back(r);
  }
  auto S = subsystem_from_base(E8, base);
  CHECK(S.system.label() == "D8");
  CHECK(S.system.positive_roots().size() == 56);

  auto G2 = RootSystem::build('G', 2);
  auto L = subsystem_from_base(G2, {{0, 1}, {3, 1}});
  CHECK(L.system.label() == "A2");
  auto A2 = RootSystem::build('A', 2);
  CHECK_THROWS_AS(subsystem_from_base(A2, {{1, 0}, {1, 1}}), InvalidBase);
  CHECK_THROWS_AS(subsystem_from_base(A2, {{2, 0}}), InvalidBase);
  CHECK(parabolic_subsystem(E8, {0, 2, 3}).system.label() == "A3");
  CHECK(parabolic_subsystem(E8, {0, 1}).system.label() == "A1+A1");
  CHECK(type_label(RootSystem::build('F', 4).pairing_matrix()) == "F4");
}

TEST_CASE("J_w has the rank of id - w") {
  auto rng = rc_test::rng(7);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'B', 3}, {'D', 4}, {'F', 4}, {'A', 4}, {'G', 2}}) {
    auto R = RootSystem::build(t, n);
    for (int trial = 0; trial < 10; ++trial) {
      auto w = random_element(R, rng, 1 + static_cast<int>(rng() % 15));
      auto J = find_Jw(R, w);
      CHECK(J.rank == minimal_support_rank(R, w));
      CHECK(static_cast<int>(J.J.size()) == J.rank);
      CHECK(char_poly(R, J.conjugate) == char_poly(R, w));
      CHECK(R.support(J.conjugate) == J.J);
    }
  }
}

TEST_CASE("orbit-mode and exhaustive centralizers agree") {
  auto rng = rc_test::rng(8);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'D', 4}, {'F', 4}, {'B', 4}, {'E', 6}}) {
    auto R = RootSystem::build(t, n);
    for (int trial = 0; trial < 6; ++trial) {
      auto w = random_element(R, rng, 1 + static_cast<int>(rng() % 20));
      auto a = centralizer_order_W(R, w, t, CentralizerMode::Exhaustive);
      auto b = centralizer_order_W(R, w, t, CentralizerMode::Orbit);
      CHECK_MESSAGE(a == b, R.label());
    }
  }
  auto G2 = RootSystem::build('G', 2);
  CHECK(centralizer_order_W(G2, G2.from_word({0, 1}), 'G', CentralizerMode::Exhaustive) == 6);
}

TEST_CASE("characteristic polynomial helpers") {
  IMat M(2);
  M(0, 0) = 0;
  M(0, 1) = -1;
  M(1, 0) = 1;
  M(1, 1) = 0;
  CHECK(char_poly_of(M) == IntPolynomial({1, 0, 1}));
  CHECK(abs_det(M) == 1);
  CHECK(rank_of(M) == 2);
  IMat Z(3);
  Z(0, 0) = 1;
  Z(1, 0) = 2;
  CHECK(rank_of(Z) == 1);
}
