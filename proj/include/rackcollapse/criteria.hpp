#pragma once

#include "groups.hpp"
#include "racks.hpp"
#include "rootdata.hpp"
#include "torus.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace rc {

struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotNormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSimple : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SubsystemNotStable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ElementNotFixed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class WitnessKind { C, D, F, Omega, RealOdd };

inline std::string kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::C: return "C";
    case WitnessKind::D: return "D";
    case WitnessKind::F: return "F";
    case WitnessKind::Omega: return "Omega";
    case WitnessKind::RealOdd: return "RealOdd";
  }
  return "?";
}

inline WitnessKind kind_from_name(const std::string& s) {
  if (s == "C") return WitnessKind::C;
  if (s == "D") return WitnessKind::D;
  if (s == "F") return WitnessKind::F;
  if (s == "Omega") return WitnessKind::Omega;
  if (s == "RealOdd") return WitnessKind::RealOdd;
  throw std::invalid_argument("unknown witness kind " + s);
}

// Payload layout by kind:
//   C:       subgroup = generators of H, elems = {r, s}
//   D:       elems = {r, s}
//   F:       elems = {r1, r2, r3, r4}
//   Omega:   subgroup = generators of S, elems = {t}, orbit_size, optional affine spec
//   RealOdd: elems = {g, h} with h g h^-1 = g^-1
struct TypeWitness {
  WitnessKind kind = WitnessKind::C;
  std::vector<Element> subgroup;
  std::vector<Element> elems;
  int orbit_size = 0;
  std::optional<AffineRackSpec> affine;

  bool operator==(const TypeWitness& o) const {
    auto aff_eq = [](const std::optional<AffineRackSpec>& a, const std::optional<AffineRackSpec>& b) {
      if (a.has_value() != b.has_value()) return false;
      return !a || (a->orders == b->orders && a->matrix == b->matrix);
    };
    return kind == o.kind && subgroup == o.subgroup && elems == o.elems && orbit_size == o.orbit_size &&
           aff_eq(affine, o.affine);
  }
};

enum class SearchStatus { Found, NoneFound, BudgetExceeded };

inline std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NoneFound: return "none-found";
    case SearchStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::NoneFound;
  std::optional<TypeWitness> witness;
  std::size_t explored = 0;

  bool found() const { return status == SearchStatus::Found; }
};

struct SearchOptions {
  std::size_t budget = 10'000'000;
  int workers = 1;
};

namespace detail {

inline bool commute(const Domain& d, const Element& a, const Element& b) { return d.mul(a, b) == d.mul(b, a); }

inline bool contains_sorted(const std::vector<Element>& sorted, const Element& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline std::vector<Element> sorted_copy(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Lowest index in [0, count) satisfying pred, evaluated by several workers.
template <class Pred>
std::optional<std::size_t> first_index(std::size_t count, int workers, Pred pred) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{count};
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count || i >= best.load()) return;
        if (pred(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    });
  for (auto& th : pool) th.join();
  if (best.load() == count) return std::nullopt;
  return best.load();
}

// key of a subgroup: sorted indices of its elements in the ambient group
inline std::vector<std::uint32_t> subgroup_key(const FiniteGroup& G, const FiniteGroup& H) {
  std::vector<std::uint32_t> k;
  for (const auto& x : H.elements()) k.push_back(static_cast<std::uint32_t>(G.index_of(x)));
  std::sort(k.begin(), k.end());
  return k;
}

// Orbits of the elements of `pool` under conjugation by `gens`; pool must be stable.
inline std::vector<std::vector<Element>> orbit_partition(const Domain& d, const std::vector<Element>& gens,
                                                         const std::vector<Element>& pool) {
  std::vector<std::vector<Element>> out;
  std::set<Element> done;
  for (const auto& x : pool) {
    if (done.count(x)) continue;
    auto o = conjugation_orbit(d, gens, x);
    for (const auto& y : o) done.insert(y);
    out.push_back(o);
  }
  return out;
}

}  // namespace detail

// ---- witness verification (independent of the searches) ---------------------

namespace verify {

inline bool in_class(const ConjClass& c, const Element& x) { return c.contains(x); }

// orbit of x under the subgroup generated by gens, recomputed by full enumeration
inline std::set<Element> full_orbit(const Domain& d, const std::vector<Element>& gens, const Element& x) {
  std::set<Element> out;
  for (const auto& h : FiniteGroup::closure_set(d, gens)) out.insert(d.conj(h, x));
  return out;
}

inline bool type_D(const ConjClass& c, const TypeWitness& w) {
  if (w.kind != WitnessKind::D || w.elems.size() != 2) return false;
  const auto& d = c.ambient.domain();
  const Element &r = w.elems[0], &s = w.elems[1];
  if (!in_class(c, r) || !in_class(c, s)) return false;
  auto Or = full_orbit(d, {r, s}, r);
  if (Or.count(s)) return false;
  Element rs = d.mul(r, s), sr = d.mul(s, r);
  return d.mul(rs, rs) != d.mul(sr, sr);
}

inline bool type_F(const ConjClass& c, const TypeWitness& w) {
  if (w.kind != WitnessKind::F || w.elems.size() != 4) return false;
  const auto& d = c.ambient.domain();
  for (const auto& r : w.elems)
    if (!in_class(c, r)) return false;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (detail::commute(d, w.elems[a], w.elems[b])) return false;
  for (int a = 0; a < 4; ++a) {
    auto O = full_orbit(d, w.elems, w.elems[a]);
    for (int b = a + 1; b < 4; ++b)
      if (O.count(w.elems[b])) return false;
  }
  return true;
}

inline bool type_C(const ConjClass& c, const TypeWitness& w) {
  if (w.kind != WitnessKind::C || w.elems.size() != 2) return false;
  const auto& d = c.ambient.domain();
  const Element &r = w.elems[0], &s = w.elems[1];
  if (!in_class(c, r) || !in_class(c, s)) return false;
  auto H = FiniteGroup::closure_set(d, w.subgroup);
  if (!H.count(r) || !H.count(s)) return false;
  if (detail::commute(d, r, s)) return false;
  auto Or = full_orbit(d, w.subgroup, r), Os = full_orbit(d, w.subgroup, s);
  if (Or.count(s)) return false;
  std::vector<Element> gens(Or.begin(), Or.end());
  gens.insert(gens.end(), Os.begin(), Os.end());
  if (FiniteGroup::closure_set(d, gens).size() != H.size()) return false;
  std::size_t lo = std::min(Or.size(), Os.size()), hi = std::max(Or.size(), Os.size());
  return lo > 2 || hi > 4;
}

inline bool type_Omega(const ConjClass& c, const TypeWitness& w) {
  if (w.kind != WitnessKind::Omega || w.elems.size() != 1) return false;
  const auto& d = c.ambient.domain();
  const Element& t = w.elems[0];
  if (!in_class(c, t)) return false;
  FiniteGroup S(c.ambient.domain_ptr(), w.subgroup);
  if (!S.contains(t)) return false;
  for (const auto& g : w.subgroup)
    if (!c.ambient.contains(g)) return false;
  if (!is_solvable(S)) return false;
  auto O = full_orbit(d, w.subgroup, t);
  if (static_cast<int>(O.size()) != w.orbit_size) return false;
  std::vector<Element> Ov(O.begin(), O.end());
  if (FiniteGroup::closure_set(d, Ov).size() != S.order()) return false;
  bool central = true;
  for (const auto& g : w.subgroup)
    if (!detail::commute(d, g, t)) central = false;
  if (central) return false;
  Rack X = subrack_of_elements(d, Ov);
  if (!X.is_rack()) return false;
  if (X.size() >= 3 && X.size() <= 7 && !exempt_match(X).empty()) return false;
  if (w.affine) {
    try {
      w.affine->validate();
    } catch (const std::exception&) {
      return false;
    }
    if (!is_indecomposable_affine(*w.affine)) return false;
    if (w.affine->group_size() != X.size()) return false;
    if (X.size() <= kRackIsoCap && !rack_isomorphic(affine_rack(*w.affine), X)) return false;
  }
  return true;
}

inline bool type_RealOdd(const ConjClass& c, const TypeWitness& w) {
  if (w.kind != WitnessKind::RealOdd || w.elems.size() != 2) return false;
  const auto& d = c.ambient.domain();
  const Element &g = w.elems[0], &h = w.elems[1];
  if (!in_class(c, g) || !c.ambient.contains(h)) return false;
  Element gi = d.inv(g);
  if (gi == g) return false;
  if (d.order(g) % 2 == 0) return false;
  return d.conj(h, g) == gi;
}

inline bool witness(const ConjClass& c, const TypeWitness& w) {
  switch (w.kind) {
    case WitnessKind::C: return type_C(c, w);
    case WitnessKind::D: return type_D(c, w);
    case WitnessKind::F: return type_F(c, w);
    case WitnessKind::Omega: return type_Omega(c, w);
    case WitnessKind::RealOdd: return type_RealOdd(c, w);
  }
  return false;
}

}  // namespace verify

// ---- detectors -----------------------------------------------------------------

// Pairs (t, s); every pair in the class is conjugate to one with first entry t.
inline SearchResult check_type_D(const ConjClass& c, const SearchOptions& opt = {}) {
  const auto& d = c.ambient.domain();
  const Element& t = c.representative;
  const auto& cls = c.elements;
  std::size_t count = std::min(cls.size(), opt.budget);
  auto hit = detail::first_index(count, opt.workers, [&](std::size_t i) {
    const Element& s = cls[i];
    if (s == t || detail::commute(d, t, s)) return false;
    Element rs = d.mul(t, s), sr = d.mul(s, t);
    if (d.mul(rs, rs) == d.mul(sr, sr)) return false;
    auto Ot = conjugation_orbit(d, {t, s}, t);
    return std::find(Ot.begin(), Ot.end(), s) == Ot.end();
  });
  SearchResult res;
  res.explored = count;
  if (hit) {
    res.status = SearchStatus::Found;
    res.witness = TypeWitness{WitnessKind::D, {}, {t, cls[*hit]}, 0, std::nullopt};
  } else {
    res.status = count < cls.size() ? SearchStatus::BudgetExceeded : SearchStatus::NoneFound;
  }
  return res;
}

// Quadruples {t, r2, r3, r4} with r2 < r3 < r4 by class index; the budget
// bounds the number of triples considered in lexicographic order.
inline SearchResult check_type_F(const ConjClass& c, const SearchOptions& opt = {}) {
  const auto& d = c.ambient.domain();
  const Element& t = c.representative;
  std::vector<Element> others;
  for (const auto& x : c.elements)
    if (x != t && !detail::commute(d, t, x)) others.push_back(x);
  std::size_t m = others.size();
  // first rank of triples starting at i: sum_{k<i} C(m-1-k, 2)
  auto c2 = [](std::size_t x) { return x < 2 ? std::size_t(0) : x * (x - 1) / 2; };
  std::vector<std::size_t> start(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) start[i + 1] = start[i] + c2(m - 1 - i);
  std::size_t total = start[m];
  bool truncated = total > opt.budget;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> found(m);
  auto hit = detail::first_index(m, opt.workers, [&](std::size_t i) {
    if (start[i] >= opt.budget) return false;
    const Element& r2 = others[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Element& r3 = others[j];
      if (detail::commute(d, r2, r3)) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        std::size_t rank = start[i] + (c2(m - 1 - i) - c2(m - j)) + (k - j - 1);
        if (rank >= opt.budget) return false;
        const Element& r4 = others[k];
        if (detail::commute(d, r2, r4) || detail::commute(d, r3, r4)) continue;
        std::vector<Element> q{t, r2, r3, r4};
        bool distinct = true;
        for (int a = 0; a < 4 && distinct; ++a) {
          auto O = conjugation_orbit(d, q, q[a]);
          auto Os = detail::sorted_copy(O);
          for (int b = a + 1; b < 4; ++b)
            if (detail::contains_sorted(Os, q[b])) {
              distinct = false;
              break;
            }
        }
        if (distinct) {
          found[i] = std::make_pair(j, k);
          return true;
        }
      }
    }
    return false;
  });
  SearchResult res;
  res.explored = std::min(total, opt.budget);
  if (hit) {
    auto [j, k] = *found[*hit];
    res.status = SearchStatus::Found;
    res.witness = TypeWitness{WitnessKind::F, {}, {t, others[*hit], others[j], others[k]}, 0, std::nullopt};
  } else {
    res.status = truncated ? SearchStatus::BudgetExceeded : SearchStatus::NoneFound;
  }
  return res;
}

namespace detail {

// Breadth-first walk over the subgroups generated by t and further class
// elements. `visit` returns a witness to stop; `expand` decides whether a
// subgroup's overgroups are explored. The budget counts subgroup closures.
template <class Visit, class Expand>
SearchResult subgroup_walk(const ConjClass& c, std::size_t budget, Visit visit, Expand expand) {
  const FiniteGroup& G = c.ambient;
  const Element& t = c.representative;
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<FiniteGroup> frontier;
  FiniteGroup H0(G.domain_ptr(), {t});
  seen.insert(subgroup_key(G, H0));
  SearchResult res;
  res.explored = 1;
  if (auto w = visit(H0)) {
    res.status = SearchStatus::Found;
    res.witness = w;
    return res;
  }
  if (expand(H0)) frontier.push_back(H0);
  while (!frontier.empty()) {
    std::vector<FiniteGroup> next;
    for (const auto& H : frontier)
      for (const auto& s : c.elements) {
        if (H.contains(s)) continue;
        if (res.explored >= budget) {
          res.status = SearchStatus::BudgetExceeded;
          return res;
        }
        std::vector<Element> gens = H.generators();
        gens.push_back(s);
        FiniteGroup K(G.domain_ptr(), gens);
        ++res.explored;
        if (!seen.insert(subgroup_key(G, K)).second) continue;
        if (auto w = visit(K)) {
          res.status = SearchStatus::Found;
          res.witness = w;
          return res;
        }
        if (expand(K)) next.push_back(K);
      }
    frontier.swap(next);
  }
  res.status = SearchStatus::NoneFound;
  return res;
}

}  // namespace detail

inline SearchResult check_type_C(const ConjClass& c, const SearchOptions& opt = {}) {
  const auto& d = c.ambient.domain();
  const Element& t = c.representative;
  auto visit = [&](const FiniteGroup& H) -> std::optional<TypeWitness> {
    std::vector<Element> pool;
    for (const auto& x : c.elements)
      if (H.contains(x)) pool.push_back(x);
    auto parts = detail::orbit_partition(d, H.generators(), pool);
    std::size_t ai = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (std::find(parts[i].begin(), parts[i].end(), t) != parts[i].end()) ai = i;
    const auto& At = parts[ai];
    for (std::size_t bi = 0; bi < parts.size(); ++bi) {
      if (bi == ai) continue;
      const auto& B = parts[bi];
      std::size_t lo = std::min(At.size(), B.size()), hi = std::max(At.size(), B.size());
      if (!(lo > 2 || hi > 4)) continue;
      std::optional<Element> s;
      auto Bs = detail::sorted_copy(B);
      for (const auto& x : c.elements)
        if (detail::contains_sorted(Bs, x) && !detail::commute(d, t, x)) {
          s = x;
          break;
        }
      if (!s) continue;
      std::vector<Element> gens = At;
      gens.insert(gens.end(), B.begin(), B.end());
      if (FiniteGroup::closure_set(d, gens).size() != H.order()) continue;
      return TypeWitness{WitnessKind::C, H.generators(), {t, *s}, 0, std::nullopt};
    }
    return std::nullopt;
  };
  return detail::subgroup_walk(c, opt.budget, visit, [](const FiniteGroup&) { return true; });
}

namespace detail {

// affine route: cyclic Gamma = <x> normalized by t with trivial centralizer
inline std::optional<TypeWitness> omega_affine(const ConjClass& c, const SearchOptions& opt) {
  const FiniteGroup& G = c.ambient;
  const auto& d = G.domain();
  const Element& t = c.representative;
  const auto& elems = G.elements();
  std::vector<std::optional<TypeWitness>> out(elems.size());
  auto hit = first_index(elems.size(), opt.workers, [&](std::size_t i) {
    const Element& x = elems[i];
    long long n = d.order(x);
    if (n < 2) return false;
    std::vector<Element> powers{d.identity()};
    for (long long k = 1; k < n; ++k) powers.push_back(d.mul(powers.back(), x));
    Element y = d.conj(t, x);
    long long mult = -1;
    for (long long k = 1; k < n; ++k)
      if (powers[k] == y) {
        mult = k;
        break;
      }
    if (mult < 0) return false;
    for (long long k = 1; k < n; ++k)
      if (commute(d, powers[k], t)) return false;
    std::vector<Element> X;
    for (long long k = 0; k < n; ++k) X.push_back(d.conj(powers[k], t));
    Rack R = subrack_of_elements(d, X);
    if (R.size() >= 3 && R.size() <= 7 && !exempt_match(R).empty()) return false;
    AffineRackSpec spec;
    spec.orders = {static_cast<int>(n)};
    spec.matrix = {{static_cast<int>(mult)}};
    out[i] = TypeWitness{WitnessKind::Omega, {x, t}, {t}, static_cast<int>(n), spec};
    return true;
  });
  if (hit) return out[*hit];
  return std::nullopt;
}

}  // namespace detail

struct OmegaResult {
  SearchResult result;
  std::string route;  // "affine" or "solvable"
};

inline OmegaResult check_type_Omega_detailed(const ConjClass& c, const SearchOptions& opt = {}) {
  if (auto w = detail::omega_affine(c, opt)) {
    SearchResult r;
    r.status = SearchStatus::Found;
    r.witness = w;
    r.explored = 1;
    return {r, "affine"};
  }
  const auto& d = c.ambient.domain();
  const Element& t = c.representative;
  auto visit = [&](const FiniteGroup& H) -> std::optional<TypeWitness> {
    bool central = true;
    for (const auto& g : H.generators())
      if (!detail::commute(d, g, t)) central = false;
    if (central) return std::nullopt;
    if (!is_solvable(H)) return std::nullopt;
    auto O = conjugation_orbit(d, H.generators(), t);
    if (FiniteGroup::closure_set(d, O).size() != H.order()) return std::nullopt;
    int sz = static_cast<int>(O.size());
    if (sz >= 3 && sz <= 7 && !exempt_match(subrack_of_elements(d, O)).empty()) return std::nullopt;
    return TypeWitness{WitnessKind::Omega, H.generators(), {t}, sz, std::nullopt};
  };
  // overgroups of a non-solvable group are non-solvable
  auto expand = [](const FiniteGroup& H) { return is_solvable(H); };
  return {detail::subgroup_walk(c, opt.budget, visit, expand), "solvable"};
}

inline SearchResult check_type_Omega(const ConjClass& c, const SearchOptions& opt = {}) {
  return check_type_Omega_detailed(c, opt).result;
}

inline SearchResult check_real_odd(const ConjClass& c, const SearchOptions& opt = {}) {
  const auto& d = c.ambient.domain();
  const Element& g = c.representative;
  SearchResult res;
  Element gi = d.inv(g);
  if (gi == g || d.order(g) % 2 == 0 || !c.contains(gi)) {
    res.status = SearchStatus::NoneFound;
    return res;
  }
  const auto& elems = c.ambient.elements();
  auto hit = detail::first_index(elems.size(), opt.workers, [&](std::size_t i) { return d.conj(elems[i], g) == gi; });
  res.explored = elems.size();
  if (!hit) throw std::logic_error("inverse lies in the class but no conjugator was found");
  res.status = SearchStatus::Found;
  res.witness = TypeWitness{WitnessKind::RealOdd, {}, {g, elems[*hit]}, 0, std::nullopt};
  return res;
}

// ---- normal simple subgroups ---------------------------------------------------

inline bool is_simple_nonabelian(const FiniteGroup& N) {
  if (N.order() <= 1 || is_abelian(N)) return false;
  for (const auto& g : class_representatives(N)) {
    if (g == N.domain().identity()) continue;
    if (normal_closure(N, {g}).order() != N.order()) return false;
  }
  return true;
}

inline bool check_normal_simple(const FiniteGroup& G, const FiniteGroup& N, const Element& r) {
  if (!is_normal_in(G, N)) throw NotNormal("N is not normal in G");
  if (!is_simple_nonabelian(N)) throw NotSimple("N is not simple non-abelian");
  Element x = G.domain().normalize(r);
  if (!N.contains(x)) throw ElementNotInGroup("r is not in N");
  auto OG = conjugation_orbit(G.domain(), G.generators(), x);
  auto ON = conjugation_orbit(G.domain(), N.generators(), x);
  return OG.size() > ON.size();
}

// ---- Q / N / W -----------------------------------------------------------------

enum class Tri { Holds, Fails, Undetermined };

inline std::string tri_name(Tri t) {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    case Tri::Undetermined: return "undetermined";
  }
  return "?";
}

struct QNWReport {
  Tri q = Tri::Undetermined, n = Tri::Undetermined, w = Tri::Undetermined;
  std::vector<std::string> evidence;
  std::string phi_m;

  bool all_hold() const { return q == Tri::Holds && n == Tri::Holds && w == Tri::Holds; }
};

// Group-level hypotheses for a class r^G with r in an abelian T normalizing a
// subgroup M.
inline QNWReport check_potente_abstracta(const FiniteGroup& G, const FiniteGroup& M, const FiniteGroup& T,
                                         const Element& r) {
  const auto& d = G.domain();
  Element x = d.normalize(r);
  for (const auto& g : M.generators())
    if (!G.contains(g)) throw PreconditionViolated("M is not contained in G");
  for (const auto& g : T.generators())
    if (!G.contains(g)) throw PreconditionViolated("T is not contained in G");
  if (!is_abelian(T)) throw PreconditionViolated("T is not abelian");
  for (const auto& g : T.generators())
    for (const auto& m : M.generators())
      if (!M.contains(d.conj(g, m))) throw PreconditionViolated("T does not normalize M");
  if (!T.contains(x)) throw PreconditionViolated("r is not in T");

  QNWReport rep;
  rep.phi_m = M.name().empty() ? "M" : M.name();
  rep.q = is_quasi_simple(M) ? Tri::Holds : Tri::Fails;
  rep.evidence.push_back(std::string("M quasi-simple: ") + (rep.q == Tri::Holds ? "yes" : "no"));

  auto centralizes_M = [&](const Element& y) {
    for (const auto& m : M.generators())
      if (!detail::commute(d, y, m)) return false;
    return true;
  };
  rep.n = centralizes_M(x) ? Tri::Fails : Tri::Holds;
  rep.evidence.push_back(std::string("r centralizes M: ") + (rep.n == Tri::Fails ? "yes" : "no"));

  auto OG = conjugation_orbit(d, G.generators(), x);
  auto OM = detail::sorted_copy(conjugation_orbit(d, M.generators(), x));
  std::size_t count = 0;
  for (const auto& y : OG) {
    if (!T.contains(y)) continue;
    if (detail::contains_sorted(OM, y)) continue;
    if (centralizes_M(y)) continue;
    ++count;
  }
  rep.w = count ? Tri::Holds : Tri::Fails;
  rep.evidence.push_back("difference set size " + std::to_string(count));
  return rep;
}

namespace detail {

inline std::set<Root> root_set(const std::vector<Root>& v) { return {v.begin(), v.end()}; }

// True when B (coroot basis, ambient) restricted to the subsystem acts as an
// element of its Weyl group.
inline bool acts_inner(const RootSystem& R, const Subsystem& S, const IMat& B) {
  int k = S.system.rank();
  if (k == 0) return true;
  std::map<Root, Root> to_sub;
  const auto& sub_roots = S.system.roots();
  auto amb = S.ambient_roots();
  for (size_t i = 0; i < amb.size(); ++i) to_sub[amb[i]] = sub_roots[i];
  IMat Ra = R.root_action(B);
  IMat Rs(k);
  for (int j = 0; j < k; ++j) {
    auto it = to_sub.find(R.act_on_root(Ra, S.base[j]));
    if (it == to_sub.end()) throw SubsystemNotStable("element does not preserve the subsystem");
    for (int i = 0; i < k; ++i) Rs(i, j) = it->second[i];
  }
  std::vector<IMat> refl;
  for (int i = 0; i < k; ++i) refl.push_back(S.system.root_action(S.system.simple_reflection(i)));
  for (std::size_t guard = 0; guard <= S.system.positive_roots().size() + 1; ++guard) {
    int neg = -1;
    for (int i = 0; i < k; ++i) {
      Root col(k);
      for (int r = 0; r < k; ++r) col[r] = static_cast<int>(Rs(r, i));
      if (!RootSystem::is_positive(col)) {
        neg = i;
        break;
      }
    }
    if (neg < 0) return Rs == IMat::identity(k);
    Rs = Rs * refl[neg];
  }
  throw std::logic_error("descent in the subsystem did not terminate");
}

inline bool is_levi(const RootSystem& R, const Subsystem& S) {
  auto mine = root_set(S.ambient_roots());
  int n = R.rank(), k = static_cast<int>(S.base.size());
  for (const auto& a : R.roots()) {
    if (mine.count(a)) continue;
    if (k == n) return false;  // full rank subsystem missing a root
    IMat M(n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = S.base[i][j];
    for (int j = 0; j < n; ++j) M(k, j) = a[j];
    if (rank_of(M) == k) return false;
  }
  return true;
}

inline bool is_all_long(const RootSystem& R, const Subsystem& S) {
  long long dmax = 0, dmin = 1 << 30;
  for (const auto& a : R.roots()) {
    dmax = std::max(dmax, R.root_d(a));
    dmin = std::min(dmin, R.root_d(a));
  }
  if (dmax == dmin) return false;
  std::set<Root> longs;
  for (const auto& a : R.roots())
    if (R.root_d(a) == dmax) longs.insert(a);
  return longs == root_set(S.ambient_roots());
}

inline std::vector<IMat> weyl_closure(const std::vector<IMat>& gens, int n, std::size_t cap) {
  std::vector<IMat> out{IMat::identity(n)};
  std::set<std::vector<long long>> seen{out[0].a};
  for (size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      IMat y = out[i] * g;
      if (seen.insert(y.a).second) {
        out.push_back(y);
        if (out.size() > cap) throw CapExceeded("Weyl subgroup larger than the cap");
      }
    }
  return out;
}

}  // namespace detail

struct QNWOptions {
  std::size_t weyl_cap = 1'000'000;
};

inline QNWReport check_QNW_root_level(const RootSystem& R, int q, const WeylElement& w, const std::vector<Root>& base,
                                      const TorusElement& t, const QNWOptions& opt = {}) {
  QNWReport rep;
  Subsystem S = subsystem_from_base(R, base);
  rep.phi_m = S.system.label();
  IMat B = R.twisted(w);
  IMat Ra = R.root_action(B);
  auto PhiM = detail::root_set(S.ambient_roots());
  for (const auto& a : PhiM)
    if (!PhiM.count(R.act_on_root(Ra, a))) throw SubsystemNotStable("w does not preserve the subsystem");
  if (t.rank() != R.rank() || t.q != q) throw ElementNotFixed("torus element has the wrong shape");
  if (!is_fixed(R, w, t)) throw ElementNotFixed("t is not fixed by the twisted Frobenius");

  // Q
  auto comps = dynkin_components(S.system.pairing_matrix());
  int nc = static_cast<int>(comps.size());
  std::vector<std::set<Root>> comp_roots(nc);
  std::vector<Subsystem> comp_sub;
  for (int i = 0; i < nc; ++i) {
    std::vector<Root> b;
    for (int k : comps[i]) b.push_back(S.base[k]);
    comp_sub.push_back(subsystem_from_base(R, b));
    comp_roots[i] = detail::root_set(comp_sub.back().ambient_roots());
  }
  std::vector<int> perm(nc, -1);
  for (int i = 0; i < nc; ++i) {
    Root img = R.act_on_root(Ra, comp_sub[i].base[0]);
    for (int j = 0; j < nc; ++j)
      if (comp_roots[j].count(img)) perm[i] = j;
  }
  if (nc == 0) {
    rep.q = Tri::Fails;
    rep.evidence.push_back("Q: empty subsystem");
  } else {
    int dlen = 1;
    for (int x = perm[0]; x != 0; x = perm[x]) ++dlen;
    if (dlen != nc) {
      rep.q = Tri::Undetermined;
      rep.evidence.push_back("Q: components form several w-orbits");
    } else {
      std::string X = comp_sub[0].system.label();
      BigInt qd = ipow(q, dlen);
      IMat Bd = IMat::identity(R.rank());
      for (int i = 0; i < dlen; ++i) Bd = Bd * B;
      bool twisted = !detail::acts_inner(R, comp_sub[0], Bd);
      std::string tag = X + (twisted ? " twisted" : "") + " over q^" + std::to_string(dlen) + "=" + qd.str();
      if ((X == "A1" && (qd == 2 || qd == 3)) || (X == "A2" && qd == 2 && twisted)) {
        rep.q = Tri::Fails;
        rep.evidence.push_back("Q: excluded pair " + tag);
      } else if (X == "B2" && qd == 2) {
        rep.q = Tri::Holds;
        rep.evidence.push_back("Q: B2 at q=2, derived group A6");
      } else if (X == "G2" && qd == 2) {
        rep.q = Tri::Undetermined;
        rep.evidence.push_back("Q: G2 at q=2 not covered");
      } else {
        rep.q = Tri::Holds;
        rep.evidence.push_back("Q: " + tag);
      }
    }
  }

  // N
  auto kills = [&](const TorusElement& x) {
    for (const auto& g : PhiM)
      if (!root_eval(R, g, x).is_one()) return false;
    return true;
  };
  bool sc = detail::is_levi(R, S) || detail::is_all_long(R, S);
  bool inner = detail::acts_inner(R, S, B);
  if (kills(t)) {
    rep.n = Tri::Fails;
    rep.evidence.push_back("N: every root of the subsystem is trivial on t");
  } else if (sc && inner) {
    rep.n = Tri::Holds;
    rep.evidence.push_back("N: some root of the subsystem is nontrivial on t");
  } else {
    rep.n = Tri::Undetermined;
    rep.evidence.push_back(std::string("N: ") + (sc ? "" : "[M,M] not known simply connected; ") +
                           (inner ? "" : "w acts by an outer automorphism"));
  }

  // W
  try {
    std::vector<IMat> CW;
    for (const auto& u : enumerate_weyl(R, opt.weyl_cap))
      if (u * B == B * u) CW.push_back(u);
    std::vector<IMat> sgen;
    for (const auto& b : S.base) sgen.push_back(R.reflection(b));
    std::vector<IMat> CWM;
    for (const auto& u : detail::weyl_closure(sgen, R.rank(), opt.weyl_cap))
      if (u * B == B * u) CWM.push_back(u);
    auto Z = center_elements(R, q, t.N);
    std::set<TorusElement> orbit, inner_orbit;
    for (const auto& u : CW) orbit.insert(weyl_act_matrix(u, t));
    for (const auto& u : CWM) {
      TorusElement y = weyl_act_matrix(u, t);
      for (const auto& z : Z) inner_orbit.insert(z * y);
    }
    std::size_t count = 0;
    for (const auto& x : orbit)
      if (!inner_orbit.count(x) && !kills(x)) ++count;
    rep.w = count ? Tri::Holds : Tri::Fails;
    rep.evidence.push_back("W: |Cent_W(w).t|=" + std::to_string(orbit.size()) +
                           ", |Z.Cent_WM(w).t|=" + std::to_string(inner_orbit.size()) +
                           ", difference=" + std::to_string(count));
  } catch (const CapExceeded&) {
    rep.w = Tri::Undetermined;
    rep.evidence.push_back("W: Weyl group too large to enumerate");
  }
  return rep;
}

}  // namespace rc
