#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/axioms.hpp"
#include "sra/report.hpp"
#include "sra/symbolic.hpp"

namespace sra {

// Element predicates, all read directly off their defining (in)equalities.

inline bool is_univalent(const FiniteAlgebra& a, ElementId x) { return a.leq(a.comp(a.conv(x), x), a.one()); }
inline bool is_total(const FiniteAlgebra& a, ElementId x) { return a.leq(a.one(), a.comp(x, a.conv(x))); }
inline bool is_mapping(const FiniteAlgebra& a, ElementId x) { return is_univalent(a, x) && is_total(a, x); }
inline bool is_injective(const FiniteAlgebra& a, ElementId x) { return a.leq(a.comp(x, a.conv(x)), a.one()); }
inline bool is_surjective(const FiniteAlgebra& a, ElementId x) { return a.leq(a.one(), a.comp(a.conv(x), x)); }
inline bool is_bijective(const FiniteAlgebra& a, ElementId x) { return is_injective(a, x) && is_surjective(a, x); }
inline bool is_vector(const FiniteAlgebra& a, ElementId x) { return a.comp(x, a.top()) == x; }
inline bool is_covector(const FiniteAlgebra& a, ElementId x) { return a.comp(a.top(), x) == x; }
inline bool is_point(const FiniteAlgebra& a, ElementId x) { return is_bijective(a, x) && is_vector(a, x); }
inline bool is_rectangle(const FiniteAlgebra& a, ElementId x) { return a.leq(a.comp(x, a.top(), x), x); }
inline bool is_simple(const FiniteAlgebra& a, ElementId x) { return a.comp(a.top(), x, a.top()) == a.top(); }
inline bool is_ideal(const FiniteAlgebra& a, ElementId x) { return is_vector(a, x) && is_covector(a, x); }
inline bool is_regular(const FiniteAlgebra& a, ElementId x) { return a.pcomp(a.pcomp(x)) == x; }

/// x ≠ ⊥ and no y with ⊥ ≠ y ⊏ x. Scans the carrier.
inline bool is_atom(const FiniteAlgebra& a, ElementId x) {
  if (x == a.bot()) return false;
  for (auto y : a.ids())
    if (y != a.bot() && y != x && a.leq(y, x)) return false;
  return true;
}

inline std::vector<ElementId> filter(const FiniteAlgebra& a, auto&& pred) {
  std::vector<ElementId> out;
  for (auto x : a.ids())
    if (pred(a, x)) out.push_back(x);
  return out;
}

inline std::vector<ElementId> atoms(const FiniteAlgebra& a) {
  return filter(a, [](const FiniteAlgebra& b, ElementId x) { return is_atom(b, x); });
}
inline std::vector<ElementId> points(const FiniteAlgebra& a) {
  return filter(a, [](const FiniteAlgebra& b, ElementId x) { return is_point(b, x); });
}
inline std::vector<ElementId> univalents(const FiniteAlgebra& a) {
  return filter(a, [](const FiniteAlgebra& b, ElementId x) { return is_univalent(b, x); });
}
/// Elements with ⊤x⊤ = x; equal to the vector-and-covector elements in any
/// Stone relation algebra.
inline std::vector<ElementId> ideals(const FiniteAlgebra& a) {
  return filter(a, [](const FiniteAlgebra& b, ElementId x) { return b.comp(b.top(), x, b.top()) == x; });
}

/// p is a point and, for all points q and non-⊥ ideals x, qx ⊑ p implies q ⊑ p.
inline bool is_ideal_point(const FiniteAlgebra& a, ElementId p, const std::vector<ElementId>& all_points,
                           const std::vector<ElementId>& all_ideals) {
  if (!is_point(a, p)) return false;
  for (auto q : all_points)
    for (auto x : all_ideals)
      if (x != a.bot() && a.leq(a.comp(q, x), p) && !a.leq(q, p)) return false;
  return true;
}

inline bool is_ideal_point(const FiniteAlgebra& a, ElementId p) {
  return is_ideal_point(a, p, points(a), ideals(a));
}

/// Every element except ⊥ is simple.
inline bool is_simple_algebra(const FiniteAlgebra& a) {
  for (auto x : a.ids())
    if (x != a.bot() && !is_simple(a, x)) return false;
  return true;
}

struct ElementProfile {
  bool univalent = false;
  bool total = false;
  bool mapping = false;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  bool vector = false;
  bool covector = false;
  bool point = false;
  bool rectangle = false;
  bool simple = false;
  bool atom = false;
  bool ideal = false;
  bool ideal_point = false;
  bool regular = false;

  friend bool operator==(const ElementProfile&, const ElementProfile&) = default;
};

/// Flag names in the order used by reports and the search predicate language.
inline constexpr std::array<std::pair<std::string_view, bool ElementProfile::*>, 15> kProfileFlags{{
    {"univalent", &ElementProfile::univalent},
    {"total", &ElementProfile::total},
    {"mapping", &ElementProfile::mapping},
    {"injective", &ElementProfile::injective},
    {"surjective", &ElementProfile::surjective},
    {"bijective", &ElementProfile::bijective},
    {"vector", &ElementProfile::vector},
    {"covector", &ElementProfile::covector},
    {"point", &ElementProfile::point},
    {"rectangle", &ElementProfile::rectangle},
    {"simple", &ElementProfile::simple},
    {"atom", &ElementProfile::atom},
    {"ideal", &ElementProfile::ideal},
    {"ideal-point", &ElementProfile::ideal_point},
    {"regular", &ElementProfile::regular},
}};

/// Computes profiles for many elements of one algebra, enumerating points
/// and ideals once.
class Profiler {
 public:
  explicit Profiler(const FiniteAlgebra& a) : a_(a), points_(sra::points(a)), ideals_(sra::ideals(a)) {}

  ElementProfile operator()(ElementId x) const {
    a_.require(x);
    ElementProfile p;
    p.univalent = is_univalent(a_, x);
    p.total = is_total(a_, x);
    p.mapping = p.univalent && p.total;
    p.injective = is_injective(a_, x);
    p.surjective = is_surjective(a_, x);
    p.bijective = p.injective && p.surjective;
    p.vector = is_vector(a_, x);
    p.covector = is_covector(a_, x);
    p.point = p.bijective && p.vector;
    p.rectangle = is_rectangle(a_, x);
    p.simple = is_simple(a_, x);
    p.atom = is_atom(a_, x);
    p.ideal = p.vector && p.covector;
    p.ideal_point = p.point && is_ideal_point(a_, x, points_, ideals_);
    p.regular = is_regular(a_, x);
    return p;
  }

  const std::vector<ElementId>& points() const noexcept { return points_; }
  const std::vector<ElementId>& ideals() const noexcept { return ideals_; }

 private:
  const FiniteAlgebra& a_;
  std::vector<ElementId> points_;
  std::vector<ElementId> ideals_;
};

inline ElementProfile profile(const FiniteAlgebra& a, ElementId x) { return Profiler(a)(x); }

/// The flags that are decidable per element on the symbolic model.
struct SymbolicProfile {
  bool atom = false;
  bool vector = false;
  bool covector = false;
  bool ideal = false;
};

inline SymbolicProfile profile(const SymbolicAlgebra& a, SymElem x) {
  return {a.is_atom(x), a.is_vector(x), a.is_covector(x), a.is_ideal(x)};
}

[[noreturn]] inline std::vector<ElementId> atoms(const SymbolicAlgebra& a) { a.enumerate(); }
[[noreturn]] inline std::vector<ElementId> points(const SymbolicAlgebra& a) { a.enumerate(); }
[[noreturn]] inline bool is_simple_algebra(const SymbolicAlgebra& a) { a.enumerate(); }

/// Subsets of `points` with more than this many members are sampled.
inline constexpr std::size_t kSubsetCap = 12;

/// All non-empty subsets when the set is small; otherwise all singletons,
/// all pairs and the full set. The flag reports whether sampling happened.
inline std::pair<std::vector<std::vector<ElementId>>, bool> nonempty_subsets(const std::vector<ElementId>& set) {
  std::vector<std::vector<ElementId>> out;
  const std::size_t k = set.size();
  if (k <= kSubsetCap) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<ElementId> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1u) s.push_back(set[i]);
      out.push_back(std::move(s));
    }
    return {out, false};
  }
  for (std::size_t i = 0; i < k; ++i) out.push_back({set[i]});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out.push_back({set[i], set[j]});
  out.push_back(set);
  return {out, true};
}

/// Instantiates the fourteen basic properties of Stone relation algebras
/// over every applicable element, pair, triple and point subset.
/// Throws PreconditionError unless the algebra passes check_sra.
inline Report verify_basic_theorem(const FiniteAlgebra& a) {
  require_sra(a);
  detail::require_cubic(a);
  Report r{"basic properties", {}};
  const ElementId bot = a.bot(), top = a.top(), one = a.one();

  std::vector<char> atom(a.size());
  for (auto x : a.ids()) atom[x.index] = is_atom(a, x);
  auto pts = points(a);

  add_check(r, "basic-1", find_violation2(a, [&](auto x, auto y) {
              return !is_vector(a, x) || ((a.meet(x, y) == bot) == (a.comp(a.conv(x), y) == bot));
            }));
  add_check(r, "basic-2", find_violation(a, [&](auto x) {
              return !(is_vector(a, x) && is_surjective(a, x)) || a.comp(a.conv(x), x) == top;
            }));
  {
    auto [subsets, sampled] = nonempty_subsets(pts);
    std::optional<Tuple> w;
    for (const auto& p : subsets) {
      std::vector<ElementId> ppt;
      for (auto q : p) ppt.push_back(a.comp(q, a.conv(q)));
      if ((big_sup(a, p) == top) != (big_sup(a, ppt) == one)) {
        w = p;
        break;
      }
    }
    if (pts.empty())
      r.add("basic-3", Verdict::pass, {}, "no points");
    else if (w || !sampled)
      add_check(r, "basic-3", w);
    else
      r.add("basic-3", Verdict::bounded, {}, "point subsets sampled (singletons, pairs, full set)");
  }
  add_check(r, "basic-4", find_violation(a, [&](auto p) {
              return !is_point(a, p) || a.comp(p, a.conv(p)) == a.meet(p, one);
            }));
  add_check(r, "basic-5", find_violation2(a, [&](auto p, auto x) {
              return !is_point(a, p) || !a.leq(x, p) || x == a.comp(p, a.conv(p), x);
            }));
  add_check(r, "basic-6", find_violation(a, [&](auto x) {
              auto d1 = a.meet(one, a.comp(x, top));
              auto d2 = a.meet(one, a.comp(x, a.conv(x)));
              auto d3 = a.meet(one, a.comp(top, a.conv(x)));
              return d1 == d2 && d2 == d3;
            }));
  {
    std::vector<char> univ(a.size()), inj(a.size());
    for (auto x : a.ids()) {
      univ[x.index] = is_univalent(a, x);
      inj[x.index] = is_injective(a, x);
    }
    add_check(r, "basic-7", find_violation3(a, [&](auto x, auto y, auto z) {
                return !univ[y.index] ||
                       a.meet(a.comp(x, y), z) == a.comp(a.meet(x, a.comp(z, a.conv(y))), y);
              }));
    add_check(r, "basic-8", find_violation3(a, [&](auto x, auto y, auto z) {
                return !inj[x.index] ||
                       a.meet(a.comp(x, y), z) == a.comp(x, a.meet(y, a.comp(a.conv(x), z)));
              }));
  }
  add_check(r, "basic-9", find_violation(a, [&](auto x) { return atom[x.index] == atom[a.conv(x).index]; }));
  add_check(r, "basic-10", find_violation(a, [&](auto x) {
              return !atom[x.index] || (atom[a.meet(a.comp(x, top), one).index] &&
                                        atom[a.meet(a.comp(top, x), one).index]);
            }));
  add_check(r, "basic-11", find_violation2(a, [&](auto x, auto y) {
              return !atom[x.index] || !atom[y.index] || x == y || a.meet(x, y) == bot;
            }));
  add_check(r, "basic-12", find_violation2(a, [&](auto x, auto y) {
              return !atom[x.index] || (a.leq(x, y) != a.leq(x, a.pcomp(y)));
            }));
  add_check(r, "basic-13", find_violation3(a, [&](auto x, auto y, auto z) {
              return !atom[x.index] || a.leq(x, a.join(y, z)) == (a.leq(x, y) || a.leq(x, z));
            }));
  add_check(r, "basic-14", find_violation3(a, [&](auto x, auto y, auto z) {
              return !atom[x.index] || a.meet(y, z) != bot || a.leq(x, a.join(y, z)) == (a.leq(x, y) != a.leq(x, z));
            }));
  return r;
}

}  // namespace sra
