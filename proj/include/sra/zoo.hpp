#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/symbolic.hpp"

namespace sra {

namespace detail {

using BinFn = std::function<std::uint32_t(std::uint32_t, std::uint32_t)>;
using UnFn = std::function<std::uint32_t(std::uint32_t)>;

inline AlgebraTables tabulate(std::string name, std::vector<std::string> elements, std::uint32_t bot,
                              std::uint32_t top, std::uint32_t one, const BinFn& join, const BinFn& meet,
                              const BinFn& comp, const UnFn& conv, const UnFn& pcomp) {
  AlgebraTables t;
  const auto n = static_cast<std::uint32_t>(elements.size());
  t.name = std::move(name);
  t.elements = std::move(elements);
  t.bot = bot;
  t.top = top;
  t.one = one;
  t.join.resize(std::size_t(n) * n);
  t.meet.resize(t.join.size());
  t.comp.resize(t.join.size());
  t.conv.resize(n);
  t.pcomp.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      std::size_t k = std::size_t(x) * n + y;
      t.join[k] = join(x, y);
      t.meet[k] = meet(x, y);
      t.comp[k] = comp(x, y);
    }
    t.conv[x] = conv(x);
    t.pcomp[x] = pcomp(x);
  }
  return t;
}

}  // namespace detail

/// All binary relations on an n-element base set {a, b, ...}, n in 1..4.
///
/// Relation r is element index r read as an n*n-bit word (bit i*n+j is the
/// pair (i,j)). Up to n = 3 the operations are tabulated; n = 4 (65 536
/// elements) computes them on the bit words and supports element-level
/// queries only.
inline FiniteAlgebra full_relation_algebra(unsigned n) {
  if (n < 1 || n > 4) throw InputError("full_relation_algebra: base size must be in 1..4, got " + std::to_string(n));
  std::string name = "FullRel(" + std::to_string(n) + ")";
  if (n == 4) return FiniteAlgebra::bit_relations(n, name);
  detail::BitRelations br{n};
  std::vector<std::string> names;
  for (std::uint32_t r = 0; r <= br.full(); ++r) names.push_back(br.name(r));
  return FiniteAlgebra::from_tables(detail::tabulate(
      name, names, 0, br.full(), br.identity(), [](auto x, auto y) { return x | y; },
      [](auto x, auto y) { return x & y; }, [&](auto x, auto y) { return br.compose(x, y); },
      [&](auto x) { return br.transpose(x); }, [&](auto x) { return ~x & br.full(); }));
}

/// The chain 0 < 1/2 < 1 with composition the meet, converse the identity,
/// ¬0 = 1 and ¬(1/2) = ¬1 = 0.
inline FiniteAlgebra chain3() {
  auto mx = [](std::uint32_t x, std::uint32_t y) { return std::max(x, y); };
  auto mn = [](std::uint32_t x, std::uint32_t y) { return std::min(x, y); };
  return FiniteAlgebra::from_tables(detail::tabulate(
      "chain3", {"0", "1/2", "1"}, 0, 2, 2, mx, mn, mn, [](auto x) { return x; },
      [](auto x) { return x == 0 ? 2u : 0u; }));
}

/// n×n matrices over S with componentwise lattice operations and
/// pseudocomplement, max-min (join-of-meets) composition, transposed
/// converse, and the unit of S on the diagonal.
///
/// S must have composition equal to meet. Matrix index is the row-major
/// entry sequence read as a base-|S| numeral, first entry most significant.
/// The construction is only claimed for such S; callers verify the result
/// with check_sra.
inline FiniteAlgebra matrix_algebra(const FiniteAlgebra& s, unsigned n) {
  if (n < 1) throw InputError("matrix_algebra: dimension must be at least 1");
  for (auto x : s.ids())
    for (auto y : s.ids())
      if (s.comp(x, y) != s.meet(x, y))
        throw InputError("matrix_algebra: composition of '" + s.name() + "' is not the meet");
  const std::size_t k = std::size_t(n) * n;
  const std::size_t base = s.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= base;
    if (count > kCubicBudget)
      throw BudgetExceeded("matrix_algebra: " + std::to_string(base) + "^" + std::to_string(k) +
                           " elements exceed the carrier budget of " + std::to_string(kCubicBudget));
  }
  using Entries = std::vector<std::uint32_t>;
  auto decode = [&](std::uint32_t idx) {
    Entries e(k);
    for (std::size_t i = k; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(idx % base);
      idx = static_cast<std::uint32_t>(idx / base);
    }
    return e;
  };
  auto encode = [&](const Entries& e) {
    std::uint32_t idx = 0;
    for (auto v : e) idx = static_cast<std::uint32_t>(idx * base + v);
    return idx;
  };
  std::vector<Entries> mats(count);
  std::vector<std::string> names(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    mats[i] = decode(i);
    std::string nm = "[";
    for (unsigned r = 0; r < n; ++r) {
      nm += r ? ",[" : "[";
      for (unsigned c = 0; c < n; ++c) {
        if (c) nm += ',';
        nm += s.name_of({mats[i][r * n + c]});
      }
      nm += ']';
    }
    names[i] = nm + "]";
  }
  auto pointwise = [&](auto op) {
    return [&, op](std::uint32_t x, std::uint32_t y) {
      Entries e(k);
      for (std::size_t i = 0; i < k; ++i) e[i] = op(ElementId{mats[x][i]}, ElementId{mats[y][i]}).index;
      return encode(e);
    };
  };
  Entries unit(k, s.bot().index), full(k, s.top().index), zero(k, s.bot().index);
  for (unsigned i = 0; i < n; ++i) unit[i * n + i] = s.one().index;
  return FiniteAlgebra::from_tables(detail::tabulate(
      "matrix" + std::to_string(n) + "(" + s.name() + ")", names, encode(zero), encode(full), encode(unit),
      pointwise([&](ElementId a, ElementId b) { return s.join(a, b); }),
      pointwise([&](ElementId a, ElementId b) { return s.meet(a, b); }),
      [&](std::uint32_t x, std::uint32_t y) {
        Entries e(k);
        for (unsigned p = 0; p < n; ++p)
          for (unsigned q = 0; q < n; ++q) {
            ElementId acc = s.bot();
            for (unsigned r = 0; r < n; ++r)
              acc = s.join(acc, s.comp(ElementId{mats[x][p * n + r]}, ElementId{mats[y][r * n + q]}));
            e[p * n + q] = acc.index;
          }
        return encode(e);
      },
      [&](std::uint32_t x) {
        Entries e(k);
        for (unsigned p = 0; p < n; ++p)
          for (unsigned q = 0; q < n; ++q) e[p * n + q] = s.conv(ElementId{mats[x][q * n + p]}).index;
        return encode(e);
      },
      [&](std::uint32_t x) {
        Entries e(k);
        for (std::size_t i = 0; i < k; ++i) e[i] = s.pcomp(ElementId{mats[x][i]}).index;
        return encode(e);
      }));
}

/// Cartesian product with componentwise operations; (a, b) has index a*|B| + b.
inline FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const std::size_t n = a.size() * b.size();
  if (n > kTableLimit) throw BudgetExceeded("product: " + std::to_string(n) + " elements exceed the table limit");
  const auto nb = static_cast<std::uint32_t>(b.size());
  std::vector<std::string> names;
  names.reserve(n);
  for (auto x : a.ids())
    for (auto y : b.ids()) names.push_back("(" + a.name_of(x) + "," + b.name_of(y) + ")");
  auto pair = [nb](ElementId x, ElementId y) { return x.index * nb + y.index; };
  auto fst = [nb](std::uint32_t i) { return ElementId{i / nb}; };
  auto snd = [nb](std::uint32_t i) { return ElementId{i % nb}; };
  return FiniteAlgebra::from_tables(detail::tabulate(
      a.name() + "x" + b.name(), std::move(names), pair(a.bot(), b.bot()), pair(a.top(), b.top()),
      pair(a.one(), b.one()),
      [&](auto x, auto y) { return pair(a.join(fst(x), fst(y)), b.join(snd(x), snd(y))); },
      [&](auto x, auto y) { return pair(a.meet(fst(x), fst(y)), b.meet(snd(x), snd(y))); },
      [&](auto x, auto y) { return pair(a.comp(fst(x), fst(y)), b.comp(snd(x), snd(y))); },
      [&](auto x) { return pair(a.conv(fst(x)), b.conv(snd(x))); },
      [&](auto x) { return pair(a.pcomp(fst(x)), b.pcomp(snd(x))); }));
}

/// {0, 1/2, 1} × {0, 1} ordered componentwise, with pseudocomplement taken
/// from chain3 and the Boolean algebra, converse the identity, unit (0,1),
/// and composition: ⊥ is a zero, (0,1) a unit, ⊤ otherwise.
/// Element (c, b) has index 2c + b.
inline FiniteAlgebra r6() {
  constexpr std::uint32_t bot = 0, one = 1, top = 5;
  auto c = [](std::uint32_t i) { return i / 2; };
  auto b = [](std::uint32_t i) { return i % 2; };
  auto mk = [](std::uint32_t ci, std::uint32_t bi) { return ci * 2 + bi; };
  return FiniteAlgebra::from_tables(detail::tabulate(
      "r6", {"(0,0)", "(0,1)", "(1/2,0)", "(1/2,1)", "(1,0)", "(1,1)"}, bot, top, one,
      [&](auto x, auto y) { return mk(std::max(c(x), c(y)), std::max(b(x), b(y))); },
      [&](auto x, auto y) { return mk(std::min(c(x), c(y)), std::min(b(x), b(y))); },
      [&](auto x, auto y) -> std::uint32_t {
        if (x == bot || y == bot) return bot;
        if (x == one) return y;
        if (y == one) return x;
        return top;
      },
      [](auto x) { return x; }, [&](auto x) { return mk(c(x) == 0 ? 2u : 0u, 1u - b(x)); }));
}

/// The integers extended by ⊥ and ⊤; see SymbolicAlgebra.
inline SymbolicAlgebra int_chain() { return SymbolicAlgebra{}; }

/// Least subset containing `seed` and the constants that is closed under all
/// operations, sorted by index; nullopt once it grows beyond `limit`.
inline std::optional<std::vector<ElementId>> closure(const FiniteAlgebra& a, std::span<const ElementId> seed,
                                                     std::size_t limit = SIZE_MAX) {
  std::vector<char> in(a.size(), 0);
  std::vector<ElementId> members;
  bool overflow = false;
  auto add = [&](ElementId e) {
    if (in[e.index]) return;
    in[e.index] = 1;
    members.push_back(e);
    if (members.size() > limit) overflow = true;
  };
  add(a.bot());
  add(a.top());
  add(a.one());
  for (auto g : seed) {
    a.require(g);
    add(g);
  }
  for (std::size_t i = 0; i < members.size() && !overflow; ++i) {
    const ElementId x = members[i];
    add(a.conv(x));
    add(a.pcomp(x));
    for (std::size_t j = 0; j <= i && !overflow; ++j) {
      const ElementId y = members[j];
      add(a.join(x, y));
      add(a.join(y, x));
      add(a.meet(x, y));
      add(a.meet(y, x));
      add(a.comp(x, y));
      add(a.comp(y, x));
    }
  }
  if (overflow) return std::nullopt;
  std::sort(members.begin(), members.end());
  return members;
}

/// A subalgebra re-indexed as a fresh algebra; parent[i] is the parent
/// element behind element i.
struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<ElementId> parent;

  ElementId to_parent(ElementId x) const { return parent.at(x.index); }
  std::optional<ElementId> from_parent(ElementId p) const {
    auto it = std::lower_bound(parent.begin(), parent.end(), p);
    if (it == parent.end() || *it != p) return std::nullopt;
    return ElementId{static_cast<std::uint32_t>(it - parent.begin())};
  }
};

/// Restricts `a` to a carrier already closed under all operations (sorted).
/// Elements keep their parent names.
inline Subalgebra induced_subalgebra(const FiniteAlgebra& a, std::vector<ElementId> carrier, std::string name) {
  std::vector<std::uint32_t> local(a.size(), UINT32_MAX);
  for (std::uint32_t i = 0; i < carrier.size(); ++i) local[carrier[i].index] = i;
  auto back = [&](ElementId e) {
    std::uint32_t l = local[e.index];
    if (l == UINT32_MAX) throw InputError("induced_subalgebra: carrier is not closed");
    return l;
  };
  std::vector<std::string> names;
  for (auto e : carrier) names.push_back(a.name_of(e));
  auto at = [&](std::uint32_t i) { return carrier[i]; };
  auto t = detail::tabulate(
      std::move(name), std::move(names), back(a.bot()), back(a.top()), back(a.one()),
      [&](auto x, auto y) { return back(a.join(at(x), at(y))); },
      [&](auto x, auto y) { return back(a.meet(at(x), at(y))); },
      [&](auto x, auto y) { return back(a.comp(at(x), at(y))); }, [&](auto x) { return back(a.conv(at(x))); },
      [&](auto x) { return back(a.pcomp(at(x))); });
  return Subalgebra{FiniteAlgebra::from_tables(t), std::move(carrier)};
}

/// Subalgebra generated by `gens` together with ⊥, ⊤ and 1.
inline Subalgebra subalgebra_generated(const FiniteAlgebra& a, std::span<const ElementId> gens) {
  auto carrier = *closure(a, gens);
  std::string label = "sub(" + a.name() + ";";
  for (std::size_t i = 0; i < gens.size(); ++i) label += (i ? "," : "") + a.name_of(gens[i]);
  return induced_subalgebra(a, std::move(carrier), label + ")");
}

inline Subalgebra subalgebra_generated(const FiniteAlgebra& a, std::initializer_list<ElementId> gens) {
  return subalgebra_generated(a, std::span<const ElementId>(gens.begin(), gens.size()));
}

}  // namespace sra
