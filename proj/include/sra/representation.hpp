#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/axioms.hpp"
#include "sra/element_props.hpp"
#include "sra/report.hpp"
#include "sra/symbolic.hpp"
#include "sra/zoo.hpp"

namespace sra {

/// Points p with: for all points q and non-⊥ ideals x, qx ⊑ p implies q ⊑ p.
/// Sorted by carrier index.
inline std::vector<ElementId> ideal_points(const FiniteAlgebra& a) {
  const auto pts = points(a);
  const auto ids = ideals(a);
  std::vector<ElementId> out;
  for (auto p : pts)
    if (is_ideal_point(a, p, pts, ids)) out.push_back(p);
  return out;
}

/// The other characterisation: p is a point and each point q lies below p or ¬p.
inline std::vector<ElementId> ideal_points_by_separation(const FiniteAlgebra& a) {
  const auto pts = points(a);
  std::vector<ElementId> out;
  for (auto p : pts) {
    bool ok = true;
    for (auto q : pts)
      if (!a.leq(q, p) && !a.leq(q, a.pcomp(p))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  }
  return out;
}

[[noreturn]] inline std::vector<ElementId> ideal_points(const SymbolicAlgebra& a) { a.enumerate(); }

/// IP(S) is non-empty and joins to ⊤ (finiteness is automatic here).
inline bool satisfies_point_axiom(const FiniteAlgebra& a) {
  auto ip = ideal_points(a);
  return !ip.empty() && big_sup(a, ip) == a.top();
}

[[noreturn]] inline bool satisfies_point_axiom(const SymbolicAlgebra& a) { a.enumerate(); }

namespace detail {

inline void require_point_axiom(const FiniteAlgebra& a) {
  require_sra(a);
  if (!satisfies_point_axiom(a)) throw PreconditionError("'" + a.name() + "' does not satisfy the point axiom");
}

}  // namespace detail

/// Closure and equational properties of ideals, items 1 to 8.
inline Report verify_ideal_theorem(const FiniteAlgebra& a) {
  require_sra(a);
  const auto ids = ideals(a);
  std::vector<char> ideal(a.size(), 0);
  for (auto x : ids) ideal[x.index] = 1;
  auto is_id = [&](ElementId x) { return ideal[x.index] != 0; };
  std::vector<ElementId> vecs = filter(a, [](const FiniteAlgebra& b, ElementId x) { return is_vector(b, x); });
  Report r{"ideals", {}};

  add_check(r, "ideals-1", find_violation(a, [&](auto x) { return is_ideal(a, x) == is_id(x); }));
  {
    std::optional<Tuple> w;
    for (auto x : vecs) {
      for (auto y : a.ids()) {
        for (auto z : vecs)
          if (!is_id(a.comp(a.conv(x), y, z))) {
            w = Tuple{x, y, z};
            break;
          }
        if (w) break;
      }
      if (w) break;
    }
    add_check(r, "ideals-2", w);
  }
  {
    std::optional<Tuple> w;
    for (auto x : ids) {
      if (!is_id(a.conv(x)) || !is_id(a.pcomp(x))) w = Tuple{x};
      for (auto y : ids) {
        if (w) break;
        if (!is_id(a.comp(x, y)) || !is_id(a.join(x, y)) || !is_id(a.meet(x, y))) w = Tuple{x, y};
      }
      if (w) break;
    }
    add_check(r, "ideals-3", w);
  }
  add_check(r, "ideals-4", !is_id(a.bot())   ? std::optional<Tuple>(Tuple{a.bot()})
                           : !is_id(a.top()) ? std::optional<Tuple>(Tuple{a.top()})
                                             : std::nullopt);
  add_check(r, "ideals-5", find_violation2(a, [&](auto x, auto y) {
              return !is_id(x) || !is_id(y) || a.comp(x, y) == a.meet(x, y);
            }));
  {
    // I(S) with · = ⊓ and 1 = ⊤.
    std::vector<std::uint32_t> local(a.size(), 0);
    for (std::uint32_t i = 0; i < ids.size(); ++i) local[ids[i].index] = i;
    std::vector<std::string> names;
    for (auto x : ids) names.push_back(a.name_of(x));
    auto at = [&](std::uint32_t i) { return ids[i]; };
    auto t = detail::tabulate(
        "I(" + a.name() + ")", std::move(names), local[a.bot().index], local[a.top().index], local[a.top().index],
        [&](auto x, auto y) { return local[a.join(at(x), at(y)).index]; },
        [&](auto x, auto y) { return local[a.meet(at(x), at(y)).index]; },
        [&](auto x, auto y) { return local[a.meet(at(x), at(y)).index]; },
        [&](auto x) { return local[a.conv(at(x)).index]; }, [&](auto x) { return local[a.pcomp(at(x)).index]; });
    AxiomReport sub = check_sra(FiniteAlgebra::from_tables(t));
    if (sub.passed()) {
      r.add("ideals-6", Verdict::pass);
    } else {
      Tuple w;
      for (auto i : *sub.first_failure()->witness) w.push_back(ids[i.index]);
      r.add("ideals-6", Verdict::fail, std::move(w), "law '" + sub.first_failure()->law + "'");
    }
  }
  add_check(r, "ideals-7", find_violation(a, [&](auto x) { return !is_id(x) || a.conv(x) == x; }));
  {
    std::optional<Tuple> w;
    for (auto x : ids) {
      w = find_violation2(a, [&](auto y, auto z) {
        return a.meet(a.comp(y, z), x) == a.comp(a.meet(y, x), a.meet(z, x));
      });
      if (w) {
        w->insert(w->begin(), x);
        break;
      }
    }
    add_check(r, "ideals-8", w);
  }
  return r;
}

/// Items 1 to 3 on ideal-points.
inline Report verify_ideal_point_theorem(const FiniteAlgebra& a) {
  require_sra(a);
  const auto ip = ideal_points(a);
  Report r{"ideal-points", {}};
  {
    std::optional<Tuple> w;
    for (auto p : ip) {
      for (auto q : ip)
        if (p != q && (a.meet(p, q) != a.bot() || a.comp(a.conv(p), q) != a.bot())) {
          w = Tuple{p, q};
          break;
        }
      if (w) break;
    }
    add_check(r, "ideal-points-1", w);
  }
  if (!is_simple_algebra(a)) {
    r.add("ideal-points-2", Verdict::vacuous, {}, "not simple");
  } else {
    std::optional<Tuple> w;
    for (auto p : points(a))
      if (!std::binary_search(ip.begin(), ip.end(), p)) {
        w = Tuple{p};
        break;
      }
    add_check(r, "ideal-points-2", w);
  }
  {
    const auto other = ideal_points_by_separation(a);
    std::optional<Tuple> w;
    for (auto p : points(a))
      if (std::binary_search(ip.begin(), ip.end(), p) != std::binary_search(other.begin(), other.end(), p)) {
        w = Tuple{p};
        break;
      }
    add_check(r, "ideal-points-3", w);
  }
  return r;
}

/// Items 1 to 4 of the point axiom's consequences.
/// Throws PreconditionError unless the point axiom holds.
inline Report verify_point_axiom_consequences(const FiniteAlgebra& a) {
  detail::require_point_axiom(a);
  const auto ip = ideal_points(a);
  Report r{"point axiom consequences", {}};
  std::vector<ElementId> ppt;
  for (auto p : ip) ppt.push_back(a.comp(p, a.conv(p)));
  add_check(r, "point-axiom-1", big_sup(a, ppt) == a.one() ? std::nullopt : std::optional<Tuple>(Tuple{}));
  add_check(r, "point-axiom-2", find_violation(a, [&](auto x) {
              ElementId s = a.bot();
              for (auto pp : ppt)
                for (auto qq : ppt) s = a.join(s, a.comp(pp, x, qq));
              return s == x;
            }));
  add_check(r, "point-axiom-3", find_violation(a, [&](auto x) {
              if (!is_atom(a, x)) return true;
              return std::any_of(ip.begin(), ip.end(), [&](ElementId p) { return a.leq(x, p); });
            }));
  add_check(r, "point-axiom-4", find_violation(a, [&](auto p) {
              return !is_point(a, p) || std::binary_search(ip.begin(), ip.end(), p);
            }));
  return r;
}

/// A square matrix over IP(S) with ideal entries, row-major.
struct IdealMatrix {
  std::size_t order = 0;
  std::vector<ElementId> entries;

  ElementId at(std::size_t p, std::size_t q) const { return entries.at(p * order + q); }
  friend bool operator==(const IdealMatrix&, const IdealMatrix&) = default;
};

/// M(S) materialised as a FiniteAlgebra together with its index data.
struct MatrixModel {
  FiniteAlgebra algebra;
  std::vector<ElementId> ideal_points;  // index order
  std::vector<ElementId> ideals;        // digit order

  /// Element of `algebra` holding X.
  ElementId encode(const IdealMatrix& x) const {
    std::uint32_t code = 0;
    for (auto e : x.entries) {
      auto it = std::lower_bound(ideals.begin(), ideals.end(), e);
      if (it == ideals.end() || *it != e) throw InputError("matrix entry is not an ideal");
      code = code * static_cast<std::uint32_t>(ideals.size()) + static_cast<std::uint32_t>(it - ideals.begin());
    }
    return ElementId{code};
  }

  IdealMatrix decode(ElementId x) const {
    const std::size_t k = ideal_points.size(), cells = k * k, m = ideals.size();
    IdealMatrix out{k, std::vector<ElementId>(cells)};
    std::uint32_t code = x.index;
    for (std::size_t c = cells; c-- > 0;) {
      out.entries[c] = ideals[code % m];
      code /= static_cast<std::uint32_t>(m);
    }
    return out;
  }
};

/// Largest carrier build_M will tabulate.
inline constexpr std::size_t kMatrixModelBudget = 4096;

inline MatrixModel build_M(const FiniteAlgebra& a) {
  detail::require_point_axiom(a);
  const auto ip = ideal_points(a);
  const auto ids = ideals(a);
  const std::size_t k = ip.size(), cells = k * k, m = ids.size();
  std::size_t size = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    size *= m;
    if (size > kMatrixModelBudget)
      throw BudgetExceeded("M(" + a.name() + ") would have " + std::to_string(m) + "^" + std::to_string(cells) +
                           " elements; the limit is " + std::to_string(kMatrixModelBudget));
  }
  std::vector<std::uint32_t> local(a.size(), 0);
  for (std::uint32_t i = 0; i < m; ++i) local[ids[i].index] = i;

  // digits[x * cells + c]: local ideal index of cell c of matrix x.
  std::vector<std::uint32_t> digits(size * cells);
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t code = x;
    for (std::size_t c = cells; c-- > 0;) {
      digits[x * cells + c] = static_cast<std::uint32_t>(code % m);
      code /= m;
    }
  }
  auto cell = [&](std::uint32_t x, std::size_t c) { return ids[digits[x * cells + c]]; };
  auto build = [&](auto&& entry) {
    std::uint32_t code = 0;
    for (std::size_t c = 0; c < cells; ++c) code = code * static_cast<std::uint32_t>(m) + local[entry(c).index];
    return code;
  };

  std::vector<std::string> names;
  for (std::uint32_t x = 0; x < size; ++x) {
    std::string s = "[";
    for (std::size_t p = 0; p < k; ++p) {
      s += p ? ",[" : "[";
      for (std::size_t q = 0; q < k; ++q) s += (q ? "," : "") + a.name_of(cell(x, p * k + q));
      s += "]";
    }
    names.push_back(s + "]");
  }
  const std::uint32_t bot = build([&](std::size_t) { return a.bot(); });
  const std::uint32_t top = build([&](std::size_t) { return a.top(); });
  const std::uint32_t one = build([&](std::size_t c) { return c / k == c % k ? a.top() : a.bot(); });

  auto t = detail::tabulate(
      "M(" + a.name() + ")", std::move(names), bot, top, one,
      [&](std::uint32_t x, std::uint32_t y) { return build([&](std::size_t c) { return a.join(cell(x, c), cell(y, c)); }); },
      [&](std::uint32_t x, std::uint32_t y) { return build([&](std::size_t c) { return a.meet(cell(x, c), cell(y, c)); }); },
      [&](std::uint32_t x, std::uint32_t y) {
        return build([&](std::size_t c) {
          const std::size_t p = c / k, q = c % k;
          ElementId s = a.bot();
          for (std::size_t r = 0; r < k; ++r) s = a.join(s, a.meet(cell(x, p * k + r), cell(y, r * k + q)));
          return s;
        });
      },
      [&](std::uint32_t x) { return build([&](std::size_t c) { return cell(x, (c % k) * k + c / k); }); },
      [&](std::uint32_t x) { return build([&](std::size_t c) { return a.pcomp(cell(x, c)); }); });
  return MatrixModel{FiniteAlgebra::from_tables(t), ip, ids};
}

/// f(x)_pq = pᵀxq.
inline IdealMatrix repr_f(const FiniteAlgebra& a, const std::vector<ElementId>& ip, ElementId x) {
  const std::size_t k = ip.size();
  IdealMatrix out{k, {}};
  for (auto p : ip)
    for (auto q : ip) out.entries.push_back(a.comp(a.conv(p), x, q));
  return out;
}

inline IdealMatrix repr_f(const FiniteAlgebra& a, ElementId x) {
  detail::require_point_axiom(a);
  return repr_f(a, ideal_points(a), x);
}

/// g(X) = ⨆ p X_pq qᵀ.
inline ElementId repr_g(const FiniteAlgebra& a, const std::vector<ElementId>& ip, const IdealMatrix& x) {
  if (x.order != ip.size() || x.entries.size() != ip.size() * ip.size())
    throw InputError("matrix order does not match the number of ideal-points");
  ElementId s = a.bot();
  for (std::size_t p = 0; p < ip.size(); ++p)
    for (std::size_t q = 0; q < ip.size(); ++q) s = a.join(s, a.comp(ip[p], x.at(p, q), a.conv(ip[q])));
  return s;
}

inline ElementId repr_g(const FiniteAlgebra& a, const IdealMatrix& x) {
  detail::require_point_axiom(a);
  return repr_g(a, ideal_points(a), x);
}

/// M(S) is a Stone relation algebra and f, g are mutually inverse maps
/// preserving every operation, constant and the order.
inline Report verify_representation(const FiniteAlgebra& a, const MatrixModel& model) {
  const FiniteAlgebra& m = model.algebra;
  const auto& ip = model.ideal_points;
  Report r{"representation", {}};
  {
    AxiomReport sra = check_sra(m);
    if (sra.passed())
      r.add("M-sra", Verdict::pass);
    else
      r.add("M-sra", Verdict::fail, *sra.first_failure()->witness, "law '" + sra.first_failure()->law + "'");
  }
  std::vector<ElementId> f(a.size());
  for (auto x : a.ids()) f[x.index] = model.encode(repr_f(a, ip, x));
  std::vector<ElementId> g(m.size());
  for (auto x : m.ids()) g[x.index] = repr_g(a, ip, model.decode(x));
  auto F = [&](ElementId x) { return f[x.index]; };
  auto G = [&](ElementId x) { return g[x.index]; };

  add_check(r, "g-after-f", find_violation(a, [&](auto x) { return G(F(x)) == x; }));
  add_check(r, "f-after-g", find_violation(m, [&](auto x) { return F(G(x)) == x; }));
  add_check(r, "f-bot", F(a.bot()) == m.bot() ? std::nullopt : std::optional<Tuple>(Tuple{a.bot()}));
  add_check(r, "f-top", F(a.top()) == m.top() ? std::nullopt : std::optional<Tuple>(Tuple{a.top()}));
  add_check(r, "f-one", F(a.one()) == m.one() ? std::nullopt : std::optional<Tuple>(Tuple{a.one()}));
  add_check(r, "f-join", find_violation2(a, [&](auto x, auto y) { return F(a.join(x, y)) == m.join(F(x), F(y)); }));
  add_check(r, "f-meet", find_violation2(a, [&](auto x, auto y) { return F(a.meet(x, y)) == m.meet(F(x), F(y)); }));
  add_check(r, "f-comp", find_violation2(a, [&](auto x, auto y) { return F(a.comp(x, y)) == m.comp(F(x), F(y)); }));
  add_check(r, "f-conv", find_violation(a, [&](auto x) { return F(a.conv(x)) == m.conv(F(x)); }));
  add_check(r, "f-pcomp", find_violation(a, [&](auto x) { return F(a.pcomp(x)) == m.pcomp(F(x)); }));
  add_check(r, "f-order", find_violation2(a, [&](auto x, auto y) { return a.leq(x, y) == m.leq(F(x), F(y)); }));
  add_check(r, "g-bot", G(m.bot()) == a.bot() ? std::nullopt : std::optional<Tuple>(Tuple{m.bot()}));
  add_check(r, "g-top", G(m.top()) == a.top() ? std::nullopt : std::optional<Tuple>(Tuple{m.top()}));
  add_check(r, "g-one", G(m.one()) == a.one() ? std::nullopt : std::optional<Tuple>(Tuple{m.one()}));
  add_check(r, "g-join", find_violation2(m, [&](auto x, auto y) { return G(m.join(x, y)) == a.join(G(x), G(y)); }));
  add_check(r, "g-meet", find_violation2(m, [&](auto x, auto y) { return G(m.meet(x, y)) == a.meet(G(x), G(y)); }));
  add_check(r, "g-comp", find_violation2(m, [&](auto x, auto y) { return G(m.comp(x, y)) == a.comp(G(x), G(y)); }));
  add_check(r, "g-conv", find_violation(m, [&](auto x) { return G(m.conv(x)) == a.conv(G(x)); }));
  add_check(r, "g-pcomp", find_violation(m, [&](auto x) { return G(m.pcomp(x)) == a.pcomp(G(x)); }));
  return r;
}

inline Report verify_representation(const FiniteAlgebra& a) { return verify_representation(a, build_M(a)); }

}  // namespace sra
