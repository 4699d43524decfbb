#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/axioms.hpp"
#include "sra/card_value.hpp"
#include "sra/element_props.hpp"
#include "sra/io.hpp"
#include "sra/report.hpp"
#include "sra/symbolic.hpp"

namespace sra {

enum class CardAxiom { C1a, C1b, C2a, C2b, C3, C4a, C4b, C5a, C5b, C5c, C5d, C5e, C6a, C6b, C7a, C7b, C8, C9 };

inline constexpr std::array<CardAxiom, 18> kCardAxioms{
    CardAxiom::C1a, CardAxiom::C1b, CardAxiom::C2a, CardAxiom::C2b, CardAxiom::C3,  CardAxiom::C4a,
    CardAxiom::C4b, CardAxiom::C5a, CardAxiom::C5b, CardAxiom::C5c, CardAxiom::C5d, CardAxiom::C5e,
    CardAxiom::C6a, CardAxiom::C6b, CardAxiom::C7a, CardAxiom::C7b, CardAxiom::C8,  CardAxiom::C9};

inline std::string_view to_string(CardAxiom id) {
  constexpr std::array<std::string_view, 18> names{"C1a", "C1b", "C2a", "C2b", "C3",  "C4a", "C4b", "C5a", "C5b",
                                                   "C5c", "C5d", "C5e", "C6a", "C6b", "C7a", "C7b", "C8",  "C9"};
  return names[static_cast<std::size_t>(id)];
}

inline CardAxiom parse_card_axiom(std::string_view s) {
  for (auto id : kCardAxioms)
    if (to_string(id) == s) return id;
  throw InputError("unknown cardinality axiom '" + std::string(s) + "'");
}

/// "all", "" or a comma-separated list of axiom ids.
inline std::vector<CardAxiom> parse_card_axioms(std::string_view s) {
  if (s == "all") return {kCardAxioms.begin(), kCardAxioms.end()};
  std::vector<CardAxiom> out;
  while (!s.empty()) {
    auto comma = s.find(',');
    auto tok = s.substr(0, comma);
    if (tok.empty()) throw InputError("empty axiom name in list");
    out.push_back(parse_card_axiom(tok));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

/// A total map from one algebra's carrier to ℕ ∪ {∞}.
class CardinalityFn {
 public:
  CardinalityFn() = default;
  explicit CardinalityFn(std::vector<CardValue> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  CardValue operator()(ElementId x) const { return values_.at(x.index); }
  const std::vector<CardValue>& values() const noexcept { return values_; }

  friend bool operator==(const CardinalityFn&, const CardinalityFn&) = default;
  friend bool operator<(const CardinalityFn& a, const CardinalityFn& b) { return a.values_ < b.values_; }

 private:
  std::vector<CardValue> values_;
};

/// Atoms below x, in carrier order.
using AtomSet = std::vector<ElementId>;

inline AtomSet atoms_below(const FiniteAlgebra& a, ElementId x) {
  a.require(x);
  AtomSet out;
  for (auto at : atoms(a))
    if (a.leq(at, x)) out.push_back(at);
  return out;
}

/// The symbolic model has no atoms, so every A(x) is empty.
inline std::vector<SymElem> atoms_below(const SymbolicAlgebra&, SymElem) { return {}; }

inline CardValue count_C(const FiniteAlgebra& a, ElementId x) { return CardValue::finite(atoms_below(a, x).size()); }
inline CardValue count_C(const SymbolicAlgebra& a, SymElem x) {
  return CardValue::finite(atoms_below(a, x).size());
}

namespace detail {

// A(x) for every x as a bit mask over the atom list.
struct AtomMasks {
  std::vector<ElementId> atoms;
  std::vector<std::uint64_t> below;

  explicit AtomMasks(const FiniteAlgebra& a) : atoms(sra::atoms(a)), below(a.size(), 0) {
    if (atoms.size() > 64)
      throw BudgetExceeded("'" + a.name() + "' has more than 64 atoms; atom sets are limited to 64");
    for (auto x : a.ids())
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (a.leq(atoms[i], x)) below[x.index] |= std::uint64_t{1} << i;
  }
  std::uint64_t operator[](ElementId x) const { return below[x.index]; }
};

}  // namespace detail

/// The atom-counting operation C as a cardinality function.
inline CardinalityFn atom_counting(const FiniteAlgebra& a) {
  detail::AtomMasks m(a);
  std::vector<CardValue> v;
  for (auto x : a.ids()) v.push_back(CardValue::finite(std::popcount(m[x])));
  return CardinalityFn(std::move(v));
}

struct AxiomVerdict {
  CardAxiom axiom = CardAxiom::C1a;
  std::optional<Tuple> witness;  // empty tuple for axioms without variables

  bool passed() const noexcept { return !witness.has_value(); }
  friend bool operator==(const AxiomVerdict&, const AxiomVerdict&) = default;
};

/// Evaluates cardinality axioms of one (algebra, function) pair, sharing the
/// atom and univalence flags between axioms.
class AxiomChecker {
 public:
  AxiomChecker(const FiniteAlgebra& a, const CardinalityFn& f) : a_(a), f_(f) {
    if (f.size() != a.size())
      throw InputError("cardinality function has " + std::to_string(f.size()) + " values but '" + a.name() +
                       "' has " + std::to_string(a.size()) + " elements");
    atom_.resize(a.size());
    univalent_.resize(a.size());
    for (auto x : a.ids()) {
      atom_[x.index] = is_atom(a, x);
      univalent_[x.index] = is_univalent(a, x);
    }
  }

  /// Reuses atom and univalence flags computed for `a`.
  AxiomChecker(const FiniteAlgebra& a, const CardinalityFn& f, std::vector<char> atom, std::vector<char> univalent)
      : a_(a), f_(f), atom_(std::move(atom)), univalent_(std::move(univalent)) {
    if (f.size() != a.size() || atom_.size() != a.size() || univalent_.size() != a.size())
      throw InputError("cardinality function does not match '" + a.name() + "'");
  }

  AxiomVerdict operator()(CardAxiom id) const { return {id, violation(id)}; }

  std::vector<AxiomVerdict> all() const {
    std::vector<AxiomVerdict> out;
    for (auto id : kCardAxioms) out.push_back((*this)(id));
    return out;
  }

 private:
  std::optional<Tuple> violation(CardAxiom id) const {
    const FiniteAlgebra& a = a_;
    auto f = [&](ElementId x) { return f_(x); };
    const ElementId bot = a.bot(), top = a.top(), one = a.one();
    const CardValue zero = CardValue::finite(0), unit = CardValue::finite(1);
    auto nullary = [](bool ok) { return ok ? std::nullopt : std::optional<Tuple>(Tuple{}); };
    auto univ = [&](ElementId x) { return univalent_[x.index] != 0; };
    switch (id) {
      case CardAxiom::C1a: return nullary(f(bot) == zero);
      case CardAxiom::C1b: return find_violation(a, [&](auto x) { return (f(x) == zero) == (x == bot); });
      case CardAxiom::C2a: return find_violation(a, [&](auto x) { return !atom_[x.index] || f(x) == unit; });
      case CardAxiom::C2b: return find_violation(a, [&](auto x) { return (atom_[x.index] != 0) == (f(x) == unit); });
      case CardAxiom::C3: return find_violation(a, [&](auto x) { return f(a.conv(x)) == f(x); });
      case CardAxiom::C4a:
        return find_violation2(a, [&](auto x, auto y) { return f(x) + f(y) == f(a.join(x, y)) + f(a.meet(x, y)); });
      case CardAxiom::C4b: return find_violation2(a, [&](auto x, auto y) { return !a.leq(x, y) || f(x) <= f(y); });
      case CardAxiom::C5a:
        return find_violation3(a, [&](auto x, auto y, auto z) {
          return !univ(x) || f(a.meet(a.comp(a.conv(x), y), z)) <= f(a.meet(a.comp(x, z), y));
        });
      case CardAxiom::C5b:
        return find_violation3(a, [&](auto x, auto y, auto z) {
          return !univ(x) || f(a.meet(x, a.comp(y, a.conv(z)))) <= f(a.meet(a.comp(x, z), y));
        });
      case CardAxiom::C5c:
        return find_violation2(a, [&](auto x, auto y) { return !univ(x) || f(a.comp(y, x)) <= f(y); });
      case CardAxiom::C5d:
        return find_violation2(a, [&](auto x, auto y) { return !univ(x) || f(a.meet(x, a.comp(y, top))) <= f(y); });
      case CardAxiom::C5e:
        return find_violation2(a, [&](auto x, auto y) { return !univ(x) || f(a.meet(x, a.comp(y, a.conv(y)))) <= f(y); });
      case CardAxiom::C6a: return find_violation(a, [&](auto x) { return f(a.meet(one, a.comp(x, a.conv(x)))) <= f(x); });
      case CardAxiom::C6b: return find_violation(a, [&](auto x) { return f(a.meet(one, a.comp(a.conv(x), x))) <= f(x); });
      case CardAxiom::C7a: return find_violation(a, [&](auto x) { return (f(x) == f(top)) == (x == top); });
      case CardAxiom::C7b: return find_violation(a, [&](auto x) { return (f(top) <= f(x)) == (x == top); });
      case CardAxiom::C8: return nullary(f(top) == f(one).squared());
      case CardAxiom::C9: return nullary(f(top).is_finite());
    }
    return std::nullopt;
  }

  const FiniteAlgebra& a_;
  const CardinalityFn& f_;
  std::vector<char> atom_;
  std::vector<char> univalent_;
};

/// Exhaustive check of one axiom; the witness is the least failing tuple of
/// the axiom's quantified variables in the order they are written.
inline AxiomVerdict check_card_axiom(const FiniteAlgebra& a, const CardinalityFn& f, CardAxiom id) {
  return AxiomChecker(a, f)(id);
}

inline std::vector<AxiomVerdict> check_all_axioms(const FiniteAlgebra& a, const CardinalityFn& f) {
  return AxiomChecker(a, f).all();
}

[[noreturn]] inline AxiomVerdict check_card_axiom(const SymbolicAlgebra& a, const CardinalityFn&, CardAxiom) {
  a.enumerate();
}

/// Facts about atoms and simplicity that the sufficient-condition theorems
/// are phrased in.
struct StructuralFlags {
  bool atomic = false;
  bool atom_rectangular = false;
  bool atom_simple = false;
  bool simple = false;
  bool finitely_many_atoms = true;

  friend bool operator==(const StructuralFlags&, const StructuralFlags&) = default;
};

inline StructuralFlags structural_predicates(const FiniteAlgebra& a) {
  StructuralFlags s;
  detail::AtomMasks m(a);
  s.atomic = true;
  for (auto x : a.ids())
    if (x != a.bot() && m[x] == 0) s.atomic = false;
  s.atom_rectangular = std::all_of(m.atoms.begin(), m.atoms.end(), [&](ElementId x) { return is_rectangle(a, x); });
  s.atom_simple = std::all_of(m.atoms.begin(), m.atoms.end(), [&](ElementId x) { return is_simple(a, x); });
  s.simple = is_simple_algebra(a);
  s.finitely_many_atoms = true;
  return s;
}

/// Decided on the model's structure: it has no atoms, so it is not atomic
/// (Int(0) has no atom below), and the atom conditions hold vacuously. It is
/// not simple since ⊤·0·⊤ = 0.
inline StructuralFlags structural_predicates(const SymbolicAlgebra& a) {
  StructuralFlags s;
  const SymElem zero = SymElem::integer(0);
  s.atomic = false;
  s.atom_rectangular = true;
  s.atom_simple = true;
  s.simple = a.comp(a.top(), a.comp(zero, a.top())) == a.top();
  s.finitely_many_atoms = true;
  return s;
}

/// Laws of the atom-set map A: monotone, A(⊥) = ∅, meets to intersections,
/// disjoint to disjoint, joins to unions, splitting along y and ¬y, and
/// invariance under ¬¬.
inline Report verify_atom_calculus(const FiniteAlgebra& a) {
  require_sra(a);
  detail::AtomMasks m(a);
  Report r{"atom sets", {}};
  add_check(r, "A-1", find_violation2(a, [&](auto x, auto y) { return !a.leq(x, y) || (m[x] & ~m[y]) == 0; }));
  add_check(r, "A-2", m[a.bot()] == 0 ? std::nullopt : std::optional<Tuple>(Tuple{a.bot()}));
  add_check(r, "A-3", find_violation2(a, [&](auto x, auto y) { return m[a.meet(x, y)] == (m[x] & m[y]); }));
  add_check(r, "A-4",
            find_violation2(a, [&](auto x, auto y) { return a.meet(x, y) != a.bot() || (m[x] & m[y]) == 0; }));
  add_check(r, "A-5", find_violation2(a, [&](auto x, auto y) { return m[a.join(x, y)] == (m[x] | m[y]); }));
  add_check(r, "A-6", find_violation2(a, [&](auto x, auto y) {
              auto p = m[a.meet(x, y)], q = m[a.meet(x, a.pcomp(y))];
              return m[x] == (p | q) && (p & q) == 0;
            }));
  add_check(r, "A-7", find_violation(a, [&](auto x) { return m[a.pcomp(a.pcomp(x))] == m[x]; }));
  return r;
}

namespace detail {

inline std::optional<Tuple> failing(const std::vector<AxiomVerdict>& v, CardAxiom id) {
  return v[static_cast<std::size_t>(id)].witness;
}

}  // namespace detail

/// C satisfies C1a, C2a, C3, C4a and C4b; on atomic algebras also C1b and
/// C5a through C6b. Requires a Stone relation algebra.
inline Report verify_nAB_card(const FiniteAlgebra& a) {
  require_sra(a);
  const CardinalityFn c = atom_counting(a);
  AxiomChecker check(a, c);
  const bool atomic = structural_predicates(a).atomic;
  Report r{"atom counting satisfies", {}};
  for (auto id : {CardAxiom::C1a, CardAxiom::C2a, CardAxiom::C3, CardAxiom::C4a, CardAxiom::C4b})
    add_check(r, "nAB-card-" + std::string(to_string(id)), check(id).witness);
  for (auto id : {CardAxiom::C1b, CardAxiom::C5a, CardAxiom::C5b, CardAxiom::C5c, CardAxiom::C5d, CardAxiom::C5e,
                  CardAxiom::C6a, CardAxiom::C6b}) {
    std::string name = "nAB-card-" + std::string(to_string(id));
    if (atomic)
      add_check(r, name, check(id).witness, "atomic");
    else
      r.add(name, Verdict::vacuous, {}, "not atomic");
  }
  return r;
}

[[noreturn]] inline Report verify_nAB_card(const SymbolicAlgebra& a) { a.enumerate(); }

/// Families larger than this are not enumerated exhaustively.
inline constexpr std::size_t kFamilyCap = std::size_t{1} << 20;

/// Implications between axioms and their consequences, checked as
/// conditionals: when the antecedent fails the item is vacuous.
inline Report verify_equivalences(const FiniteAlgebra& a, const CardinalityFn& f) {
  AxiomChecker checker(a, f);
  const auto v = checker.all();
  auto ok = [&](CardAxiom id) { return v[static_cast<std::size_t>(id)].passed(); };
  auto wit = [&](CardAxiom id) { return detail::failing(v, id); };
  using enum CardAxiom;
  Report r{"relationships between cardinality axioms", {}};

  auto implication = [&](std::string id, bool antecedent, auto consequent_witness) {
    if (!antecedent) {
      r.add(std::move(id), Verdict::vacuous, {}, "antecedent fails");
      return;
    }
    std::optional<Tuple> w = consequent_witness();
    add_check(r, std::move(id), w);
  };
  // Witness for "p ⟺ q": the witness of whichever side fails.
  auto iff = [&](CardAxiom p, CardAxiom q) -> std::optional<Tuple> {
    if (ok(p) == ok(q)) return std::nullopt;
    return ok(p) ? wit(q) : wit(p);
  };

  implication("equiv-1", ok(C1b), [&] { return wit(C1a); });
  implication("equiv-2", ok(C3) && ok(C5c), [&] { return wit(C5a); });
  implication("equiv-3", ok(C5b) || ok(C5e), [&] { return wit(C6a); });
  implication("equiv-4", ok(C3), [&] { return iff(C6a, C6b); });
  implication("equiv-5", ok(C3) && ok(C4b), [&] { return iff(C5a, C5c); });
  implication("equiv-6", ok(C4b), [&]() -> std::optional<Tuple> {
    if (auto w = iff(C5b, C5d)) return w;
    if (ok(C5d) && !ok(C5e)) return wit(C5e);
    return std::nullopt;
  });
  implication("equiv-7", ok(C4b) && ok(C5c), [&]() -> std::optional<Tuple> {
    for (auto q : {C5d, C5e, C6a})
      if (auto w = iff(C5b, q)) return w;
    return std::nullopt;
  });
  implication("equiv-8", ok(C4b), [&]() -> std::optional<Tuple> {
    if (auto w = find_violation(a, [&](auto x) { return f(x) <= f(a.top()); })) return w;
    return iff(C7a, C7b);
  });
  implication("equiv-9", ok(C5b) && ok(C5c), [&] {
    return find_violation2(a, [&](auto x, auto y) {
      return !is_univalent(a, x) || !is_mapping(a, y) || f(a.comp(x, y)) == f(x);
    });
  });
  implication("equiv-10", ok(C3) && ok(C5b) && ok(C5c), [&] {
    return find_violation(a, [&](auto p) { return !is_point(a, p) || f(p) == f(a.one()); });
  });
  const bool additive = ok(C1a) && ok(C4a);
  implication("equiv-11", additive, [&] {
    return find_violation2(a, [&](auto x, auto y) {
      return a.meet(x, y) != a.bot() || f(a.join(x, y)) == f(x) + f(y);
    });
  });

  // Pairwise disjoint families, enumerated depth-first in carrier order.
  if (!additive) {
    r.add("equiv-12", Verdict::vacuous, {}, "antecedent fails");
  } else {
    std::vector<ElementId> chosen;
    std::optional<Tuple> w;
    std::size_t visited = 0;
    bool capped = false;
    std::function<void(std::uint32_t, ElementId, CardValue)> dfs = [&](std::uint32_t from, ElementId sup,
                                                                       CardValue sum) {
      for (std::uint32_t i = from; i < a.size() && !w && !capped; ++i) {
        ElementId x{i};
        bool disjoint = true;
        for (auto c : chosen)
          if (a.meet(c, x) != a.bot()) {
            disjoint = false;
            break;
          }
        if (!disjoint) continue;
        if (++visited > kFamilyCap) {
          capped = true;
          return;
        }
        chosen.push_back(x);
        ElementId s = chosen.size() == 1 ? x : a.join(sup, x);
        CardValue total = sum + f(x);
        if (f(s) != total) w = chosen;
        dfs(i + 1, s, total);
        chosen.pop_back();
      }
    };
    dfs(0, a.bot(), CardValue::finite(0));
    if (w || !capped)
      add_check(r, "equiv-12", w);
    else
      r.add("equiv-12", Verdict::bounded, {}, "stopped after " + std::to_string(kFamilyCap) + " families");
  }

  if (!additive) {
    r.add("equiv-13", Verdict::vacuous, {}, "antecedent fails");
  } else {
    auto [subsets, sampled] = nonempty_subsets(atoms(a));
    std::optional<Tuple> w;
    for (const auto& s : subsets) {
      CardValue total = CardValue::finite(0);
      for (auto x : s) total += f(x);
      if (f(big_sup(a, s)) != total) {
        w = s;
        break;
      }
    }
    if (w || !sampled)
      add_check(r, "equiv-13", w);
    else
      r.add("equiv-13", Verdict::bounded, {}, "atom subsets sampled");
  }

  const bool ra = is_relation_algebra(a).regular;
  if (!ra) {
    r.add("equiv-ra-1", Verdict::vacuous, {}, "not a relation algebra");
    r.add("equiv-ra-2", Verdict::vacuous, {}, "not a relation algebra");
  } else {
    implication("equiv-ra-1", additive, [&] { return wit(C4b); });
    implication("equiv-ra-2", ok(C1b) && ok(C4a) && ok(C9), [&] { return wit(C7a); });
  }
  return r;
}

/// Structural hypotheses under which C satisfies further axioms, each
/// checked as a conditional. Requires a Stone relation algebra.
inline Report verify_sufficient_conditions(const FiniteAlgebra& a) {
  require_sra(a);
  const StructuralFlags s = structural_predicates(a);
  const bool ra = is_relation_algebra(a).regular;
  const CardinalityFn c = atom_counting(a);
  AxiomChecker check(a, c);
  const CardValue c_top = c(a.top()), c_one_sq = c(a.one()).squared();
  Report r{"sufficient conditions for atom counting", {}};
  auto item = [&](std::string id, bool hyp, std::optional<Tuple> w) {
    if (!hyp)
      r.add(std::move(id), Verdict::vacuous, {}, "hypotheses fail");
    else
      add_check(r, std::move(id), w);
  };
  auto arith = [](bool ok) { return ok ? std::nullopt : std::optional<Tuple>(Tuple{}); };
  item("suff-1", s.atomic && s.atom_rectangular && s.simple, check(CardAxiom::C2b).witness);
  item("suff-2", ra && s.atomic, check(CardAxiom::C2b).witness);
  item("suff-3", s.atom_rectangular, arith(c_top <= c_one_sq));
  item("suff-4", s.atomic && s.simple && s.finitely_many_atoms, arith(c_top >= c_one_sq));
  item("suff-5", s.atom_rectangular && s.atom_simple, check(CardAxiom::C8).witness);
  item("suff-6", s.finitely_many_atoms, check(CardAxiom::C9).witness);
  return r;
}

/// Hypotheses that force a Stone relation algebra to be a relation algebra,
/// checked as conditionals:
///   atom-sra-ra: atomic, atom-rectangular, simple ⟹ relation algebra;
///   card-sra-ra: atom-simple, C satisfies C1b and C8 ⟹ atomic,
///                atom-rectangular and a relation algebra;
///   card-ra:     atomic simple relation algebra, C satisfies C8 ⟹
///                atom-rectangular (C is the only candidate for # there).
inline Report verify_collapse_theorems(const FiniteAlgebra& a) {
  require_sra(a);
  const StructuralFlags s = structural_predicates(a);
  const RegularityResult ra = is_relation_algebra(a);
  const CardinalityFn c = atom_counting(a);
  AxiomChecker check(a, c);
  const bool c1b = check(CardAxiom::C1b).passed(), c8 = check(CardAxiom::C8).passed();
  Report r{"collapse to relation algebras", {}};
  auto ra_witness = [&]() -> std::optional<Tuple> {
    if (ra.regular) return std::nullopt;
    return Tuple{*ra.witness};
  };
  auto first_bad_atom = [&](auto pred) -> std::optional<Tuple> {
    for (auto x : atoms(a))
      if (!pred(x)) return Tuple{x};
    return std::nullopt;
  };
  if (s.atomic && s.atom_rectangular && s.simple)
    add_check(r, "atom-sra-ra", ra_witness());
  else
    r.add("atom-sra-ra", Verdict::vacuous, {}, "hypotheses fail");

  if (s.atom_simple && c1b && c8) {
    std::optional<Tuple> w;
    if (!s.atomic)
      w = find_violation(a, [&](auto x) { return x == a.bot() || count_C(a, x) != CardValue::finite(0); });
    if (!w) w = first_bad_atom([&](ElementId x) { return is_rectangle(a, x); });
    if (!w) w = ra_witness();
    add_check(r, "card-sra-ra", w);
  } else {
    r.add("card-sra-ra", Verdict::vacuous, {}, "hypotheses fail");
  }

  if (ra.regular && s.atomic && s.simple && c8)
    add_check(r, "card-ra", first_bad_atom([&](ElementId x) { return is_rectangle(a, x); }));
  else
    r.add("card-ra", Verdict::vacuous, {}, "hypotheses fail");
  return r;
}

// Classical sufficient conditions for representability, reported as the
// list of elements violating each.

/// Atoms that are not rectangles.
inline std::vector<ElementId> non_rectangular_atoms(const FiniteAlgebra& a) {
  std::vector<ElementId> out;
  for (auto x : atoms(a))
    if (!is_rectangle(a, x)) out.push_back(x);
  return out;
}

/// Atoms that are not univalent.
inline std::vector<ElementId> non_univalent_atoms(const FiniteAlgebra& a) {
  std::vector<ElementId> out;
  for (auto x : atoms(a))
    if (!is_univalent(a, x)) out.push_back(x);
  return out;
}

/// Elements ⊥ ≠ x ⊑ 1 with no y, ⊥ ≠ y ⊑ x, such that y⊤y ⊑ 1.
inline std::vector<ElementId> subidentities_without_small_rectangle(const FiniteAlgebra& a) {
  std::vector<ElementId> out;
  for (auto x : a.ids()) {
    if (x == a.bot() || !a.leq(x, a.one())) continue;
    bool found = false;
    for (auto y : a.ids())
      if (y != a.bot() && a.leq(y, x) && a.leq(a.comp(y, a.top(), y), a.one())) {
        found = true;
        break;
      }
    if (!found) out.push_back(x);
  }
  return out;
}

inline Report check_representability_conditions(const FiniteAlgebra& a) {
  Report r{"classical representability conditions", {}};
  auto first = [](const std::vector<ElementId>& v) {
    return v.empty() ? std::nullopt : std::optional<Tuple>(Tuple{v.front()});
  };
  add_check(r, "atom-rectangular", first(non_rectangular_atoms(a)));
  add_check(r, "atoms-univalent", first(non_univalent_atoms(a)));
  add_check(r, "subidentity-rectangles", first(subidentities_without_small_rectangle(a)));
  return r;
}

/// Cardinality file: {"values": {elementName: natural | "inf"}}; must cover
/// every element.
inline CardinalityFn cardinality_from_json(const json& j, const FiniteAlgebra& a) {
  if (!j.is_object() || !j.contains("values") || !j.at("values").is_object())
    throw InputError("cardinality file: expected an object with a 'values' object");
  std::vector<std::optional<CardValue>> vals(a.size());
  for (const auto& [name, v] : j.at("values").items()) {
    auto x = a.find(name);
    if (!x) throw InputError("cardinality file: unknown element '" + name + "'");
    CardValue c;
    if (v.is_string() && v.get<std::string>() == "inf")
      c = CardValue::infinity();
    else if (v.is_number_unsigned())
      c = CardValue::finite(v.get<std::uint64_t>());
    else if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
      c = CardValue::finite(static_cast<std::uint64_t>(v.get<std::int64_t>()));
    else if (v.is_number_integer())
      throw InputError("cardinality file: value for '" + name + "' is negative");
    else
      throw InputError("cardinality file: value for '" + name + "' must be a natural number or \"inf\"");
    if (vals[x->index]) throw InputError("cardinality file: element '" + name + "' is given twice");
    vals[x->index] = c;
  }
  std::vector<CardValue> out;
  for (auto x : a.ids()) {
    if (!vals[x.index]) throw InputError("cardinality file: no value for element '" + a.name_of(x) + "'");
    out.push_back(*vals[x.index]);
  }
  return CardinalityFn(std::move(out));
}

inline json cardinality_to_json(const CardinalityFn& f, const FiniteAlgebra& a) {
  json values = json::object();
  for (auto x : a.ids()) {
    CardValue c = f(x);
    if (c.is_infinite())
      values[a.name_of(x)] = "inf";
    else
      values[a.name_of(x)] = c.value();
  }
  return json{{"values", values}};
}

inline CardinalityFn load_cardinality_fn(const std::filesystem::path& path, const FiniteAlgebra& a) {
  try {
    return cardinality_from_json(read_json_file(path), a);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace sra
