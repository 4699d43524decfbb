#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/parallel.hpp"
#include "sra/symbolic.hpp"

namespace sra {

/// Verification stages, each including all earlier ones.
enum class Level { lattice, distributive, stone, semiring_involution, sra, ra };

inline std::string_view to_string(Level l) {
  switch (l) {
    case Level::lattice: return "lattice";
    case Level::distributive: return "distributive";
    case Level::stone: return "stone";
    case Level::semiring_involution: return "semiring-involution";
    case Level::sra: return "sra";
    case Level::ra: return "ra";
  }
  return "?";
}

inline Level parse_level(std::string_view s) {
  for (Level l : {Level::lattice, Level::distributive, Level::stone, Level::semiring_involution, Level::sra,
                  Level::ra})
    if (to_string(l) == s) return l;
  throw InputError("unknown level '" + std::string(s) +
                   "' (expected lattice, distributive, stone, semiring-involution, sra or ra)");
}

struct LawResult {
  std::string law;
  Level stage = Level::lattice;
  std::optional<Tuple> witness;  // lexicographically least failing tuple

  bool passed() const noexcept { return !witness.has_value(); }
  friend bool operator==(const LawResult&, const LawResult&) = default;
};

/// Result of staged verification. Stages after the first failing one are
/// not evaluated.
struct AxiomReport {
  Level requested = Level::lattice;
  std::optional<Level> reached;  // highest stage whose laws all hold
  std::vector<LawResult> laws;
  bool degenerate = false;  // one-element algebra: passes every level vacuously

  bool passed() const noexcept { return reached && *reached >= requested; }

  const LawResult* first_failure() const noexcept {
    for (const auto& l : laws)
      if (!l.passed()) return &l;
    return nullptr;
  }

  const LawResult* law(std::string_view name) const noexcept {
    for (const auto& l : laws)
      if (l.law == name) return &l;
    return nullptr;
  }

  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

namespace detail {

inline void require_cubic(const FiniteAlgebra& a) {
  if (a.size() > kCubicBudget)
    throw BudgetExceeded("'" + a.name() + "' has " + std::to_string(a.size()) +
                         " elements; checks over triples are limited to " + std::to_string(kCubicBudget));
}

}  // namespace detail

/// Least x with !holds(x).
template <class Pred>
std::optional<Tuple> find_violation(const FiniteAlgebra& a, Pred&& holds) {
  auto hit = first_hit<Tuple>(a.size(), [&](std::size_t i) -> std::optional<Tuple> {
    ElementId x{static_cast<std::uint32_t>(i)};
    if (!holds(x)) return Tuple{x};
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

/// Lexicographically least (x, y) with !holds(x, y).
template <class Pred>
std::optional<Tuple> find_violation2(const FiniteAlgebra& a, Pred&& holds) {
  auto hit = first_hit<Tuple>(a.size(), [&](std::size_t i) -> std::optional<Tuple> {
    ElementId x{static_cast<std::uint32_t>(i)};
    for (auto y : a.ids())
      if (!holds(x, y)) return Tuple{x, y};
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

/// Lexicographically least (x, y, z) with !holds(x, y, z).
template <class Pred>
std::optional<Tuple> find_violation3(const FiniteAlgebra& a, Pred&& holds) {
  detail::require_cubic(a);
  auto hit = first_hit<Tuple>(a.size(), [&](std::size_t i) -> std::optional<Tuple> {
    ElementId x{static_cast<std::uint32_t>(i)};
    for (auto y : a.ids())
      for (auto z : a.ids())
        if (!holds(x, y, z)) return Tuple{x, y, z};
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

namespace detail {

class LawSink {
 public:
  LawSink(AxiomReport& r, Level stage) : r_(r), stage_(stage) {}
  void operator()(std::string name, std::optional<Tuple> w) {
    if (w) ok_ = false;
    r_.laws.push_back(LawResult{std::move(name), stage_, std::move(w)});
  }
  bool ok() const noexcept { return ok_; }

 private:
  AxiomReport& r_;
  Level stage_;
  bool ok_ = true;
};

inline bool lattice_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::lattice);
  law("join-associative",
      find_violation3(a, [&](auto x, auto y, auto z) { return a.join(a.join(x, y), z) == a.join(x, a.join(y, z)); }));
  law("join-commutative", find_violation2(a, [&](auto x, auto y) { return a.join(x, y) == a.join(y, x); }));
  law("join-idempotent", find_violation(a, [&](auto x) { return a.join(x, x) == x; }));
  law("bot-unit", find_violation(a, [&](auto x) { return a.join(x, a.bot()) == x; }));
  law("meet-associative",
      find_violation3(a, [&](auto x, auto y, auto z) { return a.meet(a.meet(x, y), z) == a.meet(x, a.meet(y, z)); }));
  law("meet-commutative", find_violation2(a, [&](auto x, auto y) { return a.meet(x, y) == a.meet(y, x); }));
  law("meet-idempotent", find_violation(a, [&](auto x) { return a.meet(x, x) == x; }));
  law("top-unit", find_violation(a, [&](auto x) { return a.meet(x, a.top()) == x; }));
  law("absorption-join", find_violation2(a, [&](auto x, auto y) { return a.join(x, a.meet(x, y)) == x; }));
  law("absorption-meet", find_violation2(a, [&](auto x, auto y) { return a.meet(x, a.join(x, y)) == x; }));
  return law.ok();
}

inline bool distributive_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::distributive);
  law("distributive", find_violation3(a, [&](auto x, auto y, auto z) {
        return a.join(x, a.meet(y, z)) == a.meet(a.join(x, y), a.join(x, z));
      }));
  return law.ok();
}

inline bool stone_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::stone);
  law("pseudocomplement",
      find_violation2(a, [&](auto x, auto y) { return (a.meet(x, y) == a.bot()) == a.leq(x, a.pcomp(y)); }));
  law("stone", find_violation(a, [&](auto x) { return a.join(a.pcomp(x), a.pcomp(a.pcomp(x))) == a.top(); }));
  return law.ok();
}

inline bool semiring_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::semiring_involution);
  law("comp-associative",
      find_violation3(a, [&](auto x, auto y, auto z) { return a.comp(a.comp(x, y), z) == a.comp(x, a.comp(y, z)); }));
  law("comp-left-unit", find_violation(a, [&](auto x) { return a.comp(a.one(), x) == x; }));
  law("comp-right-unit", find_violation(a, [&](auto x) { return a.comp(x, a.one()) == x; }));
  law("comp-left-distributive", find_violation3(a, [&](auto x, auto y, auto z) {
        return a.comp(x, a.join(y, z)) == a.join(a.comp(x, y), a.comp(x, z));
      }));
  law("comp-right-distributive", find_violation3(a, [&](auto x, auto y, auto z) {
        return a.comp(a.join(x, y), z) == a.join(a.comp(x, z), a.comp(y, z));
      }));
  law("comp-left-zero", find_violation(a, [&](auto x) { return a.comp(a.bot(), x) == a.bot(); }));
  law("comp-right-zero", find_violation(a, [&](auto x) { return a.comp(x, a.bot()) == a.bot(); }));
  law("conv-involutive", find_violation(a, [&](auto x) { return a.conv(a.conv(x)) == x; }));
  law("conv-comp",
      find_violation2(a, [&](auto x, auto y) { return a.conv(a.comp(x, y)) == a.comp(a.conv(y), a.conv(x)); }));
  law("conv-join",
      find_violation2(a, [&](auto x, auto y) { return a.conv(a.join(x, y)) == a.join(a.conv(x), a.conv(y)); }));
  return law.ok();
}

inline bool sra_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::sra);
  law("pp-one", a.pcomp(a.pcomp(a.one())) == a.one() ? std::nullopt : std::optional<Tuple>(Tuple{}));
  law("pp-comp", find_violation2(a, [&](auto x, auto y) {
        auto pp = [&](ElementId e) { return a.pcomp(a.pcomp(e)); };
        return pp(a.comp(x, y)) == a.comp(pp(x), pp(y));
      }));
  law("modular", find_violation3(a, [&](auto x, auto y, auto z) {
        return a.leq(a.meet(a.comp(x, y), z), a.comp(x, a.meet(y, a.comp(a.conv(x), z))));
      }));
  return law.ok();
}

inline bool ra_stage(const FiniteAlgebra& a, AxiomReport& r) {
  LawSink law(r, Level::ra);
  law("regular", find_violation(a, [&](auto x) { return a.pcomp(a.pcomp(x)) == x; }));
  return law.ok();
}

}  // namespace detail

/// Staged verification up to `level` by exhaustive enumeration.
inline AxiomReport check(const FiniteAlgebra& a, Level level) {
  AxiomReport r;
  r.requested = level;
  r.degenerate = a.degenerate();
  using Stage = bool (*)(const FiniteAlgebra&, AxiomReport&);
  constexpr Stage stages[] = {detail::lattice_stage, detail::distributive_stage, detail::stone_stage,
                              detail::semiring_stage, detail::sra_stage,         detail::ra_stage};
  for (int s = 0; s <= static_cast<int>(level); ++s) {
    if (!stages[s](a, r)) break;
    r.reached = static_cast<Level>(s);
  }
  return r;
}

inline AxiomReport check_bounded_lattice(const FiniteAlgebra& a) { return check(a, Level::lattice); }
inline AxiomReport check_distributive(const FiniteAlgebra& a) { return check(a, Level::distributive); }
inline AxiomReport check_stone(const FiniteAlgebra& a) { return check(a, Level::stone); }
inline AxiomReport check_semiring_involution(const FiniteAlgebra& a) { return check(a, Level::semiring_involution); }
inline AxiomReport check_sra(const FiniteAlgebra& a) { return check(a, Level::sra); }
inline AxiomReport check_ra(const FiniteAlgebra& a) { return check(a, Level::ra); }

[[noreturn]] inline AxiomReport check(const SymbolicAlgebra& a, Level) { a.enumerate(); }
[[noreturn]] inline AxiomReport check_bounded_lattice(const SymbolicAlgebra& a) { a.enumerate(); }
[[noreturn]] inline AxiomReport check_distributive(const SymbolicAlgebra& a) { a.enumerate(); }
[[noreturn]] inline AxiomReport check_stone(const SymbolicAlgebra& a) { a.enumerate(); }
[[noreturn]] inline AxiomReport check_sra(const SymbolicAlgebra& a) { a.enumerate(); }

struct RegularityResult {
  bool regular = true;
  std::optional<ElementId> witness;  // least x with ¬¬x ≠ x
};

/// Whether every element is regular (¬¬x = x). Together with check_sra this
/// decides being a relation algebra.
inline RegularityResult is_relation_algebra(const FiniteAlgebra& a) {
  auto w = find_violation(a, [&](auto x) { return a.pcomp(a.pcomp(x)) == x; });
  if (!w) return {};
  return {false, w->front()};
}

/// Gate for suites whose statements presuppose a Stone relation algebra.
/// The verdict is memoised on the algebra value.
inline void require_sra(const FiniteAlgebra& a) {
  auto& memo = a.memo();
  std::call_once(memo.sra_once, [&] {
    AxiomReport r = check_sra(a);
    if (!r.passed()) memo.sra_failure = r.first_failure()->law;
  });
  if (memo.sra_failure)
    throw PreconditionError("'" + a.name() + "' is not a Stone relation algebra (law '" + *memo.sra_failure +
                            "' fails)");
}

inline bool is_sra(const FiniteAlgebra& a) {
  try {
    require_sra(a);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

}  // namespace sra
