#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "sra/errors.hpp"

namespace sra {

/// Element of the integers extended by a least and a greatest element.
struct SymElem {
  enum class Kind { bottom, integer, top };
  Kind kind = Kind::bottom;
  std::int64_t value = 0;

  static constexpr SymElem bottom() { return {Kind::bottom, 0}; }
  static constexpr SymElem top() { return {Kind::top, 0}; }
  static constexpr SymElem integer(std::int64_t v) { return {Kind::integer, v}; }

  friend constexpr std::strong_ordering operator<=>(const SymElem& a, const SymElem& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.kind == Kind::integer) return a.value <=> b.value;
    return std::strong_ordering::equal;
  }
  friend constexpr bool operator==(const SymElem& a, const SymElem& b) { return (a <=> b) == 0; }

  std::string name() const {
    switch (kind) {
      case Kind::bottom: return "bot";
      case Kind::top: return "top";
      case Kind::integer: return std::to_string(value);
    }
    return "?";
  }
};

/// The one infinite model: ⊥ < ... < -1 < 0 < 1 < ... < ⊤ with converse the
/// identity, composition the meet, and pseudocomplement ¬⊥ = ⊤, ¬x = ⊥ otherwise.
///
/// Supports operation evaluation, order queries and per-element predicates
/// decided analytically. Anything that enumerates the carrier throws
/// UnsupportedModel.
class SymbolicAlgebra {
 public:
  const std::string& name() const noexcept { return name_; }
  static constexpr bool finite() noexcept { return false; }

  SymElem bot() const noexcept { return SymElem::bottom(); }
  SymElem top() const noexcept { return SymElem::top(); }
  SymElem one() const noexcept { return SymElem::top(); }

  SymElem join(SymElem x, SymElem y) const noexcept { return x < y ? y : x; }
  SymElem meet(SymElem x, SymElem y) const noexcept { return x < y ? x : y; }
  SymElem comp(SymElem x, SymElem y) const noexcept { return meet(x, y); }
  SymElem conv(SymElem x) const noexcept { return x; }
  SymElem pcomp(SymElem x) const noexcept { return x == bot() ? top() : bot(); }
  bool leq(SymElem x, SymElem y) const noexcept { return join(x, y) == y; }

  /// Some y with ⊥ ≠ y ⊏ x, if one exists. Every non-⊥ element has one,
  /// because the integers have no least element.
  std::optional<SymElem> strictly_below_non_bot(SymElem x) const noexcept {
    switch (x.kind) {
      case SymElem::Kind::bottom: return std::nullopt;
      case SymElem::Kind::top: return SymElem::integer(0);
      case SymElem::Kind::integer:
        // Below the smallest representable integer the witness is not
        // representable, but it still exists in the model.
        if (x.value == std::numeric_limits<std::int64_t>::min()) return x;
        return SymElem::integer(x.value - 1);
    }
    return std::nullopt;
  }

  bool is_atom(SymElem x) const noexcept { return x != bot() && !strictly_below_non_bot(x); }
  bool is_vector(SymElem x) const noexcept { return comp(x, top()) == x; }
  bool is_covector(SymElem x) const noexcept { return comp(top(), x) == x; }
  bool is_ideal(SymElem x) const noexcept { return is_vector(x) && is_covector(x); }

  [[noreturn]] void enumerate() const {
    throw UnsupportedModel("'" + name_ + "' is infinite; exhaustive enumeration is not supported");
  }

 private:
  std::string name_ = "int_chain";
};

}  // namespace sra
