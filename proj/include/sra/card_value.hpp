#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sra {

/// A natural number or ∞. All infinities are identified; ∞ absorbs addition.
class CardValue {
 public:
  constexpr CardValue() = default;
  static constexpr CardValue finite(std::uint64_t v) { return CardValue(v, false); }
  static constexpr CardValue infinity() { return CardValue(0, true); }

  constexpr bool is_infinite() const noexcept { return inf_; }
  constexpr bool is_finite() const noexcept { return !inf_; }

  std::uint64_t value() const {
    if (inf_) throw std::logic_error("CardValue::value on infinity");
    return v_;
  }

  friend constexpr CardValue operator+(CardValue a, CardValue b) {
    if (a.inf_ || b.inf_) return infinity();
    if (a.v_ > std::numeric_limits<std::uint64_t>::max() - b.v_) throw std::overflow_error("CardValue addition overflow");
    return finite(a.v_ + b.v_);
  }
  CardValue& operator+=(CardValue b) { return *this = *this + b; }

  constexpr CardValue squared() const {
    if (inf_) return infinity();
    if (v_ != 0 && v_ > std::numeric_limits<std::uint64_t>::max() / v_) throw std::overflow_error("CardValue square overflow");
    return finite(v_ * v_);
  }

  friend constexpr std::strong_ordering operator<=>(CardValue a, CardValue b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.v_ <=> b.v_;
  }
  friend constexpr bool operator==(CardValue a, CardValue b) { return (a <=> b) == 0; }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, CardValue c) { return os << c.to_string(); }

 private:
  constexpr CardValue(std::uint64_t v, bool inf) : v_(v), inf_(inf) {}
  std::uint64_t v_ = 0;
  bool inf_ = false;
};

}  // namespace sra
