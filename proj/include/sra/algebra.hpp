#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sra/errors.hpp"

namespace sra {

/// Index into one algebra's carrier. Only meaningful for the algebra it came from.
struct ElementId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(const ElementId&, const ElementId&) = default;
};

/// A tuple of elements, e.g. the witness of a failing law.
using Tuple = std::vector<ElementId>;

/// Largest carrier admitted by checks that quantify over triples.
inline constexpr std::size_t kCubicBudget = 4096;
/// Largest carrier that may be stored as explicit operation tables.
inline constexpr std::size_t kTableLimit = 65536;

/// Plain operation tables; the interchange form used by the loader and by
/// constructors. Binary tables are row-major, entry [x * n + y].
struct AlgebraTables {
  std::string name;
  std::vector<std::string> elements;
  std::uint32_t bot = 0;
  std::uint32_t top = 0;
  std::uint32_t one = 0;
  std::vector<std::uint32_t> join;
  std::vector<std::uint32_t> meet;
  std::vector<std::uint32_t> comp;
  std::vector<std::uint32_t> conv;
  std::vector<std::uint32_t> pcomp;

  std::size_t size() const noexcept { return elements.size(); }
  friend bool operator==(const AlgebraTables&, const AlgebraTables&) = default;
};

namespace detail {

// Binary relations on {0..n-1} as n*n-bit words; bit i*n+j is the pair (i,j).
struct BitRelations {
  unsigned n = 0;

  std::uint32_t row_mask() const noexcept { return (1u << n) - 1u; }
  std::uint32_t full() const noexcept { return n * n == 32 ? ~0u : (1u << (n * n)) - 1u; }
  std::uint32_t row(std::uint32_t r, unsigned i) const noexcept { return (r >> (i * n)) & row_mask(); }

  std::uint32_t compose(std::uint32_t x, std::uint32_t y) const noexcept {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n; ++i) {
      std::uint32_t xi = row(x, i);
      std::uint32_t acc = 0;
      for (unsigned j = 0; xi != 0; ++j, xi >>= 1)
        if (xi & 1u) acc |= row(y, j);
      out |= acc << (i * n);
    }
    return out;
  }

  std::uint32_t transpose(std::uint32_t x) const noexcept {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (x >> (i * n + j) & 1u) out |= 1u << (j * n + i);
    return out;
  }

  std::uint32_t identity() const noexcept {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n; ++i) out |= 1u << (i * n + i);
    return out;
  }

  std::string name(std::uint32_t r) const {
    std::string s = "{";
    bool first = true;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (r >> (i * n + j) & 1u) {
          if (!first) s += ',';
          s += static_cast<char>('a' + i);
          s += static_cast<char>('a' + j);
          first = false;
        }
    return s + "}";
  }
};

// Lazily computed facts about one algebra value; shared by copies.
struct Memo {
  std::once_flag sra_once;
  std::optional<std::string> sra_failure;
};

}  // namespace detail

/// A finite algebra of signature (join, meet, comp, pcomp, conv, bot, top, one).
///
/// Values are immutable; copies share storage. Operations are either backed
/// by explicit tables or, for full relation algebras too large to tabulate,
/// computed on bit-encoded relations.
class FiniteAlgebra {
 public:
  /// Validates index ranges and table shapes; axioms are checked separately.
  static FiniteAlgebra from_tables(const AlgebraTables& t) {
    const std::size_t n = t.size();
    if (n == 0) throw InputError("algebra '" + t.name + "': carrier is empty");
    if (n > kTableLimit) throw BudgetExceeded("algebra '" + t.name + "': too many elements for tables");
    auto check_len = [&](const std::vector<std::uint32_t>& v, std::size_t len, const char* what) {
      if (v.size() != len)
        throw InputError("algebra '" + t.name + "': table '" + what + "' has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(len));
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] >= n)
          throw InputError("algebra '" + t.name + "': table '" + what + "' entry " + std::to_string(i) +
                           " = " + std::to_string(v[i]) + " is out of range");
    };
    check_len(t.join, n * n, "join");
    check_len(t.meet, n * n, "meet");
    check_len(t.comp, n * n, "comp");
    check_len(t.conv, n, "conv");
    check_len(t.pcomp, n, "pcomp");
    for (auto [c, what] : {std::pair{t.bot, "bot"}, std::pair{t.top, "top"}, std::pair{t.one, "one"}})
      if (c >= n) throw InputError("algebra '" + t.name + "': constant '" + what + "' is out of range");

    FiniteAlgebra a;
    a.n_ = static_cast<std::uint32_t>(n);
    a.bot_ = t.bot;
    a.top_ = t.top;
    a.one_ = t.one;
    a.names_ = make_names(t.name, t.elements);
    auto tab = std::make_shared<Tables>();
    auto narrow = [](const std::vector<std::uint32_t>& v) {
      return std::vector<std::uint16_t>(v.begin(), v.end());
    };
    tab->join = narrow(t.join);
    tab->meet = narrow(t.meet);
    tab->comp = narrow(t.comp);
    tab->conv = narrow(t.conv);
    tab->pcomp = narrow(t.pcomp);
    a.tab_ = std::move(tab);
    return a;
  }

  /// All relations on a base set of the given size, computed on bit words.
  static FiniteAlgebra bit_relations(unsigned base, std::string name) {
    if (base < 1 || base > 4) throw InputError("relation base size must be in 1..4");
    detail::BitRelations br{base};
    const std::uint32_t n = br.full() + 1u;
    std::vector<std::string> names(n);
    for (std::uint32_t r = 0; r < n; ++r) names[r] = br.name(r);
    FiniteAlgebra a;
    a.n_ = n;
    a.bits_ = br;
    a.bot_ = 0;
    a.top_ = br.full();
    a.one_ = br.identity();
    a.names_ = make_names(std::move(name), names);
    return a;
  }

  const std::string& name() const noexcept { return names_->name; }
  std::size_t size() const noexcept { return n_; }
  bool degenerate() const noexcept { return n_ == 1; }
  bool valid(ElementId x) const noexcept { return x.index < n_; }

  ElementId bot() const noexcept { return {bot_}; }
  ElementId top() const noexcept { return {top_}; }
  ElementId one() const noexcept { return {one_}; }

  ElementId join(ElementId x, ElementId y) const noexcept {
    if (bits_) return {x.index | y.index};
    return {tab_->join[x.index * n_ + y.index]};
  }
  ElementId meet(ElementId x, ElementId y) const noexcept {
    if (bits_) return {x.index & y.index};
    return {tab_->meet[x.index * n_ + y.index]};
  }
  ElementId comp(ElementId x, ElementId y) const noexcept {
    if (bits_) return {bits_->compose(x.index, y.index)};
    return {tab_->comp[x.index * n_ + y.index]};
  }
  ElementId conv(ElementId x) const noexcept {
    if (bits_) return {bits_->transpose(x.index)};
    return {tab_->conv[x.index]};
  }
  ElementId pcomp(ElementId x) const noexcept {
    if (bits_) return {~x.index & bits_->full()};
    return {tab_->pcomp[x.index]};
  }
  ElementId comp(ElementId x, ElementId y, ElementId z) const noexcept { return comp(comp(x, y), z); }

  /// x ⊑ y, i.e. x ⊔ y = y. Unchecked; see sra::leq for the validating form.
  bool leq(ElementId x, ElementId y) const noexcept { return join(x, y) == y; }
  bool lt(ElementId x, ElementId y) const noexcept { return x != y && leq(x, y); }

  auto ids() const {
    return std::views::iota(std::uint32_t{0}, n_) |
           std::views::transform([](std::uint32_t i) { return ElementId{i}; });
  }

  const std::string& name_of(ElementId x) const { return names_->elements.at(x.index); }
  const std::vector<std::string>& element_names() const noexcept { return names_->elements; }

  /// Looks up an element by name; "bot", "top" and "one" name the constants
  /// unless the carrier itself uses those names.
  std::optional<ElementId> find(std::string_view name) const {
    auto it = names_->index.find(std::string(name));
    if (it != names_->index.end()) return ElementId{it->second};
    if (name == "bot") return bot();
    if (name == "top") return top();
    if (name == "one") return one();
    return std::nullopt;
  }

  ElementId require(std::string_view name) const {
    auto x = find(name);
    if (!x) throw InputError("algebra '" + this->name() + "' has no element named '" + std::string(name) + "'");
    return *x;
  }

  void require(ElementId x) const {
    if (!valid(x))
      throw InputError("element index " + std::to_string(x.index) + " is not valid in '" + name() + "' (size " +
                       std::to_string(n_) + ")");
  }

  bool tabulated() const noexcept { return !bits_.has_value(); }

  /// Materialises the operation tables (refused above kTableLimit).
  AlgebraTables tables() const {
    if (bits_ && n_ > kCubicBudget) throw BudgetExceeded("algebra '" + name() + "' is too large to tabulate");
    AlgebraTables t;
    t.name = name();
    t.elements = names_->elements;
    t.bot = bot_;
    t.top = top_;
    t.one = one_;
    t.join.resize(std::size_t(n_) * n_);
    t.meet.resize(t.join.size());
    t.comp.resize(t.join.size());
    t.conv.resize(n_);
    t.pcomp.resize(n_);
    for (auto x : ids()) {
      for (auto y : ids()) {
        std::size_t k = std::size_t(x.index) * n_ + y.index;
        t.join[k] = join(x, y).index;
        t.meet[k] = meet(x, y).index;
        t.comp[k] = comp(x, y).index;
      }
      t.conv[x.index] = conv(x).index;
      t.pcomp[x.index] = pcomp(x).index;
    }
    return t;
  }

  /// Same carrier size, constants and operations (names ignored).
  bool same_structure(const FiniteAlgebra& o) const {
    if (n_ != o.n_ || bot_ != o.bot_ || top_ != o.top_ || one_ != o.one_) return false;
    for (auto x : ids()) {
      if (conv(x) != o.conv(x) || pcomp(x) != o.pcomp(x)) return false;
      for (auto y : ids())
        if (join(x, y) != o.join(x, y) || meet(x, y) != o.meet(x, y) || comp(x, y) != o.comp(x, y)) return false;
    }
    return true;
  }

  /// Copy with a different label; shares all tables.
  FiniteAlgebra renamed(std::string name) const {
    FiniteAlgebra a = *this;
    a.names_ = make_names(std::move(name), names_->elements);
    return a;
  }

  detail::Memo& memo() const { return *memo_; }

 private:
  struct Names {
    std::string name;
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::uint32_t> index;
  };
  struct Tables {
    std::vector<std::uint16_t> join, meet, comp, conv, pcomp;
  };

  FiniteAlgebra() = default;

  static std::shared_ptr<const Names> make_names(std::string name, const std::vector<std::string>& elements) {
    auto names = std::make_shared<Names>();
    names->name = std::move(name);
    names->elements = elements;
    for (std::uint32_t i = 0; i < elements.size(); ++i)
      if (!names->index.emplace(elements[i], i).second)
        throw InputError("algebra '" + names->name + "': duplicate element name '" + elements[i] + "'");
    return names;
  }

  std::uint32_t n_ = 0;
  std::uint32_t bot_ = 0, top_ = 0, one_ = 0;
  std::optional<detail::BitRelations> bits_;
  std::shared_ptr<const Tables> tab_;
  std::shared_ptr<const Names> names_;
  std::shared_ptr<detail::Memo> memo_ = std::make_shared<detail::Memo>();
};

/// Lattice order x ⊑ y ⟺ x ⊔ y = y, with index validation.
inline bool leq(const FiniteAlgebra& a, ElementId x, ElementId y) {
  a.require(x);
  a.require(y);
  return a.leq(x, y);
}

/// Join of a finite non-empty set. The empty join is rejected, not read as ⊥.
inline ElementId big_sup(const FiniteAlgebra& a, std::span<const ElementId> p) {
  if (p.empty()) throw InputError("big_sup: the set must be non-empty");
  for (auto x : p) a.require(x);
  ElementId acc = p.front();
  for (auto x : p.subspan(1)) acc = a.join(acc, x);
  return acc;
}

inline std::vector<std::string> names_of(const FiniteAlgebra& a, std::span<const ElementId> xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(a.name_of(x));
  return out;
}

}  // namespace sra
