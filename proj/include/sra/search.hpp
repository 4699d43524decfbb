#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sra/algebra.hpp"
#include "sra/cardinality.hpp"
#include "sra/element_props.hpp"
#include "sra/parallel.hpp"
#include "sra/zoo.hpp"

namespace sra {

// ---------------------------------------------------------------------------
// Subalgebras

inline std::string subalgebra_label(const FiniteAlgebra& a, const std::vector<ElementId>& carrier) {
  std::string s = "sub(" + a.name() + ";";
  for (std::size_t i = 0; i < carrier.size(); ++i) s += (i ? " " : "") + a.name_of(carrier[i]);
  return s + ")";
}

/// Every subalgebra with at most `max_size` elements, ordered by size and
/// then by carrier. Distinct carriers give distinct entries.
inline std::vector<Subalgebra> enumerate_subalgebras(const FiniteAlgebra& a, std::size_t max_size) {
  std::set<std::vector<ElementId>> seen;
  std::vector<std::vector<ElementId>> queue;
  if (auto base = closure(a, {}, max_size)) {
    seen.insert(*base);
    queue.push_back(*base);
  }
  // Each subalgebra is reachable by adding its elements one at a time, and
  // every intermediate closure stays inside it.
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto carrier = queue[i];
    if (carrier.size() >= max_size) continue;
    std::vector<ElementId> seed = carrier;
    seed.push_back(ElementId{0});
    for (auto e : a.ids()) {
      if (std::binary_search(carrier.begin(), carrier.end(), e)) continue;
      seed.back() = e;
      auto next = closure(a, seed, max_size);
      if (next && seen.insert(*next).second) queue.push_back(std::move(*next));
    }
  }
  std::vector<std::vector<ElementId>> carriers(seen.begin(), seen.end());
  std::stable_sort(carriers.begin(), carriers.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::vector<Subalgebra> out;
  for (auto& c : carriers) {
    std::string label = subalgebra_label(a, c);
    out.push_back(induced_subalgebra(a, std::move(c), std::move(label)));
  }
  return out;
}

/// Subalgebras of size ≤ max_sub in canonical order, then `a` itself when it
/// is larger than max_sub.
inline std::vector<FiniteAlgebra> search_space(const FiniteAlgebra& a, std::size_t max_sub) {
  std::vector<FiniteAlgebra> out;
  for (auto& s : enumerate_subalgebras(a, max_sub)) out.push_back(std::move(s.algebra));
  if (a.size() > max_sub) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Element predicates

/// Boolean formula over profile flag names: `!` or `¬` negation, `&` or `∧`
/// conjunction, `|` or `∨` disjunction, parentheses.
class ElementPredicate {
 public:
  static ElementPredicate parse(std::string_view text) {
    Parser p{text, 0};
    auto node = p.disjunction();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected '" + std::string(text.substr(p.pos, 1)) + "'");
    return ElementPredicate(std::string(text), std::move(node));
  }

  const std::string& text() const noexcept { return text_; }
  bool operator()(const ElementProfile& prof) const { return node_->eval(prof); }

 private:
  struct Node {
    enum class Kind { flag, negation, conjunction, disjunction } kind;
    bool ElementProfile::*flag = nullptr;
    std::vector<std::shared_ptr<const Node>> kids;

    bool eval(const ElementProfile& p) const {
      switch (kind) {
        case Kind::flag: return p.*flag;
        case Kind::negation: return !kids[0]->eval(p);
        case Kind::conjunction:
          return std::all_of(kids.begin(), kids.end(), [&](const auto& k) { return k->eval(p); });
        case Kind::disjunction:
          return std::any_of(kids.begin(), kids.end(), [&](const auto& k) { return k->eval(p); });
      }
      return false;
    }
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Parser {
    std::string_view s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& msg) const {
      throw InputError("predicate '" + std::string(s) + "': " + msg);
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(std::string_view tok) {
      skip();
      if (s.substr(pos, tok.size()) != tok) return false;
      pos += tok.size();
      return true;
    }
    NodePtr disjunction() {
      std::vector<NodePtr> kids{conjunction()};
      while (eat("|") || eat("∨")) kids.push_back(conjunction());
      if (kids.size() == 1) return kids[0];
      return std::make_shared<Node>(Node{Node::Kind::disjunction, nullptr, std::move(kids)});
    }
    NodePtr conjunction() {
      std::vector<NodePtr> kids{unary()};
      while (eat("&") || eat("∧")) kids.push_back(unary());
      if (kids.size() == 1) return kids[0];
      return std::make_shared<Node>(Node{Node::Kind::conjunction, nullptr, std::move(kids)});
    }
    NodePtr unary() {
      if (eat("!") || eat("¬")) return std::make_shared<Node>(Node{Node::Kind::negation, nullptr, {unary()}});
      if (eat("(")) {
        auto n = disjunction();
        if (!eat(")")) fail("missing ')'");
        return n;
      }
      skip();
      std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '-' || s[pos] == '_'))
        ++pos;
      std::string_view name = s.substr(start, pos - start);
      if (name.empty()) fail(pos < s.size() ? "unexpected '" + std::string(s.substr(pos, 1)) + "'" : "expected a name");
      for (const auto& [flag_name, member] : kProfileFlags)
        if (flag_name == name) return std::make_shared<Node>(Node{Node::Kind::flag, member, {}});
      fail("unknown property '" + std::string(name) + "'");
    }
  };

  ElementPredicate(std::string text, NodePtr node) : text_(std::move(text)), node_(std::move(node)) {}

  std::string text_;
  NodePtr node_;
};

struct ScanRecord {
  std::string algebra;
  std::size_t size = 0;
  std::string status;  // "scanned", "witness" or a reason for skipping
  std::uint64_t candidates = 0;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

struct ElementWitness {
  std::size_t catalog_index = 0;
  FiniteAlgebra algebra;
  ElementId element;
};

struct ElementSearchResult {
  std::optional<ElementWitness> witness;
  std::vector<ScanRecord> scanned;
};

/// Elements of `a` satisfying `pred`, in carrier order.
inline std::vector<ElementId> find_element_witnesses(const FiniteAlgebra& a, const ElementPredicate& pred) {
  Profiler prof(a);
  std::vector<char> hit(a.size(), 0);
  for_each_index(a.size(), [&](std::size_t i) { hit[i] = pred(prof(ElementId{static_cast<std::uint32_t>(i)})); });
  std::vector<ElementId> out;
  for (auto x : a.ids())
    if (hit[x.index]) out.push_back(x);
  return out;
}

/// First element satisfying `pred`, scanning catalog entries in order and,
/// within each, its subalgebras up to `max_sub` elements before the entry.
inline ElementSearchResult find_element_witness(const std::vector<FiniteAlgebra>& catalog, const ElementPredicate& pred,
                                                std::size_t max_sub) {
  ElementSearchResult res;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    for (auto& alg : search_space(catalog[c], max_sub)) {
      Profiler prof(alg);
      auto hit = first_hit<ElementId>(alg.size(), [&](std::size_t i) -> std::optional<ElementId> {
        ElementId x{static_cast<std::uint32_t>(i)};
        if (pred(prof(x))) return x;
        return std::nullopt;
      });
      res.scanned.push_back({alg.name(), alg.size(), hit ? "witness" : "scanned", hit ? hit->first + 1 : alg.size()});
      if (hit) {
        res.witness = ElementWitness{c, std::move(alg), hit->second};
        return res;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Valuations

/// Refuse enumerations whose candidate space exceeds this.
inline constexpr double kValuationBudget = 1e7;

namespace detail {

inline std::vector<CardValue> value_domain(unsigned max_card, bool with_infinity) {
  std::vector<CardValue> out;
  for (unsigned v = 0; v <= max_card; ++v) out.push_back(CardValue::finite(v));
  if (with_infinity) out.push_back(CardValue::infinity());
  return out;
}

inline bool assumes(const std::vector<CardAxiom>& set, CardAxiom id) {
  return std::find(set.begin(), set.end(), id) != set.end();
}

// Elements that are neither ⊥ nor the join of two strictly smaller elements.
// For the others, split[x] holds such a pair.
struct JoinStructure {
  std::vector<ElementId> order;  // by down-set size, then index
  std::vector<char> irreducible;
  std::vector<std::pair<ElementId, ElementId>> split;
  std::size_t free_count = 0;  // ⊥ and the join-irreducibles

  explicit JoinStructure(const FiniteAlgebra& a) : irreducible(a.size(), 0), split(a.size()) {
    std::vector<std::size_t> down(a.size(), 0);
    for (auto x : a.ids())
      for (auto y : a.ids())
        if (a.leq(y, x)) ++down[x.index];
    order.assign(a.ids().begin(), a.ids().end());
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId x, ElementId y) { return down[x.index] < down[y.index]; });
    for (auto x : a.ids()) {
      if (x == a.bot()) {
        ++free_count;
        continue;
      }
      bool found = false;
      for (auto y : a.ids()) {
        if (!a.lt(y, x)) continue;
        for (auto z : a.ids())
          if (a.lt(z, x) && a.join(y, z) == x) {
            split[x.index] = {y, z};
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) {
        irreducible[x.index] = 1;
        ++free_count;
      }
    }
  }
};

}  // namespace detail

/// Number of candidates enumerate_valuations would branch over.
inline double valuation_space(const FiniteAlgebra& a, const std::vector<CardAxiom>& assume, unsigned max_card) {
  const double base = max_card + 1 + (detail::assumes(assume, CardAxiom::C9) ? 0 : 1);
  if (!detail::assumes(assume, CardAxiom::C4a)) return std::pow(base, static_cast<double>(a.size()));
  const std::size_t free = detail::JoinStructure(a).free_count;
  return std::pow(base, static_cast<double>(free));
}

/// Every cardinality function with values in {0..max_card}, plus ∞ unless C9
/// is assumed, satisfying all assumed axioms; in lexicographic order.
///
/// Elements are assigned bottom-up. With C4a assumed only ⊥ and the
/// join-irreducibles are branched on freely; any other x = y ⊔ z takes the
/// value C4a forces along that split, and every pair whose join and meet are
/// already assigned is checked on the way. The per-element axioms C1a, C1b,
/// C2a and C2b restrict each value as it is assigned. Complete candidates are
/// then filtered by all assumed axioms. Throws BudgetExceeded when the
/// candidate space estimate or the number of search nodes exceeds 10^7.
inline std::vector<CardinalityFn> enumerate_valuations(const FiniteAlgebra& a, const std::vector<CardAxiom>& assume,
                                                       unsigned max_card) {
  using detail::assumes;
  const double space = valuation_space(a, assume, max_card);
  if (space > kValuationBudget)
    throw BudgetExceeded("valuation enumeration on '" + a.name() + "' needs " + std::to_string(space) +
                         " candidates; the limit is 10^7");
  const auto domain = detail::value_domain(max_card, !assumes(assume, CardAxiom::C9));
  const bool additive = assumes(assume, CardAxiom::C4a);
  const bool c1a = assumes(assume, CardAxiom::C1a), c1b = assumes(assume, CardAxiom::C1b);
  const bool c2a = assumes(assume, CardAxiom::C2a), c2b = assumes(assume, CardAxiom::C2b);
  const CardValue zero = CardValue::finite(0), unit = CardValue::finite(1), cap = CardValue::finite(max_card);

  std::vector<char> atom(a.size()), univ(a.size());
  for (auto x : a.ids()) {
    atom[x.index] = is_atom(a, x);
    univ[x.index] = is_univalent(a, x);
  }
  auto allowed = [&](ElementId x, CardValue c) {
    if (c1a && x == a.bot() && c != zero) return false;
    if (c1b && (c == zero) != (x == a.bot())) return false;
    if (c2a && atom[x.index] && c != unit) return false;
    if (c2b && (atom[x.index] != 0) != (c == unit)) return false;
    return true;
  };

  const detail::JoinStructure js(a);
  std::vector<std::size_t> pos(a.size());
  for (std::size_t k = 0; k < js.order.size(); ++k) pos[js.order[k].index] = k;

  std::vector<CardinalityFn> out;
  std::vector<std::vector<CardValue>> batch;
  auto flush = [&] {
    std::vector<char> keep(batch.size(), 0);
    for_each_index(batch.size(), [&](std::size_t i) {
      CardinalityFn f(batch[i]);
      AxiomChecker check(a, f, atom, univ);
      keep[i] = std::all_of(assume.begin(), assume.end(), [&](CardAxiom id) { return check(id).passed(); });
    });
    for (std::size_t i = 0; i < batch.size(); ++i)
      if (keep[i]) out.emplace_back(std::move(batch[i]));
    batch.clear();
  };

  std::vector<CardValue> v(a.size());
  double nodes = 0;
  // C4a on every pair (x, y) with x at position k and all four terms known.
  auto consistent = [&](ElementId x, std::size_t k) {
    if (!additive) return true;
    for (std::size_t i = 0; i <= k; ++i) {
      const ElementId y = js.order[i];
      const ElementId j = a.join(x, y), m = a.meet(x, y);
      if (pos[j.index] > k || pos[m.index] > k) continue;
      if (v[x.index] + v[y.index] != v[j.index] + v[m.index]) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (++nodes > kValuationBudget)
      throw BudgetExceeded("valuation enumeration on '" + a.name() + "' exceeded 10^7 search nodes");
    if (k == js.order.size()) {
      batch.push_back(v);
      if (batch.size() >= 4096) flush();
      return;
    }
    const ElementId x = js.order[k];
    auto assign = [&](CardValue c) {
      if (!allowed(x, c)) return;
      v[x.index] = c;
      if (consistent(x, k)) self(self, k + 1);
    };
    auto branch = [&] {
      for (auto c : domain) assign(c);
    };
    if (!additive || x == a.bot() || js.irreducible[x.index]) {
      branch();
      return;
    }
    // v(y) + v(z) = v(x) + v(y ⊓ z)
    auto [y, z] = js.split[x.index];
    const CardValue lhs = v[y.index] + v[z.index], m = v[a.meet(y, z).index];
    if (m.is_infinite()) {
      if (lhs.is_finite()) return;
      branch();
    } else if (lhs.is_infinite()) {
      if (domain.back().is_finite()) return;
      assign(CardValue::infinity());
    } else if (lhs.value() >= m.value()) {
      const CardValue r = CardValue::finite(lhs.value() - m.value());
      if (r <= cap) assign(r);
    }
  };
  dfs(dfs, 0);
  flush();
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Independence

struct SearchSpec {
  std::vector<FiniteAlgebra> catalog;
  std::vector<CardAxiom> assume;
  std::vector<CardAxiom> refute;
  std::size_t max_sub = 8;
  unsigned max_card = 4;
};

inline void validate(const SearchSpec& spec) {
  for (auto id : spec.assume)
    if (detail::assumes(spec.refute, id))
      throw InputError("axiom " + std::string(to_string(id)) + " is both assumed and refuted");
  if (spec.catalog.empty()) throw InputError("search catalog is empty");
}

struct CardWitness {
  std::size_t catalog_index = 0;
  FiniteAlgebra algebra;
  CardinalityFn fn;
  std::vector<AxiomVerdict> verdicts;  // all 18, from a fresh check
};

struct IndependenceResult {
  std::optional<CardWitness> witness;
  std::vector<ScanRecord> scanned;
};

/// First (algebra, function) pair, in catalog then subalgebra-size then
/// lexicographic function order, satisfying every assumed axiom and
/// violating every refuted one. The witness is re-checked before returning.
inline IndependenceResult find_independence_witness(const SearchSpec& spec) {
  validate(spec);
  IndependenceResult res;
  for (std::size_t c = 0; c < spec.catalog.size(); ++c) {
    for (auto& alg : search_space(spec.catalog[c], spec.max_sub)) {
      ScanRecord rec{alg.name(), alg.size(), "scanned", 0};
      const double space = valuation_space(alg, spec.assume, spec.max_card);
      std::vector<CardinalityFn> fns;
      try {
        if (space > kValuationBudget || alg.size() > kCubicBudget) throw BudgetExceeded("");
        fns = enumerate_valuations(alg, spec.assume, spec.max_card);
      } catch (const BudgetExceeded&) {
        rec.status = "skipped: valuation space too large";
        res.scanned.push_back(rec);
        continue;
      }
      rec.candidates = fns.size();
      std::vector<char> atom(alg.size()), univ(alg.size());
      for (auto x : alg.ids()) {
        atom[x.index] = is_atom(alg, x);
        univ[x.index] = is_univalent(alg, x);
      }
      auto hit = first_hit<std::size_t>(fns.size(), [&](std::size_t i) -> std::optional<std::size_t> {
        AxiomChecker check(alg, fns[i], atom, univ);
        for (auto id : spec.refute)
          if (check(id).passed()) return std::nullopt;
        return i;
      });
      if (!hit) {
        res.scanned.push_back(rec);
        continue;
      }
      rec.status = "witness";
      res.scanned.push_back(rec);
      CardinalityFn fn = fns[hit->second];
      auto verdicts = check_all_axioms(alg, fn);
      for (auto id : spec.assume)
        if (!verdicts[static_cast<std::size_t>(id)].passed())
          throw std::logic_error("witness re-check: assumed axiom fails");
      for (auto id : spec.refute)
        if (verdicts[static_cast<std::size_t>(id)].passed())
          throw std::logic_error("witness re-check: refuted axiom holds");
      res.witness = CardWitness{c, std::move(alg), std::move(fn), std::move(verdicts)};
      return res;
    }
  }
  return res;
}

}  // namespace sra
