#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "sra/algebra.hpp"

namespace sra {

/// Outcome of one checked item.
///
/// vacuous: the item's hypotheses do not hold on this model, so nothing was
/// asserted. bounded: passed, but on a sampled family rather than all of it.
enum class Verdict { pass, fail, vacuous, bounded, skipped };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
    case Verdict::bounded: return "bounded";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct Finding {
  std::string id;
  Verdict verdict = Verdict::pass;
  Tuple witness;
  std::string note;

  bool failed() const noexcept { return verdict == Verdict::fail; }
  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Ordered list of findings from one theorem or property suite.
struct Report {
  std::string title;
  std::vector<Finding> findings;

  bool passed() const {
    return std::none_of(findings.begin(), findings.end(), [](const Finding& f) { return f.failed(); });
  }

  const Finding* find(std::string_view id) const {
    for (const auto& f : findings)
      if (f.id == id) return &f;
    return nullptr;
  }

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [v](const Finding& f) { return f.verdict == v; }));
  }

  Finding& add(std::string id, Verdict v, Tuple witness = {}, std::string note = {}) {
    findings.push_back(Finding{std::move(id), v, std::move(witness), std::move(note)});
    return findings.back();
  }

  friend bool operator==(const Report&, const Report&) = default;
};

/// pass when no witness, fail with the witness otherwise.
inline Finding& add_check(Report& r, std::string id, const std::optional<Tuple>& witness, std::string note = {}) {
  return witness ? r.add(std::move(id), Verdict::fail, *witness, std::move(note))
                 : r.add(std::move(id), Verdict::pass, {}, std::move(note));
}

}  // namespace sra
