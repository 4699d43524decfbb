#include <gtest/gtest.h>

#include <algorithm>

#include "catalog.hpp"
#include "oracles.hpp"
#include "sra/sra.hpp"

using namespace sra;

namespace {

std::vector<std::vector<CardValue>> values_of(const std::vector<CardinalityFn>& fns) {
  std::vector<std::vector<CardValue>> out;
  for (auto& f : fns) out.push_back(f.values());
  return out;
}

// Every function into {0..K} (and ∞ unless C9 is assumed) that passes the
// oracle for each assumed axiom, in lexicographic order.
std::vector<std::vector<CardValue>> brute_force(const FiniteAlgebra& a, const std::vector<CardAxiom>& assume,
                                                unsigned k) {
  const bool with_inf = std::find(assume.begin(), assume.end(), CardAxiom::C9) == assume.end();
  std::vector<long long> domain;
  for (unsigned i = 0; i <= k; ++i) domain.push_back(i);
  if (with_inf) domain.push_back(oracle::kInf);
  const auto t = a.tables();
  const std::size_t n = a.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<std::vector<CardValue>> out;
  while (true) {
    oracle::Values v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = domain[digit[i]];
    bool ok = true;
    for (auto id : assume) ok = ok && oracle::axiom_holds(t, v, std::string(to_string(id)));
    if (ok) {
      std::vector<CardValue> cv;
      for (auto x : v) cv.push_back(x == oracle::kInf ? CardValue::infinity() : CardValue::finite(x));
      out.push_back(cv);
    }
    std::size_t i = n;
    while (i > 0 && ++digit[i - 1] == domain.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CardAxiom> ax(const char* s) { return parse_card_axioms(s); }

}  // namespace

TEST(Subalgebras, Examples) {
  auto f2 = full_relation_algebra(2);
  auto subs = enumerate_subalgebras(f2, 4);
  auto has = [](const std::vector<Subalgebra>& v, const std::vector<ElementId>& c) {
    return std::any_of(v.begin(), v.end(), [&](const Subalgebra& s) { return s.parent == c; });
  };
  std::vector<ElementId> c4{f2.bot(), f2.pcomp(f2.one()), f2.one(), f2.top()};
  std::sort(c4.begin(), c4.end());
  EXPECT_TRUE(has(subs, c4));
  auto f3 = full_relation_algebra(3);
  std::vector<ElementId> d4{f3.bot(), f3.one(), f3.pcomp(f3.one()), f3.top()};
  std::sort(d4.begin(), d4.end());
  EXPECT_TRUE(has(enumerate_subalgebras(f3, 4), d4));
  auto c = chain3();
  auto cs = enumerate_subalgebras(c, 3);
  ASSERT_FALSE(cs.empty());
  EXPECT_EQ(cs.back().parent.size(), 3u);
}

TEST(Subalgebras, MatchBruteForceAndAreClosed) {
  for (auto a : {full_relation_algebra(2), chain3(), r6(), testing_catalog::sub4()}) {
    const auto t = a.tables();
    for (std::size_t max : {1u, 2u, 4u, 8u, 16u}) {
      auto subs = enumerate_subalgebras(a, max);
      std::set<std::set<std::uint32_t>> got;
      for (auto& s : subs) {
        std::set<std::uint32_t> c;
        for (auto e : s.parent) c.insert(e.index);
        EXPECT_TRUE(oracle::is_closed(t, c));
        EXPECT_TRUE(got.insert(c).second) << "duplicate carrier";
      }
      EXPECT_EQ(got, oracle::subalgebras(t, max)) << a.name() << " " << max;
      for (std::size_t i = 1; i < subs.size(); ++i)
        EXPECT_LE(subs[i - 1].algebra.size(), subs[i].algebra.size());
    }
  }
}

TEST(Subalgebras, FourElementSubalgebrasOfFullRel3AreClosed) {
  auto f3 = full_relation_algebra(3);
  auto t = f3.tables();
  for (auto& s : enumerate_subalgebras(f3, 4)) {
    std::set<std::uint32_t> c;
    for (auto e : s.parent) c.insert(e.index);
    EXPECT_TRUE(oracle::is_closed(t, c));
    EXPECT_TRUE(check_sra(s.algebra).passed());
  }
}

TEST(Predicate, Parse) {
  auto p = ElementPredicate::parse("atom&!univalent");
  ElementProfile e;
  e.atom = true;
  EXPECT_TRUE(p(e));
  e.univalent = true;
  EXPECT_FALSE(p(e));
  auto q = ElementPredicate::parse("point ∧ ¬ideal-point");
  e = {};
  e.point = true;
  EXPECT_TRUE(q(e));
  auto r = ElementPredicate::parse("(vector | covector) & !ideal");
  e = {};
  e.covector = true;
  EXPECT_TRUE(r(e));
  e.ideal = true;
  EXPECT_FALSE(r(e));
  EXPECT_THROW(ElementPredicate::parse("atom & bogus"), InputError);
  EXPECT_THROW(ElementPredicate::parse("atom &"), InputError);
  EXPECT_THROW(ElementPredicate::parse("(atom"), InputError);
  EXPECT_THROW(ElementPredicate::parse(""), InputError);
}

TEST(ElementSearch, AtomNotUnivalent) {
  auto res = find_element_witness({full_relation_algebra(3)}, ElementPredicate::parse("atom&!univalent"), 8);
  ASSERT_TRUE(res.witness);
  const auto& w = *res.witness;
  EXPECT_EQ(w.algebra.size(), 4u);
  EXPECT_EQ(w.element, w.algebra.pcomp(w.algebra.one()));
  EXPECT_EQ(w.algebra.name_of(w.element), "{ab,ac,ba,bc,ca,cb}");
  EXPECT_EQ(res.scanned.back().status, "witness");
}

TEST(ElementSearch, PointsThatAreNotIdealPoints) {
  auto f2 = full_relation_algebra(2);
  auto p = product(f2, f2);
  auto pred = ElementPredicate::parse("point ∧ ¬ideal-point");
  auto all = find_element_witnesses(p, pred);
  EXPECT_EQ(all.size(), 4u);
  auto res = find_element_witness({p}, pred, 0);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->element, all.front());
}

TEST(ElementSearch, ContradictionIsExhausted) {
  auto res = find_element_witness({full_relation_algebra(2), chain3()}, ElementPredicate::parse("atom & !atom"), 8);
  EXPECT_FALSE(res.witness);
  EXPECT_FALSE(res.scanned.empty());
  for (auto& s : res.scanned) EXPECT_EQ(s.status, "scanned");
}

TEST(Valuations, UniqueOnSubalgebra) {
  auto s = testing_catalog::sub4();
  auto fns = enumerate_valuations(s, ax("C1a,C2a,C4a"), 4);
  ASSERT_EQ(fns.size(), 1u);
  EXPECT_EQ(fns[0], atom_counting(s));
}

TEST(Valuations, ScaledFunctionOnChain3) {
  auto c = chain3();
  auto fns = enumerate_valuations(c, ax("C1a,C4a"), 2);
  auto has = [&](std::vector<std::uint64_t> v) {
    std::vector<CardValue> cv;
    for (auto x : v) cv.push_back(CardValue::finite(x));
    return std::find(fns.begin(), fns.end(), CardinalityFn(cv)) != fns.end();
  };
  EXPECT_TRUE(has({0, 1, 1}));
  EXPECT_TRUE(has({0, 1, 2}));
}

TEST(Valuations, ContainsCOnAtomicModels) {
  for (auto a : {full_relation_algebra(2), chain3(), r6(), testing_catalog::sub4()}) {
    const unsigned k = static_cast<unsigned>(atoms(a).size());
    auto fns = enumerate_valuations(a, ax("C1a,C2a,C4a"), k);
    EXPECT_NE(std::find(fns.begin(), fns.end(), atom_counting(a)), fns.end()) << a.name();
  }
}

TEST(Valuations, PrunedMatchesBruteForce) {
  const std::vector<std::vector<CardAxiom>> specs{ax("C1a,C4a"), ax("C1a,C2a,C4a"), ax("C4a"), ax("C1b,C4a,C9"),
                                                  ax("C4a,C4b,C3"), ax("C2b,C4a,C5c")};
  for (auto a : {full_relation_algebra(1), chain3(), r6(), testing_catalog::sub4()})
    for (auto& spec : specs)
      for (unsigned k : {1u, 2u, 3u})
        EXPECT_EQ(values_of(enumerate_valuations(a, spec, k)), brute_force(a, spec, k)) << a.name() << " K=" << k;
}

TEST(Valuations, UnprunedMatchesBruteForce) {
  const std::vector<std::vector<CardAxiom>> specs{ax("C1a"), ax("C3,C4b"), ax("C2a,C9"), ax("C5b")};
  for (auto a : {full_relation_algebra(1), chain3(), testing_catalog::sub4()})
    for (auto& spec : specs)
      for (unsigned k : {1u, 2u})
        EXPECT_EQ(values_of(enumerate_valuations(a, spec, k)), brute_force(a, spec, k)) << a.name() << " K=" << k;
}

TEST(Valuations, PrunedEqualsUnprunedFilteredByC4a) {
  for (auto a : {chain3(), r6(), testing_catalog::sub4()})
    for (unsigned k : {1u, 2u, 3u}) {
      auto pruned = enumerate_valuations(a, ax("C1a,C4a"), k);
      auto all = enumerate_valuations(a, ax("C1a"), k);
      std::vector<CardinalityFn> filtered;
      for (auto& f : all)
        if (check_card_axiom(a, f, CardAxiom::C4a).passed()) filtered.push_back(f);
      EXPECT_EQ(pruned, filtered) << a.name() << " K=" << k;
    }
}

TEST(Valuations, BudgetGuard) {
  auto m = matrix_algebra(chain3(), 2);
  EXPECT_THROW(enumerate_valuations(m, ax("C1a"), 4), BudgetExceeded);
  EXPECT_GT(valuation_space(m, ax("C1a"), 4), kValuationBudget);
}

TEST(Independence, SpecValidation) {
  SearchSpec s;
  s.catalog = {chain3()};
  s.assume = ax("C1a");
  s.refute = ax("C1a");
  EXPECT_THROW(find_independence_witness(s), InputError);
  SearchSpec e;
  e.assume = ax("C1a");
  EXPECT_THROW(find_independence_witness(e), InputError);
}

TEST(Independence, CountingWitnessOnFullRel2) {
  SearchSpec s;
  s.catalog = {full_relation_algebra(2)};
  s.assume = ax("C1a,C2a,C4a,C8");
  s.max_sub = 0;
  auto res = find_independence_witness(s);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->fn, atom_counting(full_relation_algebra(2)));
  EXPECT_EQ(res.witness->algebra.name(), "FullRel(2)");
}

TEST(Independence, WitnessReverifies) {
  SearchSpec s;
  s.catalog = {chain3(), r6()};
  s.assume = ax("C1a,C4a");
  s.refute = ax("C2b,C8");
  auto res = find_independence_witness(s);
  ASSERT_TRUE(res.witness);
  auto v = check_all_axioms(res.witness->algebra, res.witness->fn);
  for (auto id : s.assume) EXPECT_TRUE(v[static_cast<std::size_t>(id)].passed());
  for (auto id : s.refute) EXPECT_FALSE(v[static_cast<std::size_t>(id)].passed());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i].witness, res.witness->verdicts[i].witness);
}

TEST(Independence, ExhaustionIsReported) {
  SearchSpec s;
  s.catalog = build_catalog("fullrel:2,chain3,r6");
  s.assume = ax("C1b,C2a,C2b,C3,C4a,C5b");
  s.refute = ax("C5a");
  auto res = find_independence_witness(s);
  EXPECT_FALSE(res.witness);
  EXPECT_FALSE(res.scanned.empty());
}

TEST(Independence, IdenticalAcrossWorkers) {
  SearchSpec s;
  s.catalog = build_catalog("fullrel:2,chain3,r6");
  s.assume = ax("C1a,C4a");
  s.refute = ax("C7a");
  IndependenceResult base;
  {
    JobsGuard g(1);
    base = find_independence_witness(s);
  }
  ASSERT_TRUE(base.witness);
  for (unsigned j : {2u, 8u}) {
    JobsGuard g(j);
    auto r = find_independence_witness(s);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->algebra.name(), base.witness->algebra.name());
    EXPECT_EQ(r.witness->fn, base.witness->fn);
    EXPECT_EQ(r.scanned, base.scanned);
  }
}

TEST(ElementSearch, IdenticalAcrossWorkers) {
  auto pred = ElementPredicate::parse("atom&!univalent");
  std::vector<ScanRecord> base;
  {
    JobsGuard g(1);
    base = find_element_witness({full_relation_algebra(3)}, pred, 8).scanned;
  }
  for (unsigned j : {2u, 8u}) {
    JobsGuard g(j);
    EXPECT_EQ(find_element_witness({full_relation_algebra(3)}, pred, 8).scanned, base);
  }
}
