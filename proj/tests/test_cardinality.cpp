#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "catalog.hpp"
#include "oracles.hpp"
#include "sra/sra.hpp"

using namespace sra;

namespace {

CardinalityFn from_values(const std::vector<long long>& v) {
  std::vector<CardValue> out;
  for (auto x : v) out.push_back(x < 0 ? CardValue::infinity() : CardValue::finite(static_cast<std::uint64_t>(x)));
  return CardinalityFn(out);
}

oracle::Values to_values(const CardinalityFn& f) {
  oracle::Values v;
  for (auto c : f.values()) v.push_back(c.is_infinite() ? oracle::kInf : static_cast<long long>(c.value()));
  return v;
}

struct Case {
  FiniteAlgebra algebra;
  CardinalityFn fn;
  std::string label;
};

// Every function into {0, 1, 2, inf} on tiny algebras, plus a few shaped
// functions on larger ones.
std::vector<Case> corpus() {
  std::vector<Case> out;
  auto exhaustive = [&](const FiniteAlgebra& a) {
    const std::size_t n = a.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<long long> v(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 4) v[i] = c % 4 == 3 ? -1 : static_cast<long long>(c % 4);
      out.push_back({a, from_values(v), a.name() + "#" + std::to_string(code)});
    }
  };
  exhaustive(full_relation_algebra(1));
  exhaustive(chain3());
  exhaustive(testing_catalog::sub4());
  exhaustive(r6());
  for (auto a : {full_relation_algebra(2), matrix_algebra(chain3(), 2), testing_catalog::sub4_of_fullrel3()}) {
    auto c = atom_counting(a);
    std::vector<long long> twice, plus_one, zero(a.size(), 0), inf_top;
    for (auto x : a.ids()) {
      long long k = static_cast<long long>(c(x).value());
      twice.push_back(2 * k);
      plus_one.push_back(x == a.bot() ? 0 : k + 1);
      inf_top.push_back(x == a.top() ? -1 : k);
    }
    out.push_back({a, c, a.name() + "#C"});
    out.push_back({a, from_values(twice), a.name() + "#2C"});
    out.push_back({a, from_values(plus_one), a.name() + "#C+1"});
    out.push_back({a, from_values(zero), a.name() + "#0"});
    out.push_back({a, from_values(inf_top), a.name() + "#inf-top"});
  }
  return out;
}

// Implications of the equivalence theorem evaluated with the oracle.
void expect_equivalence_theorem(const Case& c) {
  const auto t = c.algebra.tables();
  const auto v = to_values(c.fn);
  oracle::Tab a{t};
  std::map<std::string, bool> h;
  for (const auto& id : oracle::axiom_ids()) h[id] = oracle::axiom_holds(t, v, id);
  const std::string& L = c.label;
  if (h["C1b"]) EXPECT_TRUE(h["C1a"]) << L;
  if (h["C3"] && h["C5c"]) EXPECT_TRUE(h["C5a"]) << L;
  if (h["C5b"] || h["C5e"]) EXPECT_TRUE(h["C6a"]) << L;
  if (h["C3"]) EXPECT_EQ(h["C6a"], h["C6b"]) << L;
  if (h["C3"] && h["C4b"]) EXPECT_EQ(h["C5a"], h["C5c"]) << L;
  if (h["C4b"]) {
    EXPECT_EQ(h["C5b"], h["C5d"]) << L;
    if (h["C5d"]) EXPECT_TRUE(h["C5e"]) << L;
    for (std::uint32_t x = 0; x < t.size(); ++x) EXPECT_TRUE(oracle::le_card(v[x], v[t.top])) << L;
    EXPECT_EQ(h["C7a"], h["C7b"]) << L;
  }
  if (h["C4b"] && h["C5c"]) {
    EXPECT_EQ(h["C5b"], h["C5d"]) << L;
    EXPECT_EQ(h["C5d"], h["C5e"]) << L;
    EXPECT_EQ(h["C5e"], h["C6a"]) << L;
  }
  const std::uint32_t n = a.n();
  auto mapping = [&](std::uint32_t y) {
    return oracle::is_univalent(t, y) && a.le(t.one, a.c(y, a.cv(y)));
  };
  if (h["C5b"] && h["C5c"])
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (oracle::is_univalent(t, x) && mapping(y)) EXPECT_EQ(v[a.c(x, y)], v[x]) << L;
  if (h["C3"] && h["C5b"] && h["C5c"])
    for (std::uint32_t p = 0; p < n; ++p)
      if (oracle::is_point(t, p)) EXPECT_EQ(v[p], v[t.one]) << L;
  if (h["C1a"] && h["C4a"]) {
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        if (a.m(x, y) != t.bot) continue;
        EXPECT_EQ(v[a.j(x, y)], oracle::add(v[x], v[y])) << L;
        for (std::uint32_t z = 0; z < n; ++z)
          if (a.m(x, z) == t.bot && a.m(y, z) == t.bot)
            EXPECT_EQ(v[a.j(a.j(x, y), z)], oracle::add(oracle::add(v[x], v[y]), v[z])) << L;
      }
    const auto at = oracle::atoms(t);
    for (std::uint32_t mask = 1; mask < (1u << at.size()); ++mask) {
      std::uint32_t s = t.bot;
      long long sum = 0;
      for (std::size_t i = 0; i < at.size(); ++i)
        if (mask >> i & 1u) {
          s = a.j(s, at[i]);
          sum = oracle::add(sum, v[at[i]]);
        }
      EXPECT_EQ(v[s], sum) << L;
    }
  }
  if (oracle::is_relation_algebra(t)) {
    if (h["C1a"] && h["C4a"]) EXPECT_TRUE(h["C4b"]) << L;
    if (h["C1b"] && h["C4a"] && h["C9"]) EXPECT_TRUE(h["C7a"]) << L;
  }
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "sra_test_card";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / name) << text;
  return dir / name;
}

}  // namespace

TEST(AxiomIds, ParseAndPrint) {
  EXPECT_EQ(kCardAxioms.size(), 18u);
  for (auto id : kCardAxioms) EXPECT_EQ(parse_card_axiom(to_string(id)), id);
  EXPECT_EQ(parse_card_axioms("all").size(), 18u);
  EXPECT_EQ(parse_card_axioms("C1a,C5b"), (std::vector<CardAxiom>{CardAxiom::C1a, CardAxiom::C5b}));
  EXPECT_THROW(parse_card_axiom("C10"), InputError);
  EXPECT_THROW(parse_card_axioms("C1a,,C2a"), InputError);
}

TEST(AtomsBelow, Examples) {
  for (auto& a : testing_catalog::mutation_catalog()) EXPECT_TRUE(atoms_below(a, a.bot()).empty());
  auto f2 = full_relation_algebra(2);
  EXPECT_EQ(atoms_below(f2, f2.top()).size(), 4u);
  auto r = r6();
  EXPECT_EQ(names_of(r, atoms_below(r, r.require("(1/2,1)"))), (std::vector<std::string>{"(0,1)", "(1/2,0)"}));
  EXPECT_TRUE(atoms_below(int_chain(), SymElem::integer(4)).empty());
}

TEST(CountC, Examples) {
  auto s = testing_catalog::sub4();
  EXPECT_EQ(count_C(s, s.top()), CardValue::finite(2));
  EXPECT_EQ(count_C(s, s.one()), CardValue::finite(1));
  auto c = chain3();
  EXPECT_EQ(count_C(c, c.require("1")), CardValue::finite(1));
  EXPECT_EQ(count_C(c, c.require("1/2")), CardValue::finite(1));
  auto z = int_chain();
  for (auto x : {z.bot(), z.top(), SymElem::integer(-3), SymElem::integer(0), SymElem::integer(12)})
    EXPECT_EQ(count_C(z, x), CardValue::finite(0));
  auto f2 = full_relation_algebra(2);
  EXPECT_EQ(count_C(f2, f2.top()), CardValue::finite(4));
  EXPECT_EQ(count_C(f2, f2.one()), CardValue::finite(2));
}

TEST(CountC, MatchesOracleOnCatalog) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    auto t = a.tables();
    auto c = atom_counting(a);
    for (auto x : a.ids()) EXPECT_EQ(c(x), CardValue::finite(oracle::count_atoms_below(t, x.index))) << a.name();
  }
}

TEST(CountC, ValuationMonotoneAndFaithful) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    auto c = atom_counting(a);
    const bool atomic = structural_predicates(a).atomic;
    for (auto x : a.ids()) {
      if (atomic) EXPECT_EQ(c(x) == CardValue::finite(0), x == a.bot()) << a.name();
      for (auto y : a.ids()) {
        EXPECT_EQ(c(x) + c(y), c(a.join(x, y)) + c(a.meet(x, y)));
        if (a.leq(x, y)) EXPECT_LE(c(x), c(y));
      }
    }
  }
}

TEST(AxiomCheck, R6Witnesses) {
  auto r = r6();
  auto c = atom_counting(r);
  auto c2b = check_card_axiom(r, c, CardAxiom::C2b);
  EXPECT_FALSE(c2b.passed());
  EXPECT_EQ(c2b.witness, (Tuple{r.require("(1,0)")}));
  auto c7a = check_card_axiom(r, c, CardAxiom::C7a);
  EXPECT_EQ(c7a.witness, (Tuple{r.require("(1/2,1)")}));
  EXPECT_FALSE(check_card_axiom(r, c, CardAxiom::C7b).passed());
}

TEST(AxiomCheck, C1aHoldsForCEverywhere) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    EXPECT_TRUE(check_card_axiom(a, atom_counting(a), CardAxiom::C1a).passed());
  }
}

TEST(AxiomCheck, FullRel2AllPass) {
  auto f2 = full_relation_algebra(2);
  for (auto& v : check_all_axioms(f2, atom_counting(f2))) EXPECT_TRUE(v.passed()) << to_string(v.axiom);
}

TEST(AxiomCheck, ScaledFunctionOnChain3) {
  auto c = chain3();
  auto f = from_values({0, 1, 2});
  for (auto& v : check_all_axioms(c, f)) {
    if (v.axiom == CardAxiom::C8) EXPECT_FALSE(v.passed());
    else EXPECT_TRUE(v.passed()) << to_string(v.axiom);
  }
  EXPECT_NE(f(c.require("1")), count_C(c, c.require("1")));
}

TEST(AxiomCheck, SubalgebraFailsOnlyC8) {
  for (auto s : {testing_catalog::sub4(), testing_catalog::sub4_of_fullrel3()})
    for (auto& v : check_all_axioms(s, atom_counting(s))) EXPECT_EQ(v.passed(), v.axiom != CardAxiom::C8);
}

TEST(AxiomCheck, AgreesWithOracleOnCorpus) {
  for (const auto& c : corpus()) {
    const auto t = c.algebra.tables();
    const auto vals = to_values(c.fn);
    auto verdicts = check_all_axioms(c.algebra, c.fn);
    for (std::size_t i = 0; i < kCardAxioms.size(); ++i)
      ASSERT_EQ(verdicts[i].passed(), oracle::axiom_holds(t, vals, oracle::axiom_ids()[i]))
          << c.label << " " << oracle::axiom_ids()[i];
  }
}

TEST(AxiomCheck, WitnessesAreLeastFailingTuples) {
  auto r = r6();
  auto c = atom_counting(r);
  auto w = check_card_axiom(r, c, CardAxiom::C4b);
  EXPECT_TRUE(w.passed());
  auto f = from_values({0, 1, 1, 0, 1, 2});  // not monotone at (1/2,1)
  auto v = check_card_axiom(r, f, CardAxiom::C4b);
  ASSERT_FALSE(v.passed());
  std::optional<Tuple> least;
  for (auto x : r.ids())
    for (auto y : r.ids())
      if (!least && r.leq(x, y) && !(f(x) <= f(y))) least = Tuple{x, y};
  EXPECT_EQ(v.witness, least);
}

TEST(AxiomCheck, SymbolicRefused) {
  auto z = int_chain();
  EXPECT_THROW(check_card_axiom(z, CardinalityFn{}, CardAxiom::C1a), UnsupportedModel);
  EXPECT_THROW(verify_nAB_card(z), UnsupportedModel);
}

TEST(Structural, Examples) {
  auto c = structural_predicates(chain3());
  EXPECT_TRUE(c.atomic);
  EXPECT_TRUE(c.atom_rectangular);
  EXPECT_FALSE(c.simple);
  auto r = structural_predicates(r6());
  EXPECT_TRUE(r.atomic);
  EXPECT_TRUE(r.simple);
  EXPECT_FALSE(r.atom_rectangular);
  auto z = structural_predicates(int_chain());
  EXPECT_FALSE(z.atomic);
  EXPECT_TRUE(z.atom_rectangular);
  EXPECT_TRUE(z.atom_simple);
}

TEST(AtomCalculus, HoldsOnCatalog) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    auto r = verify_atom_calculus(a);
    EXPECT_EQ(r.findings.size(), 7u);
    EXPECT_TRUE(r.passed()) << a.name();
  }
}

TEST(NABCard, HoldsOnCatalog) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    auto r = verify_nAB_card(a);
    EXPECT_TRUE(r.passed()) << a.name();
    const bool atomic = structural_predicates(a).atomic;
    EXPECT_EQ(r.count(Verdict::vacuous) == 0, atomic) << a.name();
  }
}

TEST(Equivalences, SuiteNeverFailsOnCorpus) {
  for (const auto& c : corpus()) {
    if (!check_sra(c.algebra).passed()) continue;
    auto r = verify_equivalences(c.algebra, c.fn);
    for (auto& f : r.findings) EXPECT_NE(f.verdict, Verdict::fail) << c.label << " " << f.id;
  }
}

TEST(Equivalences, TheoremHoldsOnCorpusByOracle) {
  for (const auto& c : corpus()) expect_equivalence_theorem(c);
}

TEST(Equivalences, RaItemsVacuousOutsideRelationAlgebras) {
  auto c = chain3();
  auto r = verify_equivalences(c, from_values({0, 1, 2}));
  EXPECT_EQ(r.find("equiv-ra-1")->verdict, Verdict::vacuous);
  EXPECT_EQ(r.find("equiv-ra-2")->verdict, Verdict::vacuous);
  auto f2 = full_relation_algebra(2);
  auto rf = verify_equivalences(f2, atom_counting(f2));
  EXPECT_TRUE(rf.passed());
  EXPECT_EQ(rf.count(Verdict::vacuous), 0u);
}

TEST(Equivalences, TopEquivalenceUnderMonotonicity) {
  std::size_t checked = 0;
  for (const auto& c : corpus()) {
    if (c.algebra.size() > 4) continue;
    auto v = check_all_axioms(c.algebra, c.fn);
    auto ok = [&](CardAxiom id) { return v[static_cast<std::size_t>(id)].passed(); };
    if (ok(CardAxiom::C4b)) {
      EXPECT_EQ(ok(CardAxiom::C7a), ok(CardAxiom::C7b)) << c.label;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Sufficient, Examples) {
  auto r = verify_sufficient_conditions(r6());
  EXPECT_EQ(r.find("suff-1")->verdict, Verdict::vacuous);
  EXPECT_EQ(r.find("suff-4")->verdict, Verdict::pass);
  auto c = verify_sufficient_conditions(chain3());
  EXPECT_EQ(c.find("suff-3")->verdict, Verdict::pass);
  auto f = verify_sufficient_conditions(full_relation_algebra(2));
  EXPECT_EQ(f.count(Verdict::pass), 6u);
}

TEST(Sufficient, HoldsOnCatalog) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    auto r = verify_sufficient_conditions(a);
    EXPECT_EQ(r.findings.size(), 6u);
    EXPECT_TRUE(r.passed()) << a.name();
  }
}

TEST(Sufficient, GateOnCorruptedAlgebra) {
  auto t = chain3().tables();
  t.pcomp[1] = 1;
  EXPECT_THROW(verify_sufficient_conditions(FiniteAlgebra::from_tables(t)), PreconditionError);
}

TEST(Collapse, Examples) {
  auto f3 = verify_collapse_theorems(full_relation_algebra(3));
  EXPECT_EQ(f3.find("atom-sra-ra")->verdict, Verdict::pass);
  auto r = verify_collapse_theorems(r6());
  EXPECT_EQ(r.find("atom-sra-ra")->verdict, Verdict::vacuous);
  auto c = verify_collapse_theorems(chain3());
  EXPECT_EQ(c.find("atom-sra-ra")->verdict, Verdict::vacuous);
}

TEST(Collapse, NoCatalogModelContradicts) {
  for (auto& a : testing_catalog::theorem_catalog()) {
    if (a.size() > 300) continue;
    EXPECT_TRUE(verify_collapse_theorems(a).passed()) << a.name();
  }
}

TEST(Representability, ProductOfSubalgebras) {
  auto s = testing_catalog::sub4();
  auto p = product(s, s);
  EXPECT_FALSE(non_rectangular_atoms(p).empty());
  // atoms of the 2-point subalgebra are univalent; those of the 3-point one are not
  EXPECT_TRUE(non_univalent_atoms(p).empty());
  auto t = testing_catalog::sub4_of_fullrel3();
  EXPECT_FALSE(non_univalent_atoms(product(t, t)).empty());
  EXPECT_FALSE(subidentities_without_small_rectangle(p).empty());
  EXPECT_FALSE(check_representability_conditions(p).passed());
  EXPECT_TRUE(check_representability_conditions(full_relation_algebra(2)).passed());
}

TEST(CardinalityFile, Load) {
  auto c = chain3();
  auto f = load_cardinality_fn(testing_catalog::models_dir() + "/doubled.json", c);
  EXPECT_EQ(f, from_values({0, 1, 2}));
  EXPECT_THROW(load_cardinality_fn(temp_file("missing.json", R"({"values":{"0":0,"1":2}})"), c), InputError);
  EXPECT_THROW(load_cardinality_fn(temp_file("unknown.json", R"({"values":{"0":0,"1/2":1,"1":2,"q":1}})"), c),
               InputError);
  EXPECT_THROW(load_cardinality_fn(temp_file("neg.json", R"({"values":{"0":0,"1/2":-1,"1":2}})"), c), InputError);
  auto inf = load_cardinality_fn(temp_file("inf.json", R"({"values":{"0":0,"1/2":1,"1":"inf"}})"), c);
  EXPECT_TRUE(inf(c.top()).is_infinite());
  EXPECT_EQ(cardinality_from_json(cardinality_to_json(inf, c), c), inf);
}

TEST(CardinalityFile, AllZeroFailsC1b) {
  auto f2 = full_relation_algebra(2);
  nlohmann::json j;
  for (auto x : f2.ids()) j["values"][f2.name_of(x)] = 0;
  auto f = cardinality_from_json(j, f2);
  EXPECT_FALSE(check_card_axiom(f2, f, CardAxiom::C1b).passed());
  EXPECT_TRUE(check_card_axiom(f2, f, CardAxiom::C1a).passed());
}

TEST(Determinism, AxiomVerdictsAcrossWorkers) {
  auto m = matrix_algebra(chain3(), 2);
  std::vector<long long> v;
  for (auto x : m.ids()) v.push_back(x.index % 5);
  auto f = from_values(v);
  std::vector<AxiomVerdict> base;
  {
    JobsGuard g(1);
    base = check_all_axioms(m, f);
  }
  for (unsigned j : {2u, 8u}) {
    JobsGuard g(j);
    auto got = check_all_axioms(m, f);
    ASSERT_EQ(got.size(), base.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].witness, base[i].witness);
  }
}
