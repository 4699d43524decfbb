#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sra/algebra.hpp"
#include "sra/axioms.hpp"
#include "sra/cardinality.hpp"
#include "sra/element_props.hpp"
#include "sra/io.hpp"
#include "sra/model_spec.hpp"
#include "sra/parallel.hpp"
#include "sra/report.hpp"
#include "sra/representation.hpp"
#include "sra/search.hpp"

namespace sra::cli {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

// ---------------------------------------------------------------------------
// Rendering. The text form is a fixed rendering of the JSON tree.

namespace detail {

inline std::string scalar(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool flat(const ojson& v) {
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const ojson& e) { return e.is_primitive(); });
  return v.is_primitive();
}

inline std::string inline_value(const ojson& v) {
  if (!v.is_array()) return scalar(v);
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
  return s + "]";
}

inline void render(const ojson& j, const std::string& indent, std::ostream& out) {
  for (const auto& [key, v] : j.items()) {
    if (flat(v)) {
      out << indent << key << ": " << inline_value(v) << '\n';
    } else if (v.is_object()) {
      out << indent << key << ":\n";
      render(v, indent + "  ", out);
    } else {
      out << indent << key << ":\n";
      for (const auto& item : v) {
        if (item.is_object() && std::all_of(item.begin(), item.end(), [](const ojson& e) { return flat(e); })) {
          std::string line;
          for (const auto& [k, e] : item.items()) line += (line.empty() ? "" : ", ") + k + ": " + inline_value(e);
          out << indent << "  - " << line << '\n';
        } else if (item.is_object()) {
          out << indent << "  -\n";
          render(item, indent + "    ", out);
        } else {
          out << indent << "  - " << inline_value(item) << '\n';
        }
      }
    }
  }
}

}  // namespace detail

inline std::string render_text(const ojson& j) {
  std::ostringstream s;
  detail::render(j, "", s);
  return s.str();
}

// ---------------------------------------------------------------------------
// JSON views of library results

namespace detail {

inline ojson names_json(const FiniteAlgebra& a, const std::vector<ElementId>& xs) {
  ojson out = ojson::array();
  for (auto x : xs) out.push_back(a.name_of(x));
  return out;
}

inline ojson finding_json(const FiniteAlgebra& a, const Finding& f) {
  ojson j;
  j["id"] = f.id;
  j["verdict"] = std::string(to_string(f.verdict));
  if (!f.witness.empty()) j["witness"] = names_json(a, f.witness);
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

inline ojson report_json(const FiniteAlgebra& a, const Report& r) {
  ojson j;
  j["title"] = r.title;
  j["passed"] = r.passed();
  j["findings"] = ojson::array();
  for (const auto& f : r.findings) j["findings"].push_back(finding_json(a, f));
  return j;
}

inline ojson axiom_report_json(const FiniteAlgebra& a, const AxiomReport& r) {
  ojson j;
  j["requested"] = std::string(to_string(r.requested));
  j["reached"] = r.reached ? ojson(std::string(to_string(*r.reached))) : ojson(nullptr);
  j["degenerate"] = r.degenerate;
  j["passed"] = r.passed();
  j["laws"] = ojson::array();
  for (const auto& l : r.laws) {
    ojson e;
    e["law"] = l.law;
    e["stage"] = std::string(to_string(l.stage));
    e["verdict"] = l.passed() ? "pass" : "fail";
    if (l.witness && !l.witness->empty()) e["witness"] = names_json(a, *l.witness);
    j["laws"].push_back(e);
  }
  return j;
}

inline ojson verdict_json(const FiniteAlgebra& a, const AxiomVerdict& v) {
  ojson j;
  j["axiom"] = std::string(to_string(v.axiom));
  j["verdict"] = v.passed() ? "pass" : "fail";
  if (v.witness && !v.witness->empty()) j["witness"] = names_json(a, *v.witness);
  return j;
}

inline ojson card_values_json(const FiniteAlgebra& a, const CardinalityFn& f) {
  ojson j = ojson::array();
  for (auto x : a.ids()) j.push_back(ojson{{"element", a.name_of(x)}, {"value", f(x).to_string()}});
  return j;
}

inline ojson flags_json(const StructuralFlags& s) {
  return ojson{{"atomic", s.atomic},
               {"atom-rectangular", s.atom_rectangular},
               {"atom-simple", s.atom_simple},
               {"simple", s.simple},
               {"finitely-many-atoms", s.finitely_many_atoms}};
}

inline ojson profile_json(const FiniteAlgebra& a, ElementId x, const ElementProfile& p) {
  ojson j;
  j["element"] = a.name_of(x);
  ojson holds = ojson::array();
  for (const auto& [name, member] : kProfileFlags)
    if (p.*member) holds.push_back(std::string(name));
  j["holds"] = holds;
  return j;
}

inline std::string shell_quote(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_./:,=+@%") ==
                        std::string::npos)
    return s;
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// ---------------------------------------------------------------------------
// Commands. Each returns its report tree and an exit code.

struct Outcome {
  ojson body;
  int exit = kPass;
};

inline Outcome cmd_check(const std::string& file, const std::string& level) {
  auto a = load_algebra(file);
  auto r = check(a, parse_level(level));
  Outcome o;
  o.body["algebra"] = a.name();
  o.body["size"] = a.size();
  o.body["check"] = axiom_report_json(a, r);
  o.exit = r.passed() ? kPass : kFail;
  return o;
}

inline Outcome cmd_props(const std::string& file, const std::optional<std::string>& element, bool ideal_pts,
                         bool theorems) {
  auto a = load_algebra(file);
  Outcome o;
  o.body["algebra"] = a.name();
  o.body["size"] = a.size();
  Profiler prof(a);
  ojson rows = ojson::array();
  if (element) {
    auto x = a.require(*element);
    rows.push_back(profile_json(a, x, prof(x)));
  } else {
    for (auto x : a.ids()) rows.push_back(profile_json(a, x, prof(x)));
  }
  o.body["profiles"] = rows;
  o.body["structure"] = flags_json(structural_predicates(a));
  o.body["atoms"] = names_json(a, atoms(a));
  o.body["points"] = names_json(a, prof.points());
  if (ideal_pts) {
    o.body["ideals"] = names_json(a, prof.ideals());
    o.body["ideal-points"] = names_json(a, ideal_points(a));
  }
  if (theorems) {
    auto r = verify_basic_theorem(a);
    o.body["theorems"] = report_json(a, r);
    if (!r.passed()) o.exit = kFail;
  }
  return o;
}

inline Outcome cmd_card(const std::string& file, const std::string& fn, const std::optional<std::string>& fn_file,
                        const std::string& axiom_list, bool theorems) {
  auto a = load_algebra(file);
  CardinalityFn f;
  std::string source;
  if (fn_file) {
    f = load_cardinality_fn(*fn_file, a);
    source = *fn_file;
  } else if (fn == "C") {
    f = atom_counting(a);
    source = "C";
  } else {
    throw InputError("--fn accepts only 'C'; use --fn-file for other functions");
  }
  const auto ids = parse_card_axioms(axiom_list);
  Outcome o;
  o.body["algebra"] = a.name();
  o.body["function"] = source;
  o.body["values"] = card_values_json(a, f);
  AxiomChecker check(a, f);
  ojson verdicts = ojson::array();
  std::size_t passed = 0;
  for (auto id : ids) {
    auto v = check(id);
    if (v.passed()) ++passed;
    verdicts.push_back(verdict_json(a, v));
  }
  o.body["axioms"] = verdicts;
  o.body["passed"] = passed;
  o.body["failed"] = ids.size() - passed;
  if (passed != ids.size()) o.exit = kFail;
  if (theorems) {
    ojson suites = ojson::array();
    std::vector<Report> reports{verify_atom_calculus(a), verify_equivalences(a, f)};
    if (fn_file == std::nullopt) {
      reports.push_back(verify_nAB_card(a));
      reports.push_back(verify_sufficient_conditions(a));
      reports.push_back(verify_collapse_theorems(a));
    }
    for (const auto& r : reports) {
      suites.push_back(report_json(a, r));
      if (!r.passed()) o.exit = kFail;
    }
    o.body["theorems"] = suites;
  }
  return o;
}

inline Outcome cmd_represent(const std::string& file, bool verify, const std::optional<std::string>& out_file) {
  auto a = load_algebra(file);
  require_sra(a);
  Outcome o;
  o.body["algebra"] = a.name();
  const auto ids = ideals(a);
  const auto ip = ideal_points(a);
  const bool axiom = satisfies_point_axiom(a);
  o.body["ideals"] = ids.size();
  o.body["points"] = names_json(a, points(a));
  o.body["ideal-points"] = names_json(a, ip);
  o.body["point-axiom"] = axiom;
  if (!axiom) {
    o.exit = kFail;
    return o;
  }
  auto model = build_M(a);
  o.body["matrix-model-size"] = model.algebra.size();
  if (verify) {
    auto r = verify_representation(a, model);
    o.body["representation"] = report_json(model.algebra, r);
    if (!r.passed()) o.exit = kFail;
  }
  if (out_file) {
    save_algebra(model.algebra, *out_file);
    o.body["written"] = *out_file;
  }
  return o;
}

inline Outcome cmd_zoo_build(const std::string& spec, const std::optional<std::string>& out_file) {
  auto a = build_model(spec);
  Outcome o;
  o.body["algebra"] = a.name();
  o.body["size"] = a.size();
  if (out_file) {
    save_algebra(a, *out_file);
    o.body["written"] = *out_file;
  } else if (a.tabulated()) {
    o.body["elements"] = a.element_names();
  }
  return o;
}

inline Outcome cmd_zoo_list() {
  Outcome o;
  ojson list = ojson::array();
  for (const auto& e : zoo_entries()) list.push_back(ojson{{"spec", e.spec}, {"description", e.description}});
  o.body["models"] = list;
  return o;
}

inline ojson scanned_json(const std::vector<ScanRecord>& scanned) {
  ojson j = ojson::array();
  for (const auto& s : scanned)
    j.push_back(ojson{{"algebra", s.algebra}, {"size", s.size}, {"status", s.status}, {"candidates", s.candidates}});
  return j;
}

inline Outcome cmd_search_element(const std::string& predicate, const std::string& catalog, std::size_t max_sub,
                                  const std::optional<std::string>& out_dir) {
  auto pred = ElementPredicate::parse(predicate);
  auto cat = build_catalog(catalog);
  auto res = find_element_witness(cat, pred, max_sub);
  Outcome o;
  o.body["predicate"] = pred.text();
  if (!res.witness) {
    o.body["result"] = "exhausted";
    o.body["scanned"] = scanned_json(res.scanned);
    o.exit = kFail;
    return o;
  }
  const auto& w = *res.witness;
  o.body["result"] = "witness";
  o.body["catalog-entry"] = w.catalog_index;
  o.body["algebra"] = w.algebra.name();
  o.body["size"] = w.algebra.size();
  o.body["element"] = w.algebra.name_of(w.element);
  o.body["all-witnesses"] = names_json(w.algebra, find_element_witnesses(w.algebra, pred));
  o.body["scanned"] = scanned_json(res.scanned);
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    const auto alg = std::filesystem::path(*out_dir) / "algebra.json";
    save_algebra(w.algebra, alg);
    const std::string repro = "sra props " + shell_quote(alg.string()) + " --element " +
                              shell_quote(w.algebra.name_of(w.element));
    write_json_file(std::filesystem::path(*out_dir) / "verdicts.json",
                    json{{"predicate", pred.text()}, {"element", w.algebra.name_of(w.element)}, {"reproduce", repro}});
    o.body["bundle"] = *out_dir;
    o.body["reproduce"] = repro;
  }
  return o;
}

inline Outcome cmd_search_independence(const std::string& assume, const std::string& refute,
                                       const std::string& catalog, std::size_t max_sub, unsigned max_card,
                                       const std::optional<std::string>& out_dir) {
  SearchSpec spec;
  spec.assume = parse_card_axioms(assume);
  spec.refute = parse_card_axioms(refute);
  spec.max_sub = max_sub;
  spec.max_card = max_card;
  validate(SearchSpec{{chain3()}, spec.assume, spec.refute, max_sub, max_card});
  spec.catalog = build_catalog(catalog);
  auto res = find_independence_witness(spec);
  Outcome o;
  auto ids_json = [](const std::vector<CardAxiom>& v) {
    ojson j = ojson::array();
    for (auto id : v) j.push_back(std::string(to_string(id)));
    return j;
  };
  o.body["assume"] = ids_json(spec.assume);
  o.body["refute"] = ids_json(spec.refute);
  o.body["max-sub"] = max_sub;
  o.body["max-card"] = max_card;
  if (!res.witness) {
    o.body["result"] = "exhausted";
    o.body["scanned"] = scanned_json(res.scanned);
    o.exit = kFail;
    return o;
  }
  const auto& w = *res.witness;
  o.body["result"] = "witness";
  o.body["catalog-entry"] = w.catalog_index;
  o.body["algebra"] = w.algebra.name();
  o.body["size"] = w.algebra.size();
  o.body["values"] = card_values_json(w.algebra, w.fn);
  ojson verdicts = ojson::array();
  for (const auto& v : w.verdicts) verdicts.push_back(verdict_json(w.algebra, v));
  o.body["axioms"] = verdicts;
  o.body["scanned"] = scanned_json(res.scanned);
  if (out_dir) {
    const std::filesystem::path dir(*out_dir);
    std::filesystem::create_directories(dir);
    save_algebra(w.algebra, dir / "algebra.json");
    write_json_file(dir / "cardinality.json", cardinality_to_json(w.fn, w.algebra));
    const std::string repro = "sra card " + shell_quote((dir / "algebra.json").string()) + " --fn-file " +
                              shell_quote((dir / "cardinality.json").string()) + " --axioms all";
    json v = json::array();
    for (const auto& e : verdicts) v.push_back(json::parse(e.dump()));
    write_json_file(dir / "verdicts.json", json{{"axioms", v}, {"reproduce", repro}});
    o.body["bundle"] = *out_dir;
    o.body["reproduce"] = repro;
  }
  return o;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Stone relation algebra workbench", "sra"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  unsigned jobs = 0;
  bool timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)");
  app.add_flag("--timing", timing, "Append elapsed wall time to the report");

  std::string file, level = "sra", fn = "C", axioms = "all", spec, predicate, catalog, assume, refute;
  std::optional<std::string> element, fn_file, out_file, out_dir;
  bool ideal_pts = false, theorems = false, verify = false;
  std::size_t max_sub = 8;
  unsigned max_card = 4;

  auto* check_cmd = app.add_subcommand("check", "Staged axiom check up to a level");
  check_cmd->add_option("file", file, "Algebra file")->required();
  check_cmd->add_option("--level", level, "lattice|distributive|stone|semiring-involution|sra|ra");

  auto* props_cmd = app.add_subcommand("props", "Element profiles and structural flags");
  props_cmd->add_option("file", file, "Algebra file")->required();
  props_cmd->add_option("--element", element, "Only this element");
  props_cmd->add_flag("--ideal-points", ideal_pts, "List ideals and ideal-points");
  props_cmd->add_flag("--theorems", theorems, "Run the basic theorem suite");

  auto* card_cmd = app.add_subcommand("card", "Cardinality axioms for a function");
  card_cmd->add_option("file", file, "Algebra file")->required();
  auto* fn_opt = card_cmd->add_option("--fn", fn, "Built-in function (C)");
  card_cmd->add_option("--fn-file", fn_file, "Cardinality file")->excludes(fn_opt);
  card_cmd->add_option("--axioms", axioms, "all or a comma list such as C1a,C5b");
  card_cmd->add_flag("--theorems", theorems, "Run the cardinality theorem suites");

  auto* rep_cmd = app.add_subcommand("represent", "Ideal-point matrix representation");
  rep_cmd->add_option("file", file, "Algebra file")->required();
  rep_cmd->add_flag("--verify", verify, "Verify the isomorphism");
  rep_cmd->add_option("-o,--output", out_file, "Write the matrix model");

  auto* zoo_cmd = app.add_subcommand("zoo", "Model constructors");
  zoo_cmd->require_subcommand(1);
  auto* build_cmd = zoo_cmd->add_subcommand("build", "Build a model from a spec");
  build_cmd->add_option("spec", spec, "Model spec")->required();
  build_cmd->add_option("-o,--output", out_file, "Write the algebra file");
  auto* list_cmd = zoo_cmd->add_subcommand("list", "List model specs");

  auto* search_cmd = app.add_subcommand("search", "Exhaustive counterexample search");
  search_cmd->require_subcommand(1);
  auto* elem_cmd = search_cmd->add_subcommand("element", "Find an element satisfying a predicate");
  elem_cmd->add_option("--predicate", predicate, "e.g. atom&!univalent")->required();
  elem_cmd->add_option("--catalog", catalog, "Comma-separated model specs")->required();
  elem_cmd->add_option("--max-sub", max_sub, "Largest subalgebra scanned");
  elem_cmd->add_option("--out", out_dir, "Witness bundle directory");
  auto* ind_cmd = search_cmd->add_subcommand("independence", "Find a cardinality function separating axioms");
  ind_cmd->add_option("--assume", assume, "Axioms to satisfy");
  ind_cmd->add_option("--refute", refute, "Axioms to violate");
  ind_cmd->add_option("--catalog", catalog, "Comma-separated model specs")->required();
  ind_cmd->add_option("--max-sub", max_sub, "Largest subalgebra scanned");
  ind_cmd->add_option("--max-card", max_card, "Largest finite value");
  ind_cmd->add_option("--out", out_dir, "Witness bundle directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::string echo = "sra";
  for (int i = 1; i < argc; ++i) echo += " " + detail::shell_quote(argv[i]);

  JobsGuard guard(jobs);
  const auto start = std::chrono::steady_clock::now();
  detail::Outcome o;
  try {
    if (*check_cmd)
      o = detail::cmd_check(file, level);
    else if (*props_cmd)
      o = detail::cmd_props(file, element, ideal_pts, theorems);
    else if (*card_cmd)
      o = detail::cmd_card(file, fn, fn_file, axioms, theorems);
    else if (*rep_cmd)
      o = detail::cmd_represent(file, verify, out_file);
    else if (*build_cmd)
      o = detail::cmd_zoo_build(spec, out_file);
    else if (*list_cmd)
      o = detail::cmd_zoo_list();
    else if (*elem_cmd)
      o = detail::cmd_search_element(predicate, catalog, max_sub, out_dir);
    else if (*ind_cmd)
      o = detail::cmd_search_independence(assume, refute, catalog, max_sub, max_card, out_dir);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  ojson report;
  report["command"] = echo;
  for (auto& [k, v] : o.body.items()) report[k] = v;
  if (timing)
    report["elapsed-ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  report["exit"] = o.exit;
  if (format == "json")
    out << report.dump(2) << '\n';
  else
    out << render_text(report);
  return o.exit;
}

}  // namespace sra::cli
