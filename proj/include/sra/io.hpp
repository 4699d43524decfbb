#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sra/algebra.hpp"

namespace sra {

using json = nlohmann::json;

/// Algebra file format:
///   {"name": text, "elements": [names...], "bot": i, "top": i, "one": i,
///    "join": n×n, "meet": n×n, "comp": n×n, "conv": [n], "pcomp": [n]}
/// Index ranges and shapes are validated here; axioms are not.
inline FiniteAlgebra algebra_from_json(const json& j) {
  auto fail = [](const std::string& msg) -> InputError { return InputError("algebra file: " + msg); };
  if (!j.is_object()) throw fail("top level must be an object");
  for (const char* key : {"name", "elements", "bot", "top", "one", "join", "meet", "comp", "conv", "pcomp"})
    if (!j.contains(key)) throw fail(std::string("missing key '") + key + "'");
  AlgebraTables t;
  try {
    t.name = j.at("name").get<std::string>();
    t.elements = j.at("elements").get<std::vector<std::string>>();
    auto index = [&](const json& v, const std::string& what) -> std::uint32_t {
      if (!v.is_number_integer()) throw fail("'" + what + "' must be an integer index");
      auto i = v.get<std::int64_t>();
      if (i < 0 || static_cast<std::uint64_t>(i) >= t.elements.size())
        throw fail("'" + what + "' index " + std::to_string(i) + " is out of range");
      return static_cast<std::uint32_t>(i);
    };
    t.bot = index(j.at("bot"), "bot");
    t.top = index(j.at("top"), "top");
    t.one = index(j.at("one"), "one");
    const std::size_t n = t.elements.size();
    auto unary = [&](const char* key) {
      const json& v = j.at(key);
      if (!v.is_array() || v.size() != n) throw fail(std::string("'") + key + "' must have " + std::to_string(n) + " entries");
      std::vector<std::uint32_t> out;
      for (std::size_t i = 0; i < n; ++i) out.push_back(index(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
      return out;
    };
    auto binary = [&](const char* key) {
      const json& v = j.at(key);
      if (!v.is_array() || v.size() != n) throw fail(std::string("'") + key + "' must have " + std::to_string(n) + " rows");
      std::vector<std::uint32_t> out;
      out.reserve(n * n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!v[r].is_array() || v[r].size() != n)
          throw fail(std::string("'") + key + "' row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c)
          out.push_back(index(v[r][c], std::string(key) + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
      return out;
    };
    t.join = binary("join");
    t.meet = binary("meet");
    t.comp = binary("comp");
    t.conv = unary("conv");
    t.pcomp = unary("pcomp");
  } catch (const json::exception& e) {
    throw fail(e.what());
  }
  return FiniteAlgebra::from_tables(t);
}

inline json algebra_to_json(const FiniteAlgebra& a) {
  const AlgebraTables t = a.tables();
  const std::size_t n = t.size();
  auto rows = [n](const std::vector<std::uint32_t>& flat) {
    json out = json::array();
    for (std::size_t r = 0; r < n; ++r)
      out.push_back(std::vector<std::uint32_t>(flat.begin() + r * n, flat.begin() + (r + 1) * n));
    return out;
  };
  json j;
  j["name"] = t.name;
  j["elements"] = t.elements;
  j["bot"] = t.bot;
  j["top"] = t.top;
  j["one"] = t.one;
  j["join"] = rows(t.join);
  j["meet"] = rows(t.meet);
  j["comp"] = rows(t.comp);
  j["conv"] = t.conv;
  j["pcomp"] = t.pcomp;
  return j;
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << j.dump(1) << '\n';
}

inline FiniteAlgebra load_algebra(const std::filesystem::path& path) {
  try {
    return algebra_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline void save_algebra(const FiniteAlgebra& a, const std::filesystem::path& path) {
  write_json_file(path, algebra_to_json(a));
}

}  // namespace sra
