#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/matrix_group.hpp"
#include "pillow/perm.hpp"

namespace pillow {

/**
 * One group of the catalog.
 *
 * Record lines, each record opened by `name`:
 *   name <id>
 *   degree <n>                       with  gens <cycles; cycles; ...>
 *   matrix p=<prime> dim=<n> gens=<m1;m2;...>   (row-major, comma separated)
 *   product <id> <id>
 *   triple <cycles; cycles; cycles> | triple gens
 *   subgroup <label> <cycles; cycles; ...>
 * Blank lines and lines starting with '#' are ignored.
 */
struct CatalogEntry {
  std::string name;
  std::string descriptor;  // the record's defining line
  std::shared_ptr<const FiniteGroup> group;
  std::optional<std::array<Perm, 3>> triple;
  std::vector<std::pair<std::string, std::vector<Perm>>> subgroups;

  const std::vector<Perm>* subgroup(std::string_view label) const {
    for (const auto& [l, gens] : subgroups)
      if (l == label) return &gens;
    return nullptr;
  }
};

using Catalog = std::vector<CatalogEntry>;

inline constexpr std::string_view builtin_catalog_text = R"(# generators of GL(2,3); their product is the identity
name gl23
matrix p=3 dim=2 gens=0,1,1,2;2,0,0,1;2,2,1,0
triple gens

# generators of SL(3,2); their product is the identity
name sl32
matrix p=2 dim=3 gens=1,0,0,0,1,0,1,0,1;0,1,0,0,0,1,1,0,0;1,0,1,1,0,0,0,1,0
triple gens

name a4
degree 4
gens (1 2 3);(1 2)(3 4)

name c3
degree 3
gens (1 2 3)

# a = (1 2 3), b = (1 2)(3 4), c = (5 6 7); triple (bc, a^2 c^2, ab)
name a4xc3
product a4 c3
triple (1 2)(3 4)(5 6 7);(1 3 2)(5 7 6);(1 3 4)
subgroup H1 (1 2 3);(5 6 7)
subgroup H2 (1 2 3);(1 2)(3 4)
)";

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

inline long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::invalid_input, "bad integer for " + what + ": '" + s + "'");
  }
}

inline Matrix parse_matrix(const std::string& text, std::size_t dim) {
  Matrix m;
  m.dim = dim;
  for (const auto& x : split(text, ',')) m.entries.push_back(static_cast<int>(parse_int(x, "matrix entry")));
  if (m.entries.size() != dim * dim) fail(errc::invalid_input, "matrix '" + text + "' is not " + std::to_string(dim) + "x" + std::to_string(dim));
  return m;
}

}  // namespace detail

inline Catalog parse_catalog(std::string_view text, const Catalog* known = nullptr,
                             std::size_t cap = default_order_cap) {
  struct Raw {
    std::string name;
    std::vector<std::pair<std::string, std::string>> lines;
  };
  std::vector<Raw> raws;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t sp = t.find_first_of(" \t");
    std::string key = t.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : detail::trim(t.substr(sp));
    if (key == "name") {
      if (rest.empty()) fail(errc::invalid_input, "line " + std::to_string(lineno) + ": empty name");
      raws.push_back({rest, {}});
    } else if (raws.empty()) {
      fail(errc::invalid_input, "line " + std::to_string(lineno) + ": record must start with 'name'");
    } else {
      raws.back().lines.push_back({key, rest});
    }
  }

  Catalog out;
  auto lookup = [&](const std::string& n) -> const CatalogEntry* {
    for (const auto& e : out)
      if (e.name == n) return &e;
    if (known)
      for (const auto& e : *known)
        if (e.name == n) return &e;
    return nullptr;
  };

  for (const auto& raw : raws) {
    CatalogEntry e;
    e.name = raw.name;
    std::optional<std::size_t> degree;
    std::vector<Perm> gens;
    bool triple_from_gens = false;
    std::optional<std::string> triple_text;
    std::vector<std::pair<std::string, std::string>> sub_text;
    for (const auto& [key, rest] : raw.lines) {
      if (key == "degree") {
        degree = static_cast<std::size_t>(detail::parse_int(rest, "degree"));
      } else if (key == "gens") {
        if (!degree) fail(errc::invalid_input, e.name + ": 'gens' needs a preceding 'degree'");
        gens = parse_perm_list(rest, *degree);
        e.descriptor = "degree " + std::to_string(*degree) + " gens " + rest;
        e.group = std::make_shared<const FiniteGroup>(group_from_generators(*degree, gens, cap));
      } else if (key == "matrix") {
        int p = 0;
        std::size_t dim = 0;
        std::string mats;
        std::istringstream ms(rest);
        std::string tok;
        while (ms >> tok) {
          if (tok.rfind("p=", 0) == 0)
            p = static_cast<int>(detail::parse_int(tok.substr(2), "p"));
          else if (tok.rfind("dim=", 0) == 0)
            dim = static_cast<std::size_t>(detail::parse_int(tok.substr(4), "dim"));
          else if (tok.rfind("gens=", 0) == 0)
            mats = tok.substr(5);
          else
            fail(errc::invalid_input, e.name + ": unknown matrix field '" + tok + "'");
        }
        if (dim == 0 || mats.empty()) fail(errc::invalid_input, e.name + ": matrix record needs dim= and gens=");
        std::vector<Matrix> ms_list;
        for (const auto& m : detail::split(mats, ';')) ms_list.push_back(detail::parse_matrix(m, dim));
        auto g = group_from_matrices(p, dim, ms_list, cap);
        gens = g.generators();
        degree = g.degree();
        e.descriptor = "matrix " + rest;
        e.group = std::make_shared<const FiniteGroup>(std::move(g));
      } else if (key == "product") {
        auto parts = detail::split(rest, ' ');
        if (parts.size() != 2) fail(errc::invalid_input, e.name + ": product needs two names");
        const auto* a = lookup(parts[0]);
        const auto* b = lookup(parts[1]);
        if (!a || !b) fail(errc::invalid_input, e.name + ": unknown factor in product " + rest);
        auto g = direct_product(*a->group, *b->group, cap);
        degree = g.degree();
        gens = g.generators();
        e.descriptor = "product " + rest;
        e.group = std::make_shared<const FiniteGroup>(std::move(g));
      } else if (key == "triple") {
        if (rest == "gens")
          triple_from_gens = true;
        else
          triple_text = rest;
      } else if (key == "subgroup") {
        std::size_t sp = rest.find_first_of(" \t");
        if (sp == std::string::npos) fail(errc::invalid_input, e.name + ": subgroup needs a label and generators");
        sub_text.push_back({rest.substr(0, sp), detail::trim(rest.substr(sp))});
      } else {
        fail(errc::invalid_input, e.name + ": unknown record key '" + key + "'");
      }
    }
    if (!e.group) fail(errc::invalid_input, e.name + ": no group definition");
    if (triple_from_gens) {
      if (gens.size() != 3) fail(errc::invalid_input, e.name + ": 'triple gens' needs exactly three generators");
      e.triple = std::array<Perm, 3>{gens[0], gens[1], gens[2]};
    } else if (triple_text) {
      auto t = parse_perm_list(*triple_text, e.group->degree());
      if (t.size() != 3) fail(errc::invalid_input, e.name + ": triple needs three permutations");
      e.triple = std::array<Perm, 3>{t[0], t[1], t[2]};
    }
    if (e.triple)
      for (const auto& p : *e.triple) e.group->require_index(p);
    for (const auto& [label, gtext] : sub_text) {
      auto sg = parse_perm_list(gtext, e.group->degree());
      for (const auto& p : sg) e.group->require_index(p);
      e.subgroups.push_back({label, std::move(sg)});
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline const Catalog& builtin_catalog() {
  static const Catalog cat = parse_catalog(builtin_catalog_text);
  return cat;
}

inline const CatalogEntry* find_entry(const Catalog& cat, std::string_view name) {
  for (const auto& e : cat)
    if (e.name == name) return &e;
  return nullptr;
}

inline Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot read catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), &builtin_catalog());
}

}  // namespace pillow
