#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pillow/catalog.hpp"
#include "pillow/cover.hpp"
#include "pillow/document.hpp"
#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/parallel.hpp"
#include "pillow/report.hpp"

namespace pillow {

enum class DedupMode { conjugacy, conjugacy_and_rotation };

inline std::string to_string(DedupMode m) {
  return m == DedupMode::conjugacy ? "conjugacy" : "conjugacy_and_rotation";
}

inline constexpr const char* dedup_note =
    "triples are identified up to simultaneous conjugation in G only; outer automorphisms and braid moves are not "
    "applied, and no completeness claim is made beyond the enumerated space";

using Triple = std::array<elem_t, 3>;

namespace detail {

/// True when no conjugate of (a, b), or of a rotation of the triple when asked, is lexicographically smaller.
inline bool is_canonical_pair(const FiniteGroup& g, elem_t a, elem_t b, elem_t c, DedupMode mode) {
  const std::pair<elem_t, elem_t> self{a, b};
  std::array<std::pair<elem_t, elem_t>, 3> reps{self, {b, c}, {c, a}};
  const std::size_t nrep = mode == DedupMode::conjugacy ? 1 : 3;
  for (std::size_t r = 0; r < nrep; ++r)
    for (elem_t h = 0; h < g.order(); ++h) {
      std::pair<elem_t, elem_t> cand{g.conj(h, reps[r].first), g.conj(h, reps[r].second)};
      if (cand < self) return false;
    }
  return true;
}

/// Genus from element orders; nullopt when the count is odd or negative, which non-generating pairs allow.
inline std::optional<long long> order_genus(const FiniteGroup& g, const Triple& t) {
  const auto n = static_cast<long long>(g.order());
  long long twice = 2 - 2 * n;
  for (elem_t x : t) twice += n - n / static_cast<long long>(g.element_order(x));
  if (twice < 0 || twice % 2) return std::nullopt;
  return twice / 2;
}

inline bool generates(const FiniteGroup& g, elem_t a, elem_t b) {
  std::array<elem_t, 2> gens{a, b};
  auto mask = closure_mask(g, gens);
  std::size_t n = 0;
  for (auto w : mask) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n == g.order();
}

}  // namespace detail

/**
 * Generating triples (g1, g2, (g1 g2)^-1) whose regular cover has genus in
 * [genus_lo, genus_hi], one per simultaneous-conjugacy class: the kept
 * representative is the lexicographically least (g1, g2) of its class.
 * Sorted by (g1, g2).
 */
inline std::vector<Triple> enumerate_triples(const FiniteGroup& g, long long genus_lo, long long genus_hi,
                                             DedupMode mode = DedupMode::conjugacy, std::size_t threads = 1) {
  const std::size_t n = g.order();
  auto chunks = parallel_map(n, threads, [&](std::size_t i) {
    std::vector<Triple> out;
    auto a = static_cast<elem_t>(i);
    for (elem_t b = 0; b < n; ++b) {
      elem_t c = g.inv(g.mul(a, b));
      auto genus = detail::order_genus(g, {a, b, c});
      if (!genus || *genus < genus_lo || *genus > genus_hi) continue;
      if (!detail::is_canonical_pair(g, a, b, c, mode)) continue;
      if (!detail::generates(g, a, b)) continue;
      out.push_back({a, b, c});
    }
    return out;
  });
  std::vector<Triple> all;
  for (auto& c : chunks) {
    if (!c.ok()) fail(errc::invariant_breach, "triple enumeration failed: " + c.error);
    all.insert(all.end(), c.value->begin(), c.value->end());
  }
  return all;
}

struct SearchSpec {
  std::vector<std::string> groups;  // catalog names or catalog files
  long long genus_lo = 2;
  long long genus_hi = 2;
  std::size_t min_n = 2;
  DedupMode dedup = DedupMode::conjugacy;
  std::size_t threads = 1;
  std::optional<std::string> out_dir;
  bool emit_certificates = false;
};

struct TripleReport {
  Triple triple{};
  long long genus = 0;
  MultifoldReport report;
};

struct GroupSearch {
  std::string name;
  std::string descriptor;
  std::shared_ptr<const FiniteGroup> group;
  std::size_t triples_examined = 0;
  std::vector<TripleReport> reports;
  std::vector<std::string> errors;
  std::size_t spot_checked = 0;
  std::vector<std::string> spot_failures;

  std::size_t max_n() const {
    std::size_t m = 0;
    for (const auto& r : reports) m = std::max(m, r.report.n);
    return m;
  }
};

struct SearchResult {
  SearchSpec spec;
  std::vector<GroupSearch> groups;

  bool partial_failure() const {
    for (const auto& g : groups) {
      if (!g.errors.empty() || !g.spot_failures.empty()) return true;
      for (const auto& r : g.reports)
        if (!r.report.errors.empty()) return true;
    }
    return false;
  }
};

/// Resolves names against the builtin catalog and files as extra catalogs; unknown names are input errors.
inline Catalog resolve_groups(const std::vector<std::string>& names) {
  Catalog out;
  for (const auto& n : names) {
    if (const auto* e = find_entry(builtin_catalog(), n)) {
      out.push_back(*e);
    } else if (std::filesystem::is_regular_file(n)) {
      for (auto& e : load_catalog_file(n)) out.push_back(std::move(e));
    } else {
      fail(errc::invalid_input, "unknown group '" + n + "' (not in the catalog and not a readable file)");
    }
  }
  return out;
}

inline void validate(const SearchSpec& spec) {
  if (spec.groups.empty()) fail(errc::invalid_input, "no groups given");
  if (spec.genus_lo > spec.genus_hi) fail(errc::invalid_input, "empty genus range");
  if (spec.min_n < 1) fail(errc::invalid_input, "minimum n must be at least 1");
}

/// One in ten certificates, by position in the ordered output, is rebuilt and re-validated from scratch.
inline constexpr std::size_t spot_check_stride = 10;

inline SearchResult run_search(const SearchSpec& spec) {
  validate(spec);
  Catalog cat = resolve_groups(spec.groups);
  SearchResult res;
  res.spec = spec;
  for (const auto& entry : cat) {
    GroupSearch gs;
    gs.name = entry.name;
    gs.descriptor = entry.descriptor;
    gs.group = entry.group;
    try {
      const FiniteGroup& g = *entry.group;
      auto triples = enumerate_triples(g, spec.genus_lo, spec.genus_hi, spec.dedup, spec.threads);
      gs.triples_examined = triples.size();
      std::vector<Subgroup> subs;
      if (!triples.empty()) subs = all_subgroups(g);
      MultifoldOptions opt{1, true, &subs};
      auto reports = parallel_map(triples.size(), spec.threads, [&](std::size_t i) {
        return multifold_report(make_galois(entry.group, triples[i]), opt);
      });
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!reports[i].ok()) {
          gs.errors.push_back("triple " + std::to_string(i) + ": " + reports[i].error);
          continue;
        }
        auto& rep = *reports[i].value;
        if (rep.n < spec.min_n) continue;
        gs.reports.push_back({triples[i], galois_genus(g, triples[i]), std::move(rep)});
      }

      std::vector<std::pair<std::size_t, std::size_t>> sample;
      std::size_t k = 0;
      for (std::size_t r = 0; r < gs.reports.size(); ++r)
        for (std::size_t c = 0; c < gs.reports[r].report.certificates.size(); ++c, ++k)
          if (k % spot_check_stride == 0) sample.push_back({r, c});
      auto checks = parallel_map(sample.size(), spec.threads, [&](std::size_t s) {
        const auto& cert = gs.reports[sample[s].first].report.certificates[sample[s].second];
        auto doc = certify_document({gs.name, gs.descriptor}, cert.tower.parent, cert.tower.subgroup);
        if (!doc.document) return Revalidation{false, "certificate did not rebuild"};
        return revalidate(*doc.document);
      });
      gs.spot_checked = sample.size();
      for (std::size_t s = 0; s < checks.size(); ++s) {
        std::string where = "report " + std::to_string(sample[s].first) + " certificate " + std::to_string(sample[s].second);
        if (!checks[s].ok())
          gs.spot_failures.push_back(where + ": " + checks[s].error);
        else if (!checks[s].value->ok)
          gs.spot_failures.push_back(where + ": " + checks[s].value->detail);
      }
    } catch (const std::exception& e) {
      gs.errors.push_back(e.what());
    }
    res.groups.push_back(std::move(gs));
  }
  return res;
}

// ---------------------------------------------------------------- output

inline json report_json(const TripleReport& tr) {
  const auto& rep = tr.report;
  const FiniteGroup& g = *rep.parent.group;
  json certs = json::array();
  for (std::size_t i = 0; i < rep.certificates.size(); ++i) {
    const auto& c = rep.certificates[i];
    json gens = json::array();
    for (elem_t x : c.tower.subgroup.generators) gens.push_back(perm_to_json(g.element(x)));
    json e = {{"subgroup_order", c.tower.subgroup.order()},
              {"subgroup_generators", gens},
              {"mu", c.mu.zero_orders},
              {"locus_class", rep.locus_class[i]}};
    if (i < rep.double_covers.size()) {
      e["double_cover_degree"] = rep.double_covers[i].over_base.degree;
      e["genus_sigma"] = rep.double_covers[i].genus_sigma;
    }
    certs.push_back(std::move(e));
  }
  json verdicts = json::array();
  for (const auto& row : rep.verdicts) {
    json r = json::array();
    for (const auto& v : row)
      r.push_back(v ? json(IsoVerdict{*v, std::nullopt}.name()) : json(nullptr));
    verdicts.push_back(std::move(r));
  }
  json trip = json::array();
  json orders = json::array();
  for (elem_t x : tr.triple) {
    trip.push_back(perm_to_json(g.element(x)));
    orders.push_back(g.element_order(x));
  }
  return {{"triple", trip},       {"triple_orders", orders},     {"genus_X", tr.genus},
          {"n", rep.n},           {"multifold", rep.multifold()}, {"certificates", certs},
          {"verdicts", verdicts}, {"rejections", rep.rejections}, {"errors", rep.errors}};
}

inline json search_json(const SearchResult& res) {
  json groups = json::array();
  for (const auto& gs : res.groups) {
    json reps = json::array();
    for (const auto& r : gs.reports) reps.push_back(report_json(r));
    groups.push_back({{"name", gs.name},
                      {"descriptor", gs.descriptor},
                      {"order", gs.group ? gs.group->order() : 0},
                      {"triples_examined", gs.triples_examined},
                      {"max_n", gs.max_n()},
                      {"reports", reps},
                      {"errors", gs.errors},
                      {"spot_checks", {{"checked", gs.spot_checked}, {"failures", gs.spot_failures}}}});
  }
  return {{"schema_version", schema_version},
          {"tool_version", tool_version},
          {"search",
           {{"groups", res.spec.groups},
            {"genus", {res.spec.genus_lo, res.spec.genus_hi}},
            {"min_n", res.spec.min_n},
            {"dedup", to_string(res.spec.dedup)}}},
          {"note", dedup_note},
          {"groups", groups}};
}

inline std::string summary_text(const SearchResult& res) {
  std::string s;
  for (const auto& gs : res.groups) {
    s += gs.name + ": n=" + std::to_string(gs.max_n());
    if (gs.reports.empty()) s += " (no reports)";
    s += "\n";
    s += "  triples examined " + std::to_string(gs.triples_examined) + ", reports " + std::to_string(gs.reports.size()) +
         ", spot checks " + std::to_string(gs.spot_checked) + "\n";
    const FiniteGroup* g = gs.group.get();
    for (const auto& r : gs.reports) {
      s += "  genus " + std::to_string(r.genus) + " n=" + std::to_string(r.report.n) + " certificates " +
           std::to_string(r.report.certificates.size()) + " triple ";
      for (std::size_t j = 0; j < 3; ++j) s += (j ? ";" : "") + g->element(r.triple[j]).to_cycle_string();
      s += "\n";
    }
    for (const auto& e : gs.errors) s += "  error: " + e + "\n";
    for (const auto& e : gs.spot_failures) s += "  spot check failed: " + e + "\n";
  }
  return s;
}

/// Writes report.json, summary.txt and, when asked, one certificate file per certified subgroup.
inline void write_search_outputs(const SearchResult& res, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir + "/report.json", search_json(res).dump(2) + "\n");
  write_text_file(dir + "/summary.txt", summary_text(res));
  if (!res.spec.emit_certificates) return;
  std::filesystem::create_directories(dir + "/certs");
  for (const auto& gs : res.groups)
    for (std::size_t r = 0; r < gs.reports.size(); ++r) {
      const auto& rep = gs.reports[r].report;
      for (std::size_t c = 0; c < rep.certificates.size(); ++c) {
        const auto& cert = rep.certificates[c];
        auto doc = make_document({gs.name, gs.descriptor}, cert, rep.double_covers.at(c), pillow_tiling(cert.tower));
        for (std::size_t o = 0; o < rep.certificates.size(); ++o)
          if (o != c && rep.verdicts[c][o])
            doc.verdicts.push_back({"c" + std::to_string(o), IsoVerdict{*rep.verdicts[c][o], std::nullopt}.name()});
        doc.content_hash = content_hash(doc);
        write_text_file(dir + "/certs/" + gs.name + "-t" + std::to_string(r) + "-c" + std::to_string(c) + ".json",
                        serialize(doc));
      }
    }
}

}  // namespace pillow
