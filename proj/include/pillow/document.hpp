#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pillow/certify.hpp"
#include "pillow/cover.hpp"
#include "pillow/double_cover.hpp"
#include "pillow/ellmod.hpp"
#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/perm.hpp"
#include "pillow/tiling.hpp"

namespace pillow {

using json = nlohmann::json;

inline constexpr const char* schema_version = "1";
inline constexpr const char* tool_version = "0.1.0";

struct BranchPointRecord {
  int base_index = 0;
  std::vector<std::uint32_t> coset_cycle;
  Perm local_monodromy;
  std::uint64_t ram_index = 1;

  friend bool operator==(const BranchPointRecord&, const BranchPointRecord&) = default;
};

struct VerdictRecord {
  std::string against;
  std::string verdict;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct ModuliRecord {
  std::string cross_ratio_input;
  std::string cross_ratio;
  std::string tau;
  std::string lambda_residual;

  friend bool operator==(const ModuliRecord&, const ModuliRecord&) = default;
};

struct CertificateDocument {
  std::string schema = schema_version;

  std::string group_name;
  std::string group_descriptor;
  std::size_t group_degree = 0;
  std::size_t group_order = 0;
  std::vector<Perm> group_generators;

  std::array<Perm, 3> triple;
  std::array<std::uint64_t, 3> triple_orders{};
  long long genus_X = 0;

  std::size_t subgroup_order = 0;
  std::vector<Perm> subgroup_generators;

  std::size_t tower_index = 0;
  long long quotient_genus = 0;
  std::vector<std::vector<std::pair<std::uint32_t, int>>> transversal_words;
  std::vector<BranchPointRecord> branch_points;
  std::vector<Perm> tiling_tuple;

  std::vector<int> mu;
  bool uniform = true;
  std::string uniform_justification;
  VanishingLocus vanishing_locus;

  std::size_t double_cover_degree = 0;
  long long genus_sigma = 0;
  std::vector<Perm> double_cover_triple;
  std::vector<VerdictRecord> verdicts;

  std::size_t tiling_degree = 0;
  Perm h1, h2, v;
  std::string corner_assignment;
  std::vector<BraidMove> braid_word;

  std::optional<ModuliRecord> moduli;
  std::string interpretation;

  // provenance, outside the hash
  std::string tool = tool_version;
  std::string content_hash;
  std::optional<std::string> timestamp;

  friend bool operator==(const CertificateDocument&, const CertificateDocument&) = default;
};

// ---------------------------------------------------------------- JSON helpers

inline json perm_to_json(const Perm& p) {
  return json{{"cycles", p.to_cycle_string()}, {"images", std::vector<point_t>(p.images().begin(), p.images().end())}};
}

namespace detail {

inline void expect_keys(const json& j, std::initializer_list<const char*> required,
                        std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) fail(errc::invalid_input, where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    if (!j.contains(k)) fail(errc::invalid_input, where + ": missing field '" + k + "'");
    allowed.insert(k);
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) fail(errc::invalid_input, where + ": unknown field '" + k + "'");
}

template <class T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(errc::invalid_input, where + "." + key + ": " + e.what());
  }
}

}  // namespace detail

inline Perm perm_from_json(const json& j, const std::string& where, std::size_t degree = 0) {
  detail::expect_keys(j, {"cycles", "images"}, {}, where);
  auto img = detail::get_as<std::vector<point_t>>(j, "images", where);
  if (degree && img.size() != degree)
    fail(errc::degree_mismatch, where + ": expected degree " + std::to_string(degree));
  Perm p = Perm::from_images(std::move(img));
  Perm q = Perm::from_cycles(detail::get_as<std::string>(j, "cycles", where), p.degree());
  if (!(p == q)) fail(errc::invalid_input, where + ": cycles and images disagree");
  return p;
}

inline json perms_to_json(const auto& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(perm_to_json(p));
  return a;
}

inline std::vector<Perm> perms_from_json(const json& j, const std::string& where, std::size_t degree = 0) {
  if (!j.is_array()) fail(errc::invalid_input, where + ": expected an array");
  std::vector<Perm> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(perm_from_json(j[i], where + "[" + std::to_string(i) + "]", degree));
  return out;
}

inline json locus_to_json(const VanishingLocus& l) {
  json a = json::array();
  for (const auto& p : l.points) a.push_back({{"base_index", p.base_index}, {"elements", p.elements}});
  return a;
}

/// Everything except the provenance block, the part covered by the hash.
inline json semantic_json(const CertificateDocument& d) {
  json words = json::array();
  for (const auto& w : d.transversal_words) {
    json a = json::array();
    for (auto [letter, sign] : w) a.push_back(json::array({letter, sign}));
    words.push_back(std::move(a));
  }
  json bps = json::array();
  for (const auto& b : d.branch_points)
    bps.push_back({{"base_index", b.base_index},
                   {"coset_cycle", b.coset_cycle},
                   {"local_monodromy", perm_to_json(b.local_monodromy)},
                   {"ram_index", b.ram_index}});
  json verdicts = json::array();
  for (const auto& v : d.verdicts) verdicts.push_back({{"against", v.against}, {"verdict", v.verdict}});
  json braid = json::array();
  for (const auto& m : d.braid_word) braid.push_back(json::array({m.index, m.sign}));

  json j;
  j["schema_version"] = d.schema;
  j["group"] = {{"name", d.group_name},
                {"descriptor", d.group_descriptor},
                {"degree", d.group_degree},
                {"order", d.group_order},
                {"generators", perms_to_json(d.group_generators)}};
  j["triple"] = perms_to_json(d.triple);
  j["triple_orders"] = d.triple_orders;
  j["genus_X"] = d.genus_X;
  j["subgroup"] = {{"order", d.subgroup_order}, {"generators", perms_to_json(d.subgroup_generators)}};
  j["tower"] = {{"index", d.tower_index},
                {"quotient_genus", d.quotient_genus},
                {"transversal_words", words},
                {"branch_points", bps},
                {"tiling_tuple", perms_to_json(d.tiling_tuple)}};
  j["mu"] = d.mu;
  j["uniform"] = {{"value", d.uniform}, {"justification", d.uniform_justification}};
  j["vanishing_locus"] = locus_to_json(d.vanishing_locus);
  j["double_cover"] = {{"degree", d.double_cover_degree},
                       {"genus_sigma", d.genus_sigma},
                       {"triple", perms_to_json(d.double_cover_triple)},
                       {"verdicts", verdicts}};
  j["tiling"] = {{"degree", d.tiling_degree},
                 {"h1", perm_to_json(d.h1)},
                 {"h2", perm_to_json(d.h2)},
                 {"v", perm_to_json(d.v)},
                 {"corner_assignment", d.corner_assignment},
                 {"braid_word", braid}};
  if (d.moduli)
    j["moduli"] = {{"cross_ratio_input", d.moduli->cross_ratio_input},
                   {"cross_ratio", d.moduli->cross_ratio},
                   {"tau", d.moduli->tau},
                   {"lambda_residual", d.moduli->lambda_residual}};
  else
    j["moduli"] = nullptr;
  j["interpretation"] = d.interpretation;
  return j;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    fail(errc::invariant_breach, "SHA-256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string content_hash(const CertificateDocument& d) { return sha256_hex(semantic_json(d).dump()); }

inline json to_json(const CertificateDocument& d) {
  json j = semantic_json(d);
  json prov = {{"tool_version", d.tool}, {"content_hash", d.content_hash}};
  if (d.timestamp) prov["timestamp"] = *d.timestamp;
  j["provenance"] = std::move(prov);
  return j;
}

inline std::string serialize(const CertificateDocument& d) { return to_json(d).dump(2) + "\n"; }

inline CertificateDocument document_from_json(const json& j) {
  using detail::expect_keys;
  using detail::get_as;
  expect_keys(j,
              {"schema_version", "group", "triple", "triple_orders", "genus_X", "subgroup", "tower", "mu", "uniform",
               "vanishing_locus", "double_cover", "tiling", "moduli", "interpretation", "provenance"},
              {}, "certificate");
  CertificateDocument d;
  d.schema = get_as<std::string>(j, "schema_version", "certificate");
  if (d.schema != schema_version) fail(errc::invalid_input, "unsupported schema_version '" + d.schema + "'");

  const json& g = j["group"];
  expect_keys(g, {"name", "descriptor", "degree", "order", "generators"}, {}, "group");
  d.group_name = get_as<std::string>(g, "name", "group");
  d.group_descriptor = get_as<std::string>(g, "descriptor", "group");
  d.group_degree = get_as<std::size_t>(g, "degree", "group");
  d.group_order = get_as<std::size_t>(g, "order", "group");
  d.group_generators = perms_from_json(g["generators"], "group.generators", d.group_degree);

  auto trip = perms_from_json(j["triple"], "triple", d.group_degree);
  if (trip.size() != 3) fail(errc::invalid_input, "triple: expected three permutations");
  d.triple = {trip[0], trip[1], trip[2]};
  d.triple_orders = get_as<std::array<std::uint64_t, 3>>(j, "triple_orders", "certificate");
  d.genus_X = get_as<long long>(j, "genus_X", "certificate");

  const json& s = j["subgroup"];
  expect_keys(s, {"order", "generators"}, {}, "subgroup");
  d.subgroup_order = get_as<std::size_t>(s, "order", "subgroup");
  d.subgroup_generators = perms_from_json(s["generators"], "subgroup.generators", d.group_degree);

  const json& t = j["tower"];
  expect_keys(t, {"index", "quotient_genus", "transversal_words", "branch_points", "tiling_tuple"}, {}, "tower");
  d.tower_index = get_as<std::size_t>(t, "index", "tower");
  d.quotient_genus = get_as<long long>(t, "quotient_genus", "tower");
  d.transversal_words =
      get_as<std::vector<std::vector<std::pair<std::uint32_t, int>>>>(t, "transversal_words", "tower");
  if (!t["branch_points"].is_array()) fail(errc::invalid_input, "tower.branch_points: expected an array");
  for (const auto& b : t["branch_points"]) {
    expect_keys(b, {"base_index", "coset_cycle", "local_monodromy", "ram_index"}, {}, "branch_point");
    d.branch_points.push_back({get_as<int>(b, "base_index", "branch_point"),
                               get_as<std::vector<std::uint32_t>>(b, "coset_cycle", "branch_point"),
                               perm_from_json(b["local_monodromy"], "branch_point.local_monodromy", d.group_degree),
                               get_as<std::uint64_t>(b, "ram_index", "branch_point")});
  }
  d.tiling_tuple = perms_from_json(t["tiling_tuple"], "tower.tiling_tuple", d.group_degree);

  d.mu = get_as<std::vector<int>>(j, "mu", "certificate");
  const json& u = j["uniform"];
  expect_keys(u, {"value", "justification"}, {}, "uniform");
  d.uniform = get_as<bool>(u, "value", "uniform");
  d.uniform_justification = get_as<std::string>(u, "justification", "uniform");

  if (!j["vanishing_locus"].is_array()) fail(errc::invalid_input, "vanishing_locus: expected an array");
  for (const auto& p : j["vanishing_locus"]) {
    expect_keys(p, {"base_index", "elements"}, {}, "vanishing_locus");
    d.vanishing_locus.points.push_back(
        {get_as<int>(p, "base_index", "vanishing_locus"), get_as<std::vector<elem_t>>(p, "elements", "vanishing_locus")});
  }

  const json& dc = j["double_cover"];
  expect_keys(dc, {"degree", "genus_sigma", "triple", "verdicts"}, {}, "double_cover");
  d.double_cover_degree = get_as<std::size_t>(dc, "degree", "double_cover");
  d.genus_sigma = get_as<long long>(dc, "genus_sigma", "double_cover");
  d.double_cover_triple = perms_from_json(dc["triple"], "double_cover.triple", d.double_cover_degree);
  if (!dc["verdicts"].is_array()) fail(errc::invalid_input, "double_cover.verdicts: expected an array");
  for (const auto& v : dc["verdicts"]) {
    expect_keys(v, {"against", "verdict"}, {}, "verdict");
    d.verdicts.push_back({get_as<std::string>(v, "against", "verdict"), get_as<std::string>(v, "verdict", "verdict")});
  }

  const json& tl = j["tiling"];
  expect_keys(tl, {"degree", "h1", "h2", "v", "corner_assignment", "braid_word"}, {}, "tiling");
  d.tiling_degree = get_as<std::size_t>(tl, "degree", "tiling");
  d.h1 = perm_from_json(tl["h1"], "tiling.h1", d.tiling_degree);
  d.h2 = perm_from_json(tl["h2"], "tiling.h2", d.tiling_degree);
  d.v = perm_from_json(tl["v"], "tiling.v", d.tiling_degree);
  d.corner_assignment = get_as<std::string>(tl, "corner_assignment", "tiling");
  for (auto [idx, sign] : get_as<std::vector<std::pair<int, int>>>(tl, "braid_word", "tiling"))
    d.braid_word.push_back({idx, sign});

  if (!j["moduli"].is_null()) {
    const json& m = j["moduli"];
    expect_keys(m, {"cross_ratio_input", "cross_ratio", "tau", "lambda_residual"}, {}, "moduli");
    d.moduli = ModuliRecord{get_as<std::string>(m, "cross_ratio_input", "moduli"),
                            get_as<std::string>(m, "cross_ratio", "moduli"), get_as<std::string>(m, "tau", "moduli"),
                            get_as<std::string>(m, "lambda_residual", "moduli")};
  }
  d.interpretation = get_as<std::string>(j, "interpretation", "certificate");

  const json& p = j["provenance"];
  expect_keys(p, {"tool_version", "content_hash"}, {"timestamp"}, "provenance");
  d.tool = get_as<std::string>(p, "tool_version", "provenance");
  d.content_hash = get_as<std::string>(p, "content_hash", "provenance");
  if (p.contains("timestamp")) d.timestamp = get_as<std::string>(p, "timestamp", "provenance");
  return d;
}

inline CertificateDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::invalid_input, std::string("certificate is not valid JSON: ") + e.what());
  }
  return document_from_json(j);
}

inline CertificateDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_failure, "cannot open " + path);
  out << body;
  if (!out) fail(errc::io_failure, "write failed for " + path);
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- building

/// The cross-ratio text is kept verbatim; tau and the residual |lambda(tau) - x| are recomputed from it.
inline ModuliRecord compute_moduli(const std::string& cross_ratio_text) {
  auto x = ellmod::parse_number(cross_ratio_text);
  if (x.infinite) fail(errc::singular_modulus, "cross-ratio must be finite");
  auto tau = ellmod::lambda_section_t({x.z});
  auto lam = ellmod::lambda_theta(tau);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", std::abs(lam - x.z));
  return {cross_ratio_text, ellmod::format_complex(x.z), ellmod::format_complex(tau.tau), buf};
}

struct GroupLabel {
  std::string name;
  std::string descriptor;
};

inline CertificateDocument make_document(const GroupLabel& label, const PillowcaseCertificate& cert,
                                         const DoubleCoverDatum& dc, const PillowTiling& tiling,
                                         std::optional<ModuliRecord> moduli = std::nullopt) {
  const auto& tw = cert.tower;
  const FiniteGroup& g = *tw.parent.group;
  CertificateDocument d;
  d.group_name = label.name;
  d.group_descriptor = label.descriptor;
  d.group_degree = g.degree();
  d.group_order = g.order();
  d.group_generators = g.generators();
  for (std::size_t j = 0; j < 3; ++j) {
    d.triple[j] = g.element(tw.parent.tuple[j]);
    d.triple_orders[j] = g.element_order(tw.parent.tuple[j]);
  }
  d.genus_X = cert.genus_X;
  d.subgroup_order = tw.subgroup.order();
  for (elem_t x : tw.subgroup.generators) d.subgroup_generators.push_back(g.element(x));
  d.tower_index = tw.index();
  d.quotient_genus = tw.quotient_genus;
  d.transversal_words = tw.cosets.words;
  for (const auto& b : tw.branch_points)
    d.branch_points.push_back({b.base_index, b.coset_cycle, g.element(b.local_monodromy), b.ram_index});
  if (tw.tiling_tuple)
    for (elem_t x : *tw.tiling_tuple) d.tiling_tuple.push_back(g.element(x));
  d.mu = cert.mu.zero_orders;
  d.uniform = cert.uniform;
  d.uniform_justification = cert.uniform_reason;
  d.vanishing_locus = cert.vanishing_locus;
  d.double_cover_degree = dc.over_base.degree;
  d.genus_sigma = dc.genus_sigma;
  d.double_cover_triple = dc.over_base.branch_perms;
  d.tiling_degree = tiling.degree;
  d.h1 = tiling.h1;
  d.h2 = tiling.h2;
  d.v = tiling.v;
  d.corner_assignment = corner_assignment_text();
  d.braid_word = tiling.braid_word;
  d.moduli = std::move(moduli);
  d.interpretation = cert.interpretation;
  d.content_hash = content_hash(d);
  return d;
}

struct DocumentResult {
  std::optional<CertificateDocument> document;
  std::optional<Rejection> rejection;
};

inline DocumentResult certify_document(const GroupLabel& label, const GaloisCoverDatum& parent, const Subgroup& h,
                                       const std::optional<std::string>& cross_ratio = std::nullopt) {
  auto r = certify(parent, h);
  if (!r) return {std::nullopt, r.rejection};
  const auto& cert = *r.certificate;
  auto dc = double_cover_over_base(cert.tower);
  auto tiling = pillow_tiling(cert.tower);
  std::optional<ModuliRecord> mod;
  if (cross_ratio) mod = compute_moduli(*cross_ratio);
  return {make_document(label, cert, dc, tiling, std::move(mod)), std::nullopt};
}

struct Revalidation {
  bool ok = false;
  std::string detail;
};

/**
 * Rebuilds the certificate from the group generators, triple and subgroup
 * generators stored in `doc` and compares every semantic field. The
 * verdict list refers to sibling certificates, so it is carried over.
 */
inline Revalidation revalidate(const CertificateDocument& doc) {
  try {
    if (content_hash(doc) != doc.content_hash) return {false, "content hash does not match the document"};
    auto g = std::make_shared<const FiniteGroup>(group_from_generators(doc.group_degree, doc.group_generators));
    if (g->order() != doc.group_order) return {false, "group order differs"};
    auto parent = make_galois(g, doc.triple);
    long long genus = rh_genus(parent.regular_cover());
    if (genus != doc.genus_X) return {false, "genus of X differs"};
    Subgroup h = subgroup_generated(*g, std::span<const Perm>(doc.subgroup_generators));
    if (h.order() != doc.subgroup_order) return {false, "subgroup order differs"};
    std::optional<std::string> x;
    if (doc.moduli) x = doc.moduli->cross_ratio_input;
    auto fresh = certify_document({doc.group_name, doc.group_descriptor}, parent, h, x);
    if (!fresh.document) return {false, "subgroup no longer certifies: " + fresh.rejection->describe()};
    auto& f = *fresh.document;
    f.verdicts = doc.verdicts;
    f.content_hash = content_hash(f);
    long long sum = 0;
    for (int m : f.mu) sum += m;
    if (sum != 4 * genus - 4) return {false, "zero orders do not sum to 4g - 4"};
    if (rh_genus(make_cover(f.double_cover_triple)) != f.genus_sigma)
      return {false, "double cover genus disagrees with Riemann-Hurwitz"};
    if (semantic_json(f) != semantic_json(doc)) return {false, "recomputed certificate differs"};
    return {true, "ok"};
  } catch (const error& e) {
    return {false, std::string(to_string(e.code())) + ": " + e.what()};
  }
}

}  // namespace pillow
