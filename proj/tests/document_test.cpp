#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;
using testing_util::code_of;

namespace {

const CertificateDocument& h2_document() {
  static const CertificateDocument doc = [] {
    const auto& e = testing_util::entry("a4xc3");
    auto r = certify_document({e.name, e.descriptor}, testing_util::example("a4xc3"),
                              testing_util::labelled("a4xc3", "H2"), "15*sqrt(3)-26");
    return *r.document;
  }();
  return doc;
}

json mutated(const std::function<void(json&)>& edit) {
  json j = to_json(h2_document());
  edit(j);
  return j;
}

}  // namespace

TEST(Document, RoundTripsThroughText) {
  const auto& d = h2_document();
  auto back = parse_document(serialize(d));
  EXPECT_EQ(back, d);
  EXPECT_EQ(serialize(back), serialize(d));
  EXPECT_EQ(back.content_hash, content_hash(back));
}

TEST(Document, RecordsTheComputedData) {
  const auto& d = h2_document();
  EXPECT_EQ(d.group_name, "a4xc3");
  EXPECT_EQ(d.group_order, 36u);
  EXPECT_EQ(d.genus_X, 4);
  EXPECT_EQ(d.subgroup_order, 12u);
  EXPECT_EQ(d.tower_index, 3u);
  EXPECT_EQ(d.quotient_genus, 0);
  EXPECT_EQ(d.mu, std::vector<int>(12, 1));
  EXPECT_EQ(d.double_cover_degree, 72u);
  EXPECT_EQ(d.genus_sigma, 13);
  EXPECT_EQ(d.tiling_degree, 12u);
  EXPECT_EQ(d.branch_points.size(), 4u);
  ASSERT_TRUE(d.moduli.has_value());
  EXPECT_EQ(d.moduli->tau, "1+2.143182698915i");
  EXPECT_EQ(d.moduli->cross_ratio_input, "15*sqrt(3)-26");
  EXPECT_EQ(d.content_hash.size(), 64u);
  EXPECT_FALSE(d.timestamp.has_value());
  EXPECT_EQ(oracle::genus_from_cycles(d.double_cover_triple), 13);
}

TEST(Document, HashIgnoresProvenanceAndTracksContent) {
  auto d = h2_document();
  auto h = content_hash(d);
  d.timestamp = "2020-01-01T00:00:00Z";
  d.tool = "something-else";
  EXPECT_EQ(content_hash(d), h);
  d.interpretation += " ";
  EXPECT_NE(content_hash(d), h);
}

TEST(Document, StrictParsing) {
  EXPECT_EQ(code_of([] { parse_document("{not json"); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j["extra"] = 1; })); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j.erase("mu"); })); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j["schema_version"] = "2"; })); }),
            errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j["tiling"]["h1"]["cycles"] = "(1 2)"; })); }),
            errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j["tiling"]["v"]["shape"] = 0; })); }),
            errc::invalid_input);
  EXPECT_EQ(code_of([] { document_from_json(mutated([](json& j) { j["genus_X"] = "four"; })); }), errc::invalid_input);
}

TEST(Document, PermJsonAgreesWithCycles) {
  Perm p = Perm::from_cycles("(1 3 2)(4 5)", 6);
  json j = perm_to_json(p);
  EXPECT_EQ(j["cycles"], "(1 3 2)(4 5)");
  EXPECT_EQ(perm_from_json(j, "p"), p);
  EXPECT_EQ(code_of([&] { perm_from_json(j, "p", 7); }), errc::degree_mismatch);
}

TEST(Document, RevalidationAcceptsTheOriginal) {
  auto v = revalidate(h2_document());
  EXPECT_TRUE(v.ok) << v.detail;
  auto timed = h2_document();
  timed.timestamp = utc_timestamp();
  EXPECT_TRUE(revalidate(timed).ok);
}

TEST(Document, RevalidationCatchesTampering) {
  auto d = h2_document();
  d.genus_sigma = 12;
  auto v = revalidate(d);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.detail.find("hash"), std::string::npos);

  d.content_hash = content_hash(d);
  v = revalidate(d);
  EXPECT_FALSE(v.ok);

  auto e = h2_document();
  std::swap(e.h1, e.h2);
  e.content_hash = content_hash(e);
  EXPECT_FALSE(revalidate(e).ok);

  auto m = h2_document();
  m.moduli->tau = "1+2i";
  m.content_hash = content_hash(m);
  EXPECT_FALSE(revalidate(m).ok);
}

TEST(Document, FileIo) {
  auto dir = std::filesystem::temp_directory_path() / "pillow_document_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto path = (dir / "h2.json").string();
  write_text_file(path, serialize(h2_document()));
  EXPECT_EQ(load_document(path), h2_document());
  EXPECT_EQ(code_of([&] { load_document((dir / "missing.json").string()); }), errc::io_failure);
  EXPECT_EQ(code_of([&] { write_text_file((dir / "no" / "such" / "x").string(), ""); }), errc::io_failure);
}

TEST(Document, RejectedSubgroupsHaveNoDocument) {
  auto p = testing_util::example("a4xc3");
  auto r = certify_document({"a4xc3", ""}, p, subgroup_generated(*p.group, std::span<const elem_t>{}));
  EXPECT_FALSE(r.document.has_value());
  ASSERT_TRUE(r.rejection.has_value());
  EXPECT_EQ(r.rejection->kind, RejectionKind::not_rational);
}

TEST(Document, ModuliFromText) {
  auto m = compute_moduli("0.5");
  EXPECT_EQ(m.tau, "1i");
  EXPECT_EQ(m.cross_ratio, "0.5");
  EXPECT_LT(std::stod(m.lambda_residual), 1e-12);
  EXPECT_EQ(code_of([] { compute_moduli("inf"); }), errc::singular_modulus);
}
