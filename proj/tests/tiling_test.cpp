#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;
using testing_util::code_of;

namespace {

PillowTiling tiling_for(const char* label) {
  return pillow_tiling(quotient_tower(testing_util::example("a4xc3"), testing_util::labelled("a4xc3", label)));
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST(Tiling, MatchesTheExplicitGluings) {
  const std::array<const char*, 2> labels{"H1", "H2"};
  const std::array<std::array<Perm, 3>, 2> expected{oracle::explicit_tiling_a1(), oracle::explicit_tiling_a2()};
  for (std::size_t i = 0; i < 2; ++i) {
    auto t = tiling_for(labels[i]);
    std::vector<Perm> mine{t.h1, t.h2, t.v}, theirs(expected[i].begin(), expected[i].end());
    EXPECT_EQ(t.degree, theirs[0].degree());
    auto w = tuples_conjugate(mine, theirs);
    ASSERT_TRUE(w) << labels[i];
    EXPECT_TRUE(verify_conjugator(*w, mine, theirs));
  }
}

TEST(Tiling, CornersAreTheGluingProducts) {
  for (const char* label : {"H1", "H2"}) {
    auto t = tiling_for(label);
    EXPECT_EQ(t.corners[0], t.h1.inverse());
    EXPECT_EQ(t.corners[1], t.h1 * t.v.inverse());
    EXPECT_EQ(t.corners[2], t.h2.inverse());
    EXPECT_EQ(t.corners[3], t.h2 * t.v);
    EXPECT_TRUE(compose_all(t.corners, t.degree).is_identity());
  }
}

TEST(Tiling, BraidWordReplaysFromTheTowerTuple) {
  auto p = testing_util::example("a4xc3");
  for (const char* label : {"H1", "H2"}) {
    auto h = testing_util::labelled("a4xc3", label);
    auto tw = quotient_tower(p, h);
    auto t = pillow_tiling(tw);
    std::array<Perm, 4> k;
    for (std::size_t i = 0; i < 4; ++i) k[i] = subgroup_regular_perm(*p.group, h, (*tw.tiling_tuple)[i]);
    for (auto m : t.braid_word) k = apply_braid(k, m);
    EXPECT_EQ(k, t.corners) << label;
  }
}

TEST(Tiling, BraidMovesAreInverse) {
  std::mt19937_64 rng(2);
  std::array<Perm, 4> t;
  for (auto& p : t) p = oracle::random_perm(6, rng);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(apply_braid(apply_braid(t, {i, +1}), {i, -1}), t);
    EXPECT_EQ(apply_braid(apply_braid(t, {i, -1}), {i, +1}), t);
    EXPECT_EQ(compose_all(apply_braid(t, {i, +1}), 6), compose_all(t, 6));
  }
}

TEST(Tiling, GluingsRoundTrip) {
  auto [h1, h2, v] = oracle::explicit_tiling_a2();
  auto t = pillow_tiling_from_gluings(h1, h2, v);
  EXPECT_EQ(t.h1, h1);
  EXPECT_EQ(t.h2, h2);
  EXPECT_EQ(t.v, v);
  auto again = pillow_tiling_from_corners(t.corners);
  EXPECT_EQ(again.h1, h1);
  EXPECT_EQ(again.v, v);
}

TEST(Tiling, CornerErrors) {
  Perm a = Perm::from_cycles("(1 2)", 3);
  EXPECT_EQ(code_of([&] { pillow_tiling_from_corners({a, a, a, Perm::identity(4)}); }), errc::degree_mismatch);
  EXPECT_EQ(code_of([&] { pillow_tiling_from_corners({a, a, a, Perm::identity(3)}); }), errc::invalid_input);
  EXPECT_EQ(code_of([&] { pillow_tiling_from_corners({a, a, a, a}); }), errc::invalid_input);
}

TEST(FlatPicture, HasOneRowPerVCycleAndOneTilePerSheet) {
  auto t = tiling_for("H2");
  std::string svg = render_flat_picture(t, ellmod::HalfPlanePoint{{1.0, 2.143182698915}}, "abc");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<!-- tower: abc -->"), std::string::npos);
  EXPECT_NE(svg.find(corner_assignment_text()), std::string::npos);
  EXPECT_NE(svg.find("h1: " + t.h1.to_cycle_string()), std::string::npos);
  EXPECT_EQ(count(svg, "<polygon"), t.degree);
  EXPECT_EQ(count(svg, "class=\"fold\""), t.degree);
  EXPECT_EQ(count(svg, "class=\"edge-right\""), t.v.cycles().size());
  EXPECT_EQ(count(svg, "class=\"corner-d\""), t.degree);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(FlatPicture, IsDeterministic) {
  auto t = tiling_for("H1");
  EXPECT_EQ(render_flat_picture(t, std::nullopt), render_flat_picture(t, std::nullopt));
  EXPECT_NE(render_flat_picture(t, std::nullopt), render_flat_picture(t, ellmod::HalfPlanePoint{{0.5, 1.5}}));
}

TEST(FlatPicture, Errors) {
  auto t = tiling_for("H1");
  EXPECT_EQ(code_of([&] { render_flat_picture(t, ellmod::HalfPlanePoint{{0.0, -1.0}}); }), errc::not_in_upper_half_plane);
  auto dir = std::filesystem::temp_directory_path() / "pillow_missing_dir_for_tests";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(code_of([&] { emit_flat_picture(t, std::nullopt, (dir / "x.svg").string()); }), errc::io_failure);
}

TEST(Tiling, DegreeOneIsASinglePillowcase) {
  Perm e = Perm::identity(1);
  auto t = pillow_tiling_from_gluings(e, e, e);
  for (const auto& k : t.corners) EXPECT_TRUE(k.is_identity());
  std::string svg = render_flat_picture(t, std::nullopt);
  EXPECT_EQ(count(svg, "<polygon"), 1u);
  EXPECT_EQ(count(svg, "class=\"corner-"), 4u);
}
