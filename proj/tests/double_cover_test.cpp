#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;
using testing_util::code_of;

namespace {

QuotientTower tower(const char* group, const char* label) {
  return quotient_tower(testing_util::example(group), testing_util::labelled(group, label));
}

std::vector<Dart> concat(std::vector<Dart> a, const std::vector<Dart>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST(DoubleCover, DegreeAndGenusForA4xC3) {
  for (const char* label : {"H1", "H2"}) {
    auto tw = tower("a4xc3", label);
    auto dc = double_cover_over_base(tw);
    EXPECT_EQ(dc.over_base.degree, 72u) << label;
    EXPECT_EQ(dc.genus_sigma, 13) << label;
    EXPECT_EQ(oracle::genus_from_cycles(dc.over_base.branch_perms), 13) << label;
    EXPECT_EQ(dc.over_pillowcase.degree, 2 * tw.subgroup.order()) << label;
    EXPECT_EQ(oracle::genus_from_cycles(dc.over_pillowcase.branch_perms), 13) << label;
  }
}

TEST(DoubleCover, ForgettingTheSignGivesTheRegularCover) {
  auto tw = tower("a4xc3", "H2");
  auto dc = double_cover_over_base(tw);
  auto reg = tw.parent.regular_cover();
  for (std::size_t j = 0; j < 3; ++j) {
    auto f = oracle::forget_sign(dc.over_base.branch_perms[j]);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(*f, reg.branch_perms[j]);
    EXPECT_EQ(dc.over_base.branch_perms[j] * dc.involution, dc.involution * dc.over_base.branch_perms[j]);
  }
  EXPECT_TRUE(dc.involution.inverse() == dc.involution);
  EXPECT_TRUE(dc.involution.cycle_type() == std::vector<std::size_t>(36, 2));
}

TEST(DoubleCover, OtherSpanningTreeGivesAConjugateCover) {
  for (const char* label : {"H1", "H2"}) {
    auto tw = tower("a4xc3", label);
    auto a = double_cover_over_base(tw, false);
    auto b = double_cover_over_base(tw, true);
    auto w = tuples_conjugate(a.over_base.branch_perms, b.over_base.branch_perms);
    ASSERT_TRUE(w.has_value()) << label;
    EXPECT_TRUE(verify_conjugator(*w, a.over_base.branch_perms, b.over_base.branch_perms));
  }
}

TEST(DoubleCover, VerdictForTheTwoQuotients) {
  auto a = double_cover_over_base(tower("a4xc3", "H1"));
  auto b = double_cover_over_base(tower("a4xc3", "H2"));
  auto v = differentials_nonisomorphic(a, b);
  EXPECT_EQ(v.verdict, Verdict::certified_nonisomorphic);
  EXPECT_EQ(v.name(), "CertifiedNonIsomorphic");
  EXPECT_FALSE(v.witness.has_value());

  auto self = differentials_nonisomorphic(a, a);
  EXPECT_EQ(self.verdict, Verdict::possibly_isomorphic);
  ASSERT_TRUE(self.witness.has_value());
  EXPECT_TRUE(verify_conjugator(*self.witness, a.over_base.branch_perms, a.over_base.branch_perms));
}

TEST(DoubleCover, DegreeMismatchIsAnError) {
  auto a = double_cover_over_base(tower("a4xc3", "H1"));
  auto p = testing_util::example("gl23");
  DoubleCoverDatum b;
  for (const auto& h : all_subgroups(*p.group))
    if (h.order() == 6) {
      b = double_cover_over_base(quotient_tower(p, h));
      break;
    }
  EXPECT_EQ(b.over_base.degree, 96u);
  EXPECT_EQ(code_of([&] { differentials_nonisomorphic(a, b); }), errc::degree_mismatch);
}

TEST(FaceSolve, PoleFaceBoundariesHaveSignOne) {
  auto tw = tower("a4xc3", "H2");
  RibbonGraph rg = tower_ribbon(tw);
  ASSERT_EQ(rg.pole_faces().size(), 4u);
  for (std::uint32_t f = 0; f < rg.faces().size(); ++f) {
    const auto& bd = rg.faces()[f].boundary;
    ASSERT_TRUE(rg.is_closed(bd));
    EXPECT_EQ(face_solve(rg, bd), rg.pole_faces().count(f) ? 1 : 0) << "face " << f;
  }
}

TEST(FaceSolve, IsAHomomorphismOnLoops) {
  auto tw = tower("a4xc3", "H1");
  RibbonGraph rg = tower_ribbon(tw);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = oracle::random_loop(rg, 1 + rng() % 12, rng);
    auto b = oracle::random_loop(rg, 1 + rng() % 12, rng);
    EXPECT_EQ(face_solve(rg, concat(a, b)), face_solve(rg, a) ^ face_solve(rg, b));
  }
  EXPECT_EQ(face_solve(rg, {}), 0);
}

TEST(FaceSolve, OpenPathsAreRejected) {
  auto tw = tower("a4xc3", "H1");
  RibbonGraph rg = tower_ribbon(tw);
  std::vector<Dart> open;
  for (point_t c = 0; c < rg.vertex_count() && open.empty(); ++c)
    if (rg.letter(0)(c) != c) open.push_back({RibbonGraph::edge_id(c, 0), +1});
  ASSERT_FALSE(open.empty());
  EXPECT_EQ(code_of([&] { face_solve(rg, open); }), errc::open_path);
}
