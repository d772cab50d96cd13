#include <gtest/gtest.h>

#include "test_util.hpp"

using pillow::Perm;
using pillow::errc;

using testing_util::code_of;

TEST(Perm, CycleNotationIsOneBased) {
  Perm p = Perm::from_cycles("(1 2 3)(4 5)", 6);
  EXPECT_EQ(p.degree(), 6u);
  EXPECT_EQ(p(0), 1u);
  EXPECT_EQ(p(2), 0u);
  EXPECT_EQ(p(3), 4u);
  EXPECT_EQ(p(5), 5u);
  EXPECT_EQ(p.to_cycle_string(), "(1 2 3)(4 5)");
}

TEST(Perm, DegreeDefaultsToLargestPoint) {
  EXPECT_EQ(Perm::from_cycles("(2 7)").degree(), 7u);
  EXPECT_EQ(Perm::from_cycles("(1, 3, 2)").to_cycle_string(), "(1 3 2)");
}

TEST(Perm, ProductAppliesRightFactorFirst) {
  Perm p = Perm::from_cycles("(1 2)", 3), q = Perm::from_cycles("(2 3)", 3);
  Perm pq = p * q;
  for (pillow::point_t x = 0; x < 3; ++x) EXPECT_EQ(pq(x), p(q(x)));
  EXPECT_EQ(pq.to_cycle_string(), "(1 2 3)");
}

TEST(Perm, InverseOrderAndPowers) {
  Perm p = Perm::from_cycles("(1 2 3 4)(5 6)", 7);
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_EQ(p.order(), 4u);
  EXPECT_TRUE(p.pow(4).is_identity());
  EXPECT_EQ(p.pow(-1), p.inverse());
  EXPECT_EQ(p.pow(2).to_cycle_string(), "(1 3)(2 4)");
}

TEST(Perm, CycleTypeIsDescendingWithFixedPoints) {
  Perm p = Perm::from_cycles("(1 2)(3 4 5)", 7);
  EXPECT_EQ(p.cycle_type(), (std::vector<std::size_t>{3, 2, 1, 1}));
  EXPECT_EQ(p.cycle_count(), 4u);
}

TEST(Perm, IdentityPrintsAsEmptyCycle) {
  Perm e = Perm::identity(4);
  EXPECT_EQ(e.to_cycle_string(), "()");
  EXPECT_EQ(Perm::from_cycles("()", 4), e);
}

TEST(Perm, RoundTripThroughText) {
  Perm p = Perm::from_images({3, 0, 4, 1, 2, 6, 5});
  EXPECT_EQ(Perm::from_cycles(p.to_cycle_string(), p.degree()), p);
}

TEST(Perm, RejectsMalformedInput) {
  EXPECT_EQ(code_of([] { Perm::from_cycles("(1 2)(2 3)", 3); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { Perm::from_cycles("(0 1)", 3); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { Perm::from_cycles("(1 5)", 3); }), errc::degree_mismatch);
  EXPECT_EQ(code_of([] { Perm::from_cycles("(1 2", 3); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { Perm::from_images({0, 0, 1}); }), errc::invalid_input);
}

TEST(Perm, MixedDegreesDoNotCompose) {
  EXPECT_EQ(code_of([] { (void)(Perm::identity(3) * Perm::identity(4)); }), errc::degree_mismatch);
}

TEST(Perm, ParsesSemicolonLists) {
  auto ps = pillow::parse_perm_list("(1 2 3); (1 2)", 3);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[1].to_cycle_string(), "(1 2)");
}

TEST(Perm, OrbitsAndTransitivity) {
  std::vector<Perm> gens{Perm::from_cycles("(1 2)", 5), Perm::from_cycles("(3 4)", 5)};
  auto orb = pillow::orbits(gens, 5);
  ASSERT_EQ(orb.size(), 3u);
  EXPECT_EQ(orb[0], (std::vector<pillow::point_t>{0, 1}));
  EXPECT_EQ(orb[2], (std::vector<pillow::point_t>{4}));
  EXPECT_FALSE(pillow::is_transitive(gens, 5));
  gens.push_back(Perm::from_cycles("(2 3 5)", 5));
  EXPECT_TRUE(pillow::is_transitive(gens, 5));
}
