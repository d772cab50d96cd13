#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;

namespace {

std::vector<Perm> conjugated(const std::vector<Perm>& t, const Perm& w) {
  std::vector<Perm> out;
  for (const auto& p : t) out.push_back(w * p * w.inverse());
  return out;
}

}  // namespace

TEST(Conjugacy, FindsAWitnessForRandomRelabelings) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 3 + trial % 10;
    std::vector<Perm> t{oracle::random_perm(d, rng), oracle::random_perm(d, rng)};
    t.push_back((t[0] * t[1]).inverse());
    auto u = conjugated(t, oracle::random_perm(d, rng));
    auto w = tuples_conjugate(t, u);
    ASSERT_TRUE(w.has_value()) << "trial " << trial;
    EXPECT_TRUE(verify_conjugator(*w, t, u));
  }
}

TEST(Conjugacy, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(5);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 3 + trial % 5;
    std::vector<Perm> a{oracle::random_perm(d, rng), oracle::random_perm(d, rng)};
    std::vector<Perm> b{oracle::random_perm(d, rng), oracle::random_perm(d, rng)};
    if (trial % 3 == 0) b = conjugated(a, oracle::random_perm(d, rng));
    bool expect = oracle::conjugate_by_search(a, b);
    auto w = tuples_conjugate(a, b);
    EXPECT_EQ(w.has_value(), expect) << "trial " << trial;
    if (w) {
      EXPECT_TRUE(verify_conjugator(*w, a, b));
    }
    (expect ? positives : negatives)++;
  }
  EXPECT_GT(positives, 20);
  EXPECT_GT(negatives, 20);
}

TEST(Conjugacy, CycleTypeMismatchIsNotConjugate) {
  std::vector<Perm> a{Perm::from_cycles("(1 2 3)", 4), Perm::from_cycles("(1 2)", 4)};
  std::vector<Perm> b{Perm::from_cycles("(1 2)(3 4)", 4), Perm::from_cycles("(1 2)", 4)};
  EXPECT_FALSE(tuples_conjugate(a, b).has_value());
}

TEST(Conjugacy, MismatchedShapesAreErrors) {
  std::vector<Perm> a{Perm::from_cycles("(1 2)", 3)};
  std::vector<Perm> b{Perm::from_cycles("(1 2)", 4)};
  std::vector<Perm> c{Perm::from_cycles("(1 2)", 3), Perm::from_cycles("(1 2)", 3)};
  EXPECT_EQ(testing_util::code_of([&] { tuples_conjugate(a, b); }), errc::degree_mismatch);
  EXPECT_EQ(testing_util::code_of([&] { tuples_conjugate(a, c); }), errc::degree_mismatch);
}

TEST(Conjugacy, VerifierRejectsAWrongWitness) {
  std::vector<Perm> a{Perm::from_cycles("(1 2 3)", 3)};
  std::vector<Perm> b{Perm::from_cycles("(1 3 2)", 3)};
  EXPECT_FALSE(verify_conjugator(Perm::identity(3), a, b));
  auto w = tuples_conjugate(a, b);
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_conjugator(*w, a, b));
}

TEST(Conjugacy, WorksOnLargeRegularRepresentations) {
  auto p = testing_util::example("gl23");
  auto c = p.regular_cover();
  std::mt19937_64 rng(3);
  auto u = conjugated(c.branch_perms, oracle::random_perm(c.degree, rng));
  auto w = tuples_conjugate(c.branch_perms, u);
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_conjugator(*w, c.branch_perms, u));
  u[0] = u[0] * u[0];
  EXPECT_FALSE(tuples_conjugate(c.branch_perms, u).has_value());
}
