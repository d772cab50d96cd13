#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;

namespace {

using Point = std::vector<elem_t>;

/// Points <g_j> x of X where |x^-1 <g_j> x  ∩  H| = 3, computed from the definition.
std::set<std::pair<int, Point>> zero_points(const FiniteGroup& g, const std::array<elem_t, 3>& t, const Subgroup& h) {
  std::set<std::pair<int, Point>> out;
  for (int j = 0; j < 3; ++j) {
    std::vector<elem_t> cyc{FiniteGroup::identity()};
    for (elem_t y = t[j]; y != FiniteGroup::identity(); y = g.mul(t[j], y)) cyc.push_back(y);
    for (elem_t x = 0; x < g.order(); ++x) {
      Point p;
      for (elem_t c : cyc) p.push_back(g.mul(c, x));
      std::sort(p.begin(), p.end());
      std::size_t stab = 0;
      for (elem_t c : cyc)
        if (h.contains(g.mul(g.mul(g.inv(x), c), x))) ++stab;
      if (stab == 3) out.insert({j, p});
    }
  }
  return out;
}

std::set<std::pair<int, Point>> as_set(const VanishingLocus& v) {
  std::set<std::pair<int, Point>> out;
  for (const auto& p : v.points) out.insert({p.base_index, p.elements});
  return out;
}

std::vector<elem_t> order_three_part(const FiniteGroup& g, const Subgroup& h) {
  std::vector<elem_t> out;
  for (elem_t x : h.elements)
    if (g.element_order(x) == 3) out.push_back(x);
  return out;
}

}  // namespace

TEST(Certify, GL23OrderSixSubgroupsAllCertify) {
  auto p = testing_util::example("gl23");
  int certified = 0;
  for (const auto& h : all_subgroups(*p.group)) {
    if (h.order() != 6) continue;
    auto r = certify(p, h);
    ASSERT_TRUE(r) << r.rejection->describe();
    ++certified;
    const auto& c = *r.certificate;
    EXPECT_EQ(c.genus_X, 2);
    EXPECT_EQ(c.mu.zero_orders, std::vector<int>(4, 1));
    EXPECT_TRUE(c.uniform);
    EXPECT_EQ(c.tower.quotient_genus, 0);
    EXPECT_EQ(c.tower.index(), 8u);
  }
  EXPECT_EQ(certified, 12);
}

TEST(Certify, LocusMatchesTheStabilizerDefinition) {
  for (const char* name : {"gl23", "sl32", "a4xc3"}) {
    auto p = testing_util::example(name);
    for (const auto& h : all_subgroups(*p.group)) {
      auto r = certify(p, h);
      if (!r) continue;
      EXPECT_EQ(as_set(r.certificate->vanishing_locus), zero_points(*p.group, p.tuple, h)) << name;
    }
  }
}

TEST(Certify, GL23LocusIsDecidedByTheOrderThreeElements) {
  auto p = testing_util::example("gl23");
  std::vector<std::pair<std::vector<elem_t>, VanishingLocus>> seen;
  for (const auto& h : all_subgroups(*p.group)) {
    if (h.order() != 6) continue;
    seen.push_back({order_three_part(*p.group, h), certify(p, h).certificate->vanishing_locus});
  }
  std::set<std::vector<elem_t>> sylow;
  std::set<VanishingLocus> loci;
  for (std::size_t a = 0; a < seen.size(); ++a) {
    sylow.insert(seen[a].first);
    loci.insert(seen[a].second);
    for (std::size_t b = 0; b < seen.size(); ++b)
      EXPECT_EQ(seen[a].first == seen[b].first, seen[a].second == seen[b].second);
  }
  EXPECT_EQ(sylow.size(), 4u);
  EXPECT_EQ(loci.size(), 4u);
}

TEST(Certify, RejectionKinds) {
  auto p = testing_util::example("gl23");
  const FiniteGroup& g = *p.group;
  auto trivial = subgroup_generated(g, std::span<const elem_t>{});
  auto r = certify(p, trivial);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.rejection->kind, RejectionKind::not_rational);
  EXPECT_EQ(r.rejection->value, 2);
  EXPECT_EQ(r.rejection->describe(), "NotRational(genus 2)");

  std::vector<elem_t> all(g.order());
  std::iota(all.begin(), all.end(), elem_t{0});
  auto whole = subgroup_generated(g, std::span<const elem_t>(all));
  r = certify(p, whole);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.rejection->kind, RejectionKind::wrong_branch_count);
  EXPECT_EQ(r.rejection->value, 3);
}

TEST(Certify, ZeroCountIsFourGMinusFour) {
  for (const char* name : {"sl32", "a4xc3"}) {
    auto p = testing_util::example(name);
    for (const auto& h : all_subgroups(*p.group)) {
      auto r = certify(p, h);
      if (!r) continue;
      long long total = 0;
      for (int k : r.certificate->mu.zero_orders) total += k;
      EXPECT_EQ(total, 4 * r.certificate->genus_X - 4);
      for (const auto& b : r.certificate->tower.branch_points) EXPECT_TRUE(b.ram_index == 2 || b.ram_index == 3);
    }
  }
}

TEST(Certify, ConjugateSubgroupsGiveTranslatedLoci) {
  auto p = testing_util::example("sl32");
  const FiniteGroup& g = *p.group;
  for (const auto& h : all_subgroups(g)) {
    if (h.order() != 24) continue;
    auto r = certify(p, h);
    if (!r) continue;
    for (elem_t c = 1; c < g.order(); c += 37) {
      std::vector<elem_t> gens;
      for (elem_t x : h.generators) gens.push_back(g.conj(c, x));
      auto hc = subgroup_generated(g, std::span<const elem_t>(gens));
      auto rc = certify(p, hc);
      ASSERT_TRUE(rc);
      EXPECT_EQ(rc.certificate->mu, r.certificate->mu);
      // x H  ->  x H c^-1 sends the locus of H to that of c H c^-1
      std::set<std::pair<int, Point>> moved;
      for (const auto& pt : r.certificate->vanishing_locus.points) {
        Point q;
        for (elem_t y : pt.elements) q.push_back(g.mul(y, g.inv(c)));
        std::sort(q.begin(), q.end());
        moved.insert({pt.base_index, q});
      }
      EXPECT_EQ(moved, as_set(rc.certificate->vanishing_locus));
    }
  }
}

TEST(Certify, A4xC3LabelledSubgroups) {
  auto p = testing_util::example("a4xc3");
  for (const char* label : {"H1", "H2"}) {
    auto h = testing_util::labelled("a4xc3", label);
    auto r = certify(p, h);
    ASSERT_TRUE(r) << label;
    EXPECT_EQ(r.certificate->genus_X, 4);
    EXPECT_EQ(r.certificate->mu.zero_orders.size(), 12u);
    ASSERT_TRUE(r.certificate->tower.tiling_tuple.has_value());
  }
}
