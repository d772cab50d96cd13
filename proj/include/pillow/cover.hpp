#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/perm.hpp"

namespace pillow {

/// A connected branched cover of the sphere: branch_perms compose to the identity.
struct CoverDatum {
  std::size_t degree = 0;
  std::vector<Perm> branch_perms;
};

inline CoverDatum make_cover(std::vector<Perm> perms) {
  if (perms.empty()) fail(errc::invalid_input, "a cover needs at least one branch permutation");
  const std::size_t d = perms.front().degree();
  for (const auto& p : perms)
    if (p.degree() != d) fail(errc::degree_mismatch, "branch permutations differ in degree");
  if (!compose_all(perms, d).is_identity()) fail(errc::invalid_input, "branch permutations do not compose to the identity");
  if (!is_transitive(perms, d)) fail(errc::invalid_input, "branch permutations are not transitive");
  return CoverDatum{d, std::move(perms)};
}

/// Genus from 2 - 2g = 2d - sum_j (d - cycles_j).
inline long long rh_genus(const CoverDatum& cover) {
  const auto d = static_cast<long long>(cover.degree);
  long long ram = 0;
  for (const auto& p : cover.branch_perms) ram += d - static_cast<long long>(p.cycle_count());
  long long twice = ram - 2 * d + 2;
  if (twice < 0 || twice % 2 != 0) fail(errc::non_integral_genus, "Riemann-Hurwitz count " + std::to_string(twice) + " is not 2g");
  return twice / 2;
}

inline std::vector<std::size_t> ramification_profile(const CoverDatum& cover, std::size_t j) {
  if (j >= cover.branch_perms.size()) fail(errc::index_out_of_range, "branch index out of range");
  return cover.branch_perms[j].cycle_type();
}

/// The regular cover of the sphere with group G and monodromy (g1, g2, g3).
struct GaloisCoverDatum {
  std::shared_ptr<const FiniteGroup> group;
  std::array<elem_t, 3> tuple{};

  CoverDatum regular_cover() const {
    return CoverDatum{group->order(), {regular_perm(*group, tuple[0]), regular_perm(*group, tuple[1]),
                                       regular_perm(*group, tuple[2])}};
  }
};

inline GaloisCoverDatum make_galois(std::shared_ptr<const FiniteGroup> g, std::array<elem_t, 3> t) {
  for (elem_t x : t)
    if (x >= g->order()) fail(errc::index_out_of_range, "triple entry is not a group element");
  if (g->mul(g->mul(t[0], t[1]), t[2]) != FiniteGroup::identity())
    fail(errc::invalid_input, "triple does not multiply to the identity");
  if (subgroup_generated(*g, std::span<const elem_t>(t.data(), t.size())).order() != g->order())
    fail(errc::invalid_input, "triple does not generate the group");
  return GaloisCoverDatum{std::move(g), t};
}

inline GaloisCoverDatum make_galois(std::shared_ptr<const FiniteGroup> g, const std::array<Perm, 3>& t) {
  std::array<elem_t, 3> idx{};
  for (std::size_t i = 0; i < 3; ++i) idx[i] = g->require_index(t[i]);
  return make_galois(std::move(g), idx);
}

/// Genus of the regular cover, from element orders alone.
inline long long galois_genus(const FiniteGroup& g, const std::array<elem_t, 3>& t) {
  const auto n = static_cast<long long>(g.order());
  long long ram = 0;
  for (elem_t x : t) ram += n - n / static_cast<long long>(g.element_order(x));
  long long twice = ram - 2 * n + 2;
  if (twice < 0 || twice % 2 != 0) fail(errc::non_integral_genus, "Riemann-Hurwitz count is not even");
  return twice / 2;
}

}  // namespace pillow
