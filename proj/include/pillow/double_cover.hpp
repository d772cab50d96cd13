#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pillow/certify.hpp"
#include "pillow/conjugacy.hpp"
#include "pillow/cover.hpp"
#include "pillow/error.hpp"
#include "pillow/ribbon.hpp"
#include "pillow/tower.hpp"

namespace pillow {

struct DoubleCoverDatum {
  CoverDatum over_pillowcase;  // Sigma -> A, degree 2|H|
  CoverDatum over_base;        // Sigma -> P^1, degree 2|G|
  Perm involution;
  long long genus_sigma = 0;
};

/// Sheets H x {+, -} numbered 2 * (position of h in H) + s.
inline CoverDatum double_cover_over_pillowcase(const QuotientTower& tw) {
  if (!tw.tiling_tuple) fail(errc::invalid_input, "tower has no four-point tiling tuple");
  const FiniteGroup& g = *tw.parent.group;
  const auto& h = tw.subgroup;
  std::vector<point_t> pos(g.order(), 0);
  for (std::size_t i = 0; i < h.elements.size(); ++i) pos[h.elements[i]] = static_cast<point_t>(i);
  std::vector<Perm> perms;
  for (elem_t t : *tw.tiling_tuple) {
    std::vector<point_t> img(2 * h.order());
    for (std::size_t i = 0; i < h.order(); ++i)
      for (point_t s = 0; s < 2; ++s) img[2 * i + s] = 2 * pos[g.mul(t, h.elements[i])] + (1 - s);
    perms.push_back(Perm::from_images(std::move(img)));
  }
  if (!is_transitive(perms, 2 * h.order())) fail(errc::disconnected, "q is a global square on X");
  return make_cover(std::move(perms));
}

namespace detail {

/// Breadth-first tree paths from sheet 0; `reversed` tries the letters in
/// the opposite order, giving a second, independent spanning tree.
inline std::vector<std::vector<Dart>> tree_paths(const RibbonGraph& rg, bool reversed) {
  const std::size_t n = rg.vertex_count();
  std::vector<std::vector<std::pair<std::uint32_t, int>>> words(n);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<point_t> q{0};
  std::vector<std::pair<std::uint32_t, int>> moves = {{0, +1}, {1, +1}, {0, -1}, {1, -1}};
  if (reversed) moves = {{1, -1}, {0, -1}, {1, +1}, {0, +1}};
  Perm inv0 = rg.letter(0).inverse(), inv1 = rg.letter(1).inverse();
  while (!q.empty()) {
    point_t c = q.front();
    q.pop_front();
    for (auto [j, s] : moves) {
      point_t y = s > 0 ? rg.letter(static_cast<int>(j))(c) : (j == 0 ? inv0 : inv1)(c);
      if (seen[y]) continue;
      seen[y] = true;
      words[y] = words[c];
      words[y].push_back({j, s});
      q.push_back(y);
    }
  }
  std::vector<std::vector<Dart>> paths(n);
  for (std::size_t c = 0; c < n; ++c) paths[c] = rg.word_path(0, words[c]);
  return paths;
}

}  // namespace detail

/// Sign flip of edge (c, j): the square-root character on the loop
/// tree(c) . edge . tree(pi_j c)^-1.
inline std::vector<int> sign_cocycle(const QuotientTower& tw, bool alternate_tree = false) {
  RibbonGraph rg = tower_ribbon(tw);
  if (rg.pole_faces().size() != 4) fail(errc::invalid_input, "sign cocycle needs four poles");
  auto paths = detail::tree_paths(rg, alternate_tree);
  std::vector<int> sign(rg.edge_count());
  for (std::uint32_t e = 0; e < rg.edge_count(); ++e) {
    std::vector<Dart> loop = paths[rg.tail(e)];
    loop.push_back({e, +1});
    const auto& back = paths[rg.head(e)];
    for (std::size_t i = back.size(); i-- > 0;) loop.push_back({back[i].edge, -back[i].dir});
    sign[e] = face_solve(rg, loop);
  }
  return sign;
}

/// Checks every postcondition of a built double cover; throws naming the first failure.
inline void check_double_cover(const QuotientTower& tw, const DoubleCoverDatum& dc) {
  const FiniteGroup& g = *tw.parent.group;
  const std::size_t n = g.order();
  CoverDatum reg = tw.parent.regular_cover();
  std::vector<Perm> projected;
  for (const auto& p : dc.over_base.branch_perms) {
    std::vector<point_t> img(n);
    for (std::size_t x = 0; x < n; ++x) {
      point_t a = p(static_cast<point_t>(2 * x)), b = p(static_cast<point_t>(2 * x + 1));
      if (a / 2 != b / 2) fail(errc::invariant_breach, "sign-forgetting projection is not well defined");
      img[x] = a / 2;
    }
    projected.push_back(Perm::from_images(std::move(img)));
  }
  if (!tuples_conjugate(projected, reg.branch_perms))
    fail(errc::invariant_breach, "sign-forgetting projection is not conjugate to the regular triple");
  for (const auto& p : dc.over_base.branch_perms)
    if (p * dc.involution != dc.involution * p) fail(errc::invariant_breach, "involution does not commute");
  long long stratum = 4 * galois_genus(g, tw.parent.tuple) - 3;
  long long via_base = rh_genus(dc.over_base);
  long long via_pillow = rh_genus(dc.over_pillowcase);
  if (stratum != via_base || stratum != via_pillow)
    fail(errc::invariant_breach, "genus mismatch: stratum " + std::to_string(stratum) + ", base " +
                                     std::to_string(via_base) + ", pillowcase " + std::to_string(via_pillow));

  // Indices over A of the points of Sigma above the poles, seen both ways.
  std::vector<std::size_t> from_base, from_pillow;
  for (const auto& p : dc.over_pillowcase.branch_perms)
    for (auto l : p.cycle_type()) from_pillow.push_back(l);
  for (const auto& bp : tw.branch_points) {
    const Perm& pj = dc.over_base.branch_perms[static_cast<std::size_t>(bp.base_index)];
    std::vector<bool> over(tw.index(), false);
    for (auto c : bp.coset_cycle) over[c] = true;
    for (const auto& cyc : pj.cycles())
      if (over[tw.cosets.coset_of[cyc.front() / 2]]) from_base.push_back(cyc.size() / bp.coset_cycle.size());
  }
  std::sort(from_base.begin(), from_base.end());
  std::vector<std::size_t> pillow_nontrivial;
  for (auto l : from_pillow) pillow_nontrivial.push_back(l);
  std::sort(pillow_nontrivial.begin(), pillow_nontrivial.end());
  if (from_base != pillow_nontrivial) fail(errc::invariant_breach, "cycle structure over the poles disagrees");
  for (const auto& p : dc.over_pillowcase.branch_perms)
    for (const auto& cyc : p.cycles())
      if (cyc.size() % 2 != 0) fail(errc::invariant_breach, "lambda has a zero of odd order");
}

/// Sheets G x {+, -} numbered 2g + s.
inline DoubleCoverDatum double_cover_over_base(const QuotientTower& tw, bool alternate_tree = false) {
  const FiniteGroup& g = *tw.parent.group;
  const std::size_t n = g.order();
  auto sign = sign_cocycle(tw, alternate_tree);
  DoubleCoverDatum dc;
  dc.over_pillowcase = double_cover_over_pillowcase(tw);
  std::vector<Perm> perms;
  for (int j = 0; j < 2; ++j) {
    elem_t gj = tw.parent.tuple[static_cast<std::size_t>(j)];
    std::vector<point_t> img(2 * n);
    for (elem_t x = 0; x < n; ++x) {
      int flip = sign[RibbonGraph::edge_id(tw.cosets.coset_of[x], j)];
      for (point_t s = 0; s < 2; ++s) img[2 * x + s] = 2 * g.mul(gj, x) + (s ^ static_cast<point_t>(flip));
    }
    perms.push_back(Perm::from_images(std::move(img)));
  }
  perms.push_back((perms[0] * perms[1]).inverse());
  if (!is_transitive(perms, 2 * n)) fail(errc::disconnected, "Sigma is disconnected");
  dc.over_base = make_cover(std::move(perms));
  std::vector<point_t> inv(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) inv[i] = static_cast<point_t>(i ^ 1u);
  dc.involution = Perm::from_images(std::move(inv));
  dc.genus_sigma = rh_genus(dc.over_base);
  check_double_cover(tw, dc);
  return dc;
}

enum class Verdict { certified_nonisomorphic, possibly_isomorphic };

struct IsoVerdict {
  Verdict verdict = Verdict::certified_nonisomorphic;
  std::optional<Perm> witness;

  std::string name() const {
    return verdict == Verdict::certified_nonisomorphic ? "CertifiedNonIsomorphic" : "PossiblyIsomorphic";
  }
};

inline constexpr const char* possibly_isomorphic_note =
    "the canonical covers are conjugate; this does not certify that the differentials are isomorphic";

inline IsoVerdict differentials_nonisomorphic(const DoubleCoverDatum& a, const DoubleCoverDatum& b) {
  if (a.over_base.degree != b.over_base.degree) fail(errc::degree_mismatch, "double covers differ in degree");
  auto w = tuples_conjugate(a.over_base.branch_perms, b.over_base.branch_perms);
  if (!w) return {Verdict::certified_nonisomorphic, std::nullopt};
  return {Verdict::possibly_isomorphic, std::move(w)};
}

}  // namespace pillow
