#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "pillow/cover.hpp"
#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/ribbon.hpp"

namespace pillow {

/// A point of A = X/H over base point j, with its local monodromy in H.
struct TowerPoint {
  int base_index = 0;
  std::vector<std::uint32_t> coset_cycle;  // starts at its least coset
  elem_t local_monodromy = 0;              // r^-1 g_j^len r, r the transversal rep
  std::uint64_t ram_index = 1;             // order of local_monodromy
  std::uint32_t face = 0;                  // face id in the ribbon graph
};

struct QuotientTower {
  GaloisCoverDatum parent;
  Subgroup subgroup;
  CosetAction cosets;
  CoverDatum quotient_cover;
  long long quotient_genus = 0;
  std::vector<TowerPoint> fiber_points;   // every point over the three base points
  std::vector<TowerPoint> branch_points;  // those with nontrivial local monodromy
  std::optional<std::array<elem_t, 4>> tiling_tuple;

  std::size_t index() const { return cosets.index; }
};

namespace detail {

/**
 * Glues the faces of a genus-0 quotient into one polygon along a dual
 * spanning tree and returns the conjugated face loops, lifted from the
 * identity sheet, in gluing order. Their product is the identity.
 */
inline std::vector<elem_t> polygon_loops(const FiniteGroup& g, const std::array<elem_t, 3>& t, const RibbonGraph& rg,
                                         const Subgroup& h) {
  const auto& faces = rg.faces();
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> on_edge(rg.edge_count());
  for (std::uint32_t f = 0; f < faces.size(); ++f)
    for (std::size_t k = 0; k < faces[f].boundary.size(); ++k) on_edge[faces[f].boundary[k].edge].push_back({f, k});

  std::uint32_t start = 0;
  while (start < faces.size()) {
    bool touches = false;
    for (const auto& d : faces[start].boundary) touches = touches || rg.dart_tail(d) == 0;
    if (touches) break;
    ++start;
  }
  if (start == faces.size()) fail(errc::invariant_breach, "no face touches the base sheet");
  std::vector<Dart> boundary = faces[start].boundary;
  auto k0 = std::find_if(boundary.begin(), boundary.end(), [&](const Dart& d) { return rg.dart_tail(d) == 0; });
  std::rotate(boundary.begin(), k0, boundary.end());

  std::vector<bool> glued(faces.size(), false);
  glued[start] = true;
  std::vector<std::vector<Dart>> loops{boundary};
  for (std::size_t count = 1; count < faces.size(); ++count) {
    bool progress = false;
    for (std::size_t pos = 0; pos < boundary.size() && !progress; ++pos) {
      for (auto [f, k] : on_edge[boundary[pos].edge]) {
        if (glued[f]) continue;
        const auto& fw = faces[f].boundary;
        std::vector<Dart> wpart(fw.begin() + static_cast<std::ptrdiff_t>(k) + 1, fw.end());
        wpart.insert(wpart.end(), fw.begin(), fw.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<Dart> loop(boundary.begin(), boundary.begin() + static_cast<std::ptrdiff_t>(pos));
        loop.insert(loop.end(), wpart.begin(), wpart.end());
        loop.push_back(fw[k]);
        for (std::size_t i = pos; i-- > 0;) loop.push_back({boundary[i].edge, -boundary[i].dir});
        loops.push_back(std::move(loop));
        std::vector<Dart> nb(boundary.begin(), boundary.begin() + static_cast<std::ptrdiff_t>(pos));
        nb.insert(nb.end(), wpart.begin(), wpart.end());
        nb.insert(nb.end(), boundary.begin() + static_cast<std::ptrdiff_t>(pos) + 1, boundary.end());
        boundary = std::move(nb);
        glued[f] = true;
        progress = true;
        break;
      }
    }
    if (!progress) fail(errc::invariant_breach, "fundamental polygon gluing stalled");
  }

  std::vector<elem_t> out;
  for (const auto& loop : loops) {
    elem_t x = FiniteGroup::identity();
    for (const auto& d : loop) {
      elem_t gj = t[d.edge % 2];
      x = g.mul(d.dir > 0 ? gj : g.inv(gj), x);
    }
    if (!h.contains(x)) fail(errc::invariant_breach, "polygon loop does not lift to a closed loop");
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

inline QuotientTower quotient_tower(const GaloisCoverDatum& parent, const Subgroup& h) {
  const FiniteGroup& g = *parent.group;
  QuotientTower tw;
  tw.parent = parent;
  tw.subgroup = h;
  std::array<elem_t, 2> letters{parent.tuple[0], parent.tuple[1]};
  tw.cosets = coset_action(g, h, letters);
  std::vector<Perm> pis;
  for (elem_t x : parent.tuple) pis.push_back(tw.cosets.action(g, x));
  tw.quotient_cover = make_cover(pis);
  tw.quotient_genus = rh_genus(tw.quotient_cover);
  if (tw.quotient_cover.degree * h.order() != g.order()) fail(errc::invariant_breach, "index times order differs from |G|");

  RibbonGraph rg(pis[0], pis[1]);
  std::set<std::uint32_t> poles;
  for (int j = 0; j < 3; ++j) {
    for (const auto& cyc : pis[static_cast<std::size_t>(j)].cycles()) {
      TowerPoint p;
      p.base_index = j;
      p.coset_cycle.assign(cyc.begin(), cyc.end());
      elem_t r = tw.cosets.transversal[cyc.front()];
      elem_t gl = g.pow(parent.tuple[static_cast<std::size_t>(j)], static_cast<long long>(cyc.size()));
      p.local_monodromy = g.mul(g.mul(g.inv(r), gl), r);
      if (!h.contains(p.local_monodromy)) fail(errc::invariant_breach, "local monodromy left the subgroup");
      p.ram_index = g.element_order(p.local_monodromy);
      p.face = rg.face_at(j, cyc.front());
      tw.fiber_points.push_back(p);
      if (p.ram_index > 1) {
        tw.branch_points.push_back(p);
        poles.insert(p.face);
      }
    }
  }

  // 2g_X - 2 = |H| (2g_A - 2) + sum over points of X of (e - 1)
  long long lhs = 2 * galois_genus(g, parent.tuple) - 2;
  long long rhs = static_cast<long long>(h.order()) * (2 * tw.quotient_genus - 2);
  for (const auto& p : tw.branch_points)
    rhs += static_cast<long long>(h.order() / p.ram_index) * static_cast<long long>(p.ram_index - 1);
  if (lhs != rhs) fail(errc::invariant_breach, "Riemann-Hurwitz along X -> A does not recombine");

  if (tw.quotient_genus == 0 && tw.branch_points.size() == 4) {
    rg.set_pole_faces(poles);
    auto loops = detail::polygon_loops(g, parent.tuple, rg, h);
    elem_t prod = FiniteGroup::identity();
    for (elem_t x : loops) prod = g.mul(prod, x);
    if (prod != FiniteGroup::identity()) fail(errc::invariant_breach, "polygon loops do not multiply to one");
    std::vector<elem_t> nontrivial;
    for (elem_t x : loops)
      if (x != FiniteGroup::identity()) nontrivial.push_back(x);
    if (nontrivial.size() != 4) fail(errc::invariant_breach, "polygon has the wrong number of branch loops");
    std::array<elem_t, 4> best{};
    for (std::size_t r = 0; r < 4; ++r) {
      std::array<elem_t, 4> rot{};
      for (std::size_t i = 0; i < 4; ++i) rot[i] = nontrivial[(r + i) % 4];
      if (r == 0 || rot < best) best = rot;
    }
    std::vector<std::uint64_t> ords, rams;
    for (elem_t x : best) ords.push_back(g.element_order(x));
    for (const auto& p : tw.branch_points) rams.push_back(p.ram_index);
    std::sort(ords.begin(), ords.end());
    std::sort(rams.begin(), rams.end());
    if (ords != rams) fail(errc::invariant_breach, "tiling tuple orders differ from ramification indices");
    if (subgroup_generated(g, std::span<const elem_t>(best.data(), 4)).order() != h.order())
      fail(errc::invariant_breach, "tiling tuple does not generate the subgroup");
    tw.tiling_tuple = best;
  }
  return tw;
}

/// The ribbon graph of the quotient with the branch faces marked as poles.
inline RibbonGraph tower_ribbon(const QuotientTower& tw) {
  RibbonGraph rg(tw.quotient_cover.branch_perms[0], tw.quotient_cover.branch_perms[1]);
  std::set<std::uint32_t> poles;
  for (const auto& p : tw.branch_points) poles.insert(p.face);
  rg.set_pole_faces(std::move(poles));
  return rg;
}

/// Regular representation of H on its own elements, listed by parent index.
inline Perm subgroup_regular_perm(const FiniteGroup& g, const Subgroup& h, elem_t x) {
  std::vector<point_t> pos(g.order(), 0);
  for (std::size_t i = 0; i < h.elements.size(); ++i) pos[h.elements[i]] = static_cast<point_t>(i);
  std::vector<point_t> img(h.order());
  for (std::size_t i = 0; i < h.elements.size(); ++i) img[i] = pos[g.mul(x, h.elements[i])];
  return Perm::from_images(std::move(img));
}

}  // namespace pillow
