#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/perm.hpp"
#include "pillow/tower.hpp"

namespace pillow {

/// Corner types in tuple order: the tuple (k1, k2, k3, k4) sits at (d, b, c, a).
inline constexpr std::array<char, 4> corner_of_position{'d', 'b', 'c', 'a'};

/// A braid generator applied to a 4-tuple: index i in 0..2, sign +1 or -1.
struct BraidMove {
  int index = 0;
  int sign = +1;

  friend bool operator==(const BraidMove&, const BraidMove&) = default;
};

struct PillowTiling {
  std::size_t degree = 0;
  Perm h1, h2, v;
  /// Corner monodromies at (d, b, c, a), i.e. (h1^-1, h1 v^-1, h2^-1, h2 v).
  std::array<Perm, 4> corners;
  std::vector<BraidMove> braid_word;  // takes the tower's tuple to `corners`
};

/// Sigma_i: (x_i, x_{i+1}) -> (x_i x_{i+1} x_i^-1, x_i); the inverse for sign -1.
inline std::array<Perm, 4> apply_braid(std::array<Perm, 4> t, BraidMove m) {
  auto i = static_cast<std::size_t>(m.index);
  const Perm a = t[i], b = t[i + 1];
  if (m.sign > 0) {
    t[i] = a * b * a.inverse();
    t[i + 1] = a;
  } else {
    t[i] = b;
    t[i + 1] = b.inverse() * a * b;
  }
  return t;
}

/// Least relabeling of a tuple of permutations under simultaneous conjugation.
inline std::vector<std::vector<point_t>> canonical_relabel(std::span<const Perm> t) {
  const std::size_t n = t.empty() ? 0 : t.front().degree();
  std::vector<std::vector<point_t>> best;
  constexpr point_t unset = ~point_t{0};
  for (point_t s = 0; s < n; ++s) {
    std::vector<point_t> lab(n, unset), order{s};
    lab[s] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (const auto& p : t) {
        point_t y = p(order[k]);
        if (lab[y] == unset) {
          lab[y] = static_cast<point_t>(order.size());
          order.push_back(y);
        }
      }
    if (order.size() != n) fail(errc::invalid_input, "canonical relabeling needs a transitive tuple");
    std::vector<std::vector<point_t>> key;
    for (const auto& p : t) {
      std::vector<point_t> row(n);
      for (std::size_t k = 0; k < n; ++k) row[k] = lab[p(order[k])];
      key.push_back(std::move(row));
    }
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

/// Tiling read directly off corner monodromies in (d, b, c, a) order.
inline PillowTiling pillow_tiling_from_corners(const std::array<Perm, 4>& k) {
  const std::size_t d = k[0].degree();
  for (const auto& p : k)
    if (p.degree() != d) fail(errc::degree_mismatch, "corner monodromies differ in degree");
  if (!compose_all(k, d).is_identity()) fail(errc::invalid_input, "corner monodromies do not compose to one");
  PillowTiling t;
  t.degree = d;
  t.h1 = k[0].inverse();
  t.h2 = k[2].inverse();
  t.v = k[2] * k[3];
  if (t.v != k[1].inverse() * t.h1) fail(errc::labeling_inconsistent, "the two expressions for v disagree");
  t.corners = k;
  if (!is_transitive(k, d)) fail(errc::invalid_input, "corner monodromies are not transitive");
  return t;
}

/// The same tiling from its gluing permutations.
inline PillowTiling pillow_tiling_from_gluings(const Perm& h1, const Perm& h2, const Perm& v) {
  return pillow_tiling_from_corners({h1.inverse(), h1 * v.inverse(), h2.inverse(), h2 * v});
}

namespace detail {

struct TilingKey {
  std::size_t distinct;
  std::uint64_t corner_d_order;
  int coincidence;  // 0: h1 = h2, 1: h2 = v, 2: h1 = v, 3: none
  std::vector<std::vector<point_t>> shape;

  friend auto operator<=>(const TilingKey&, const TilingKey&) = default;
};

inline TilingKey tiling_key(const std::array<Perm, 4>& k) {
  Perm h1 = k[0].inverse(), h2 = k[2].inverse(), v = k[2] * k[3];
  std::set<Perm> s{h1, h2, v};
  int co = h1 == h2 ? 0 : (h2 == v ? 1 : (h1 == v ? 2 : 3));
  std::array<Perm, 3> hv{h1, h2, v};
  return {s.size(), k[0].order(), co, canonical_relabel(hv)};
}

}  // namespace detail

inline constexpr std::size_t braid_orbit_cap = 20000;

/**
 * Tiling of the tower's pillowcase cover under the regular representation
 * of H.
 *
 * The polygon tuple is moved through its Hurwitz orbit (classes up to
 * relabeling) and the representative with the fewest distinct tiling
 * permutations wins; ties go to the lower order at corner d, then the
 * coincidence pattern, then the relabeling-canonical (h1, h2, v).
 */
inline PillowTiling pillow_tiling(const QuotientTower& tw) {
  if (!tw.tiling_tuple) fail(errc::invalid_input, "tower has no four-point tiling tuple");
  const FiniteGroup& g = *tw.parent.group;
  std::array<Perm, 4> start;
  for (std::size_t i = 0; i < 4; ++i) start[i] = subgroup_regular_perm(g, tw.subgroup, (*tw.tiling_tuple)[i]);

  struct State {
    std::array<Perm, 4> tuple;
    std::vector<BraidMove> word;
  };
  std::map<std::vector<std::vector<point_t>>, std::size_t> seen;
  std::vector<State> states{{start, {}}};
  seen.emplace(canonical_relabel(start), 0);
  for (std::size_t k = 0; k < states.size() && states.size() < braid_orbit_cap; ++k) {
    for (int i = 0; i < 3; ++i)
      for (int sgn : {+1, -1}) {
        BraidMove m{i, sgn};
        auto next = apply_braid(states[k].tuple, m);
        if (seen.emplace(canonical_relabel(next), states.size()).second) {
          auto word = states[k].word;
          word.push_back(m);
          states.push_back({std::move(next), std::move(word)});
        }
      }
  }
  std::size_t best = 0;
  auto best_key = detail::tiling_key(states[0].tuple);
  for (std::size_t k = 1; k < states.size(); ++k) {
    auto key = detail::tiling_key(states[k].tuple);
    if (key < best_key) {
      best_key = std::move(key);
      best = k;
    }
  }
  PillowTiling t = pillow_tiling_from_corners(states[best].tuple);
  t.braid_word = states[best].word;
  auto replay = start;
  for (auto m : t.braid_word) replay = apply_braid(replay, m);
  if (replay != t.corners) fail(errc::invariant_breach, "braid word does not reproduce the tiling tuple");
  std::array<Perm, 3> gens{t.h1, t.h2, t.v};
  if (!is_transitive(gens, t.degree)) fail(errc::invariant_breach, "tiling permutations are not transitive");
  return t;
}

/// Corner assignment as printed in metadata.
inline std::string corner_assignment_text() { return "k1=d k2=b k3=c k4=a; h1=k1^-1 h2=k3^-1 v=k3*k4"; }

}  // namespace pillow
