#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/perm.hpp"

namespace pillow {

namespace detail {

/// Joint color refinement of the points of two tuples, so colors are
/// comparable across them. Points of t1 are 0..d-1, of t2 are d..2d-1.
inline std::vector<std::size_t> refine_colors(std::span<const Perm> t1, std::span<const Perm> t2) {
  const std::size_t d = t1.front().degree();
  const std::size_t k = t1.size();
  std::vector<std::size_t> color(2 * d, 0);
  {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto lens = [](const Perm& p) {
      std::vector<std::size_t> len(p.degree());
      for (const auto& c : p.cycles())
        for (point_t x : c) len[x] = c.size();
      return len;
    };
    std::vector<std::vector<std::size_t>> l1, l2;
    for (std::size_t i = 0; i < k; ++i) {
      l1.push_back(lens(t1[i]));
      l2.push_back(lens(t2[i]));
    }
    for (std::size_t x = 0; x < 2 * d; ++x) {
      std::vector<std::size_t> sig;
      for (std::size_t i = 0; i < k; ++i) sig.push_back(x < d ? l1[i][x] : l2[i][x - d]);
      color[x] = ids.emplace(sig, ids.size()).first->second;
    }
  }
  std::vector<Perm> inv1, inv2;
  for (std::size_t i = 0; i < k; ++i) {
    inv1.push_back(t1[i].inverse());
    inv2.push_back(t2[i].inverse());
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(2 * d);
    for (std::size_t x = 0; x < 2 * d; ++x) {
      std::vector<std::size_t> sig{color[x]};
      for (std::size_t i = 0; i < k; ++i) {
        if (x < d) {
          sig.push_back(color[t1[i](static_cast<point_t>(x))]);
          sig.push_back(color[inv1[i](static_cast<point_t>(x))]);
        } else {
          auto y = static_cast<point_t>(x - d);
          sig.push_back(color[d + t2[i](y)]);
          sig.push_back(color[d + inv2[i](y)]);
        }
      }
      next[x] = ids.emplace(sig, ids.size()).first->second;
    }
    color.swap(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return color;
}

}  // namespace detail

/**
 * Finds w with w * t1[i] * w^-1 == t2[i] for every i, or nothing.
 *
 * A conjugator is fixed by the image of one point in each orbit of <t1>, so
 * the search picks an orbit base point and tries every same-colored point of
 * an unused <t2>-orbit, propagating along the generators. An orbit that can
 * be matched to a t2-orbit is matched greedily: orbit isomorphism is an
 * equivalence relation, so a first fit never blocks a later orbit.
 */
inline std::optional<Perm> tuples_conjugate(std::span<const Perm> t1, std::span<const Perm> t2) {
  if (t1.size() != t2.size()) fail(errc::degree_mismatch, "tuples have different lengths");
  if (t1.empty()) return Perm{};
  const std::size_t d = t1.front().degree();
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (t1[i].degree() != d || t2[i].degree() != d) fail(errc::degree_mismatch, "tuple entries differ in degree");
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (t1[i].cycle_type() != t2[i].cycle_type()) return std::nullopt;

  auto color = detail::refine_colors(t1, t2);
  {
    std::vector<std::size_t> c1(color.begin(), color.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<std::size_t> c2(color.begin() + static_cast<std::ptrdiff_t>(d), color.end());
    std::sort(c1.begin(), c1.end());
    std::sort(c2.begin(), c2.end());
    if (c1 != c2) return std::nullopt;
  }

  auto orbs1 = orbits(t1, d);
  auto orbs2 = orbits(t2, d);
  std::vector<std::size_t> orbit2_of(d);
  for (std::size_t k = 0; k < orbs2.size(); ++k)
    for (point_t y : orbs2[k]) orbit2_of[y] = k;
  std::vector<bool> used2(orbs2.size(), false);

  constexpr point_t unset = ~point_t{0};
  std::vector<point_t> w(d, unset);

  // Extends w from base -> target over the t1-orbit of base; rolls back on conflict.
  auto try_map = [&](point_t base, point_t target, const std::vector<point_t>& orbit) {
    w[base] = target;
    std::vector<point_t> stack{base};
    std::vector<bool> taken(d, false);
    taken[target] = true;
    bool ok = true;
    while (!stack.empty() && ok) {
      point_t x = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < t1.size() && ok; ++i) {
        point_t a = t1[i](x), b = t2[i](w[x]);
        if (w[a] == unset) {
          if (taken[b] || color[a] != color[d + b]) {
            ok = false;
          } else {
            w[a] = b;
            taken[b] = true;
            stack.push_back(a);
          }
        } else if (w[a] != b) {
          ok = false;
        }
      }
    }
    if (!ok)
      for (point_t x : orbit) w[x] = unset;
    return ok;
  };

  for (const auto& orb : orbs1) {
    point_t base = orb.front();
    std::vector<point_t> candidates;
    if (color[base] == color[d + base]) candidates.push_back(base);
    for (point_t y = 0; y < d; ++y)
      if (y != base && color[base] == color[d + y]) candidates.push_back(y);
    bool matched = false;
    for (point_t y : candidates) {
      std::size_t k = orbit2_of[y];
      if (used2[k] || orbs2[k].size() != orb.size()) continue;
      if (try_map(base, y, orb)) {
        used2[k] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  Perm wp = Perm::from_images(w);
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (wp * t1[i] != t2[i] * wp) fail(errc::invariant_breach, "conjugating witness failed verification");
  return wp;
}

inline bool verify_conjugator(const Perm& w, std::span<const Perm> t1, std::span<const Perm> t2) {
  if (t1.size() != t2.size()) return false;
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (w * t1[i] != t2[i] * w) return false;
  return true;
}

}  // namespace pillow
