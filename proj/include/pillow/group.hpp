#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/perm.hpp"

namespace pillow {

using elem_t = std::uint32_t;

inline constexpr std::size_t default_order_cap = 10000;
inline constexpr std::size_t default_subgroup_cap = 500;

/**
 * A permutation group with every element enumerated.
 *
 * Elements are listed breadth-first by word length in the generators; each
 * new layer is sorted by image array. Index 0 is always the identity.
 */
class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const Perm& element(elem_t i) const { return elements_.at(i); }

  static constexpr elem_t identity() noexcept { return 0; }

  std::optional<elem_t> index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  elem_t require_index(const Perm& p) const {
    auto i = index_of(p);
    if (!i) fail(errc::not_a_subgroup, "permutation " + p.to_cycle_string() + " is not a group element");
    return *i;
  }

  /// Index of element(a) * element(b).
  elem_t mul(elem_t a, elem_t b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  elem_t inv(elem_t a) const { return inverses_[a]; }
  std::uint64_t element_order(elem_t a) const { return orders_[a]; }

  elem_t pow(elem_t a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    elem_t r = identity();
    for (long long i = 0; i < k; ++i) r = mul(a, r);
    return r;
  }

  elem_t conj(elem_t g, elem_t x) const { return mul(mul(g, x), inv(g)); }

  /// Index of the product of a word of elements, left to right.
  elem_t product(std::span<const elem_t> word) const {
    elem_t r = identity();
    for (elem_t x : word) r = mul(r, x);
    return r;
  }

  friend FiniteGroup group_from_generators(std::size_t degree, std::vector<Perm> generators, std::size_t cap);

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, elem_t, PermHash> index_;
  std::vector<elem_t> table_;
  std::vector<elem_t> inverses_;
  std::vector<std::uint64_t> orders_;
};

inline FiniteGroup group_from_generators(std::size_t degree, std::vector<Perm> generators,
                                         std::size_t cap = default_order_cap) {
  for (const auto& g : generators)
    if (g.degree() != degree) fail(errc::degree_mismatch, "generator degree differs from the group degree");
  FiniteGroup G;
  G.degree_ = degree;
  G.generators_ = std::move(generators);
  G.elements_.push_back(Perm::identity(degree));
  G.index_.emplace(G.elements_.back(), 0);
  std::vector<elem_t> layer{0};
  while (!layer.empty()) {
    std::vector<Perm> fresh;
    for (elem_t i : layer) {
      for (const auto& s : G.generators_) {
        Perm h = s * G.elements_[i];
        if (G.index_.count(h)) continue;
        G.index_.emplace(h, 0);
        fresh.push_back(std::move(h));
        if (G.index_.size() > cap) fail(errc::order_cap_exceeded, "group order exceeds " + std::to_string(cap));
      }
    }
    std::sort(fresh.begin(), fresh.end());
    layer.clear();
    for (auto& h : fresh) {
      auto id = static_cast<elem_t>(G.elements_.size());
      G.index_[h] = id;
      G.elements_.push_back(std::move(h));
      layer.push_back(id);
    }
  }
  const std::size_t n = G.elements_.size();
  if (n <= 2048) {
    G.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) G.table_[a * n + b] = G.index_.at(G.elements_[a] * G.elements_[b]);
  }
  G.inverses_.resize(n);
  G.orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    G.inverses_[a] = G.index_.at(G.elements_[a].inverse());
    G.orders_[a] = G.elements_[a].order();
  }
  return G;
}

/// Product acting on the disjoint union of the two point sets.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::size_t cap = default_order_cap) {
  if (a.order() * b.order() > cap) fail(errc::order_cap_exceeded, "direct product order exceeds the cap");
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) {
    std::vector<point_t> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = g(static_cast<point_t>(i));
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<point_t>(da + i);
    gens.push_back(Perm::from_images(std::move(img)));
  }
  for (const auto& g : b.generators()) {
    std::vector<point_t> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = static_cast<point_t>(i);
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<point_t>(da + g(static_cast<point_t>(i)));
    gens.push_back(Perm::from_images(std::move(img)));
  }
  return group_from_generators(da + db, std::move(gens), cap);
}

/// ρ(g)(h) = gh on element indices.
inline std::vector<Perm> regular_representation(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Perm> rho;
  rho.reserve(n);
  for (elem_t a = 0; a < n; ++a) {
    std::vector<point_t> img(n);
    for (elem_t h = 0; h < n; ++h) img[h] = g.mul(a, h);
    rho.push_back(Perm::from_images(std::move(img)));
  }
  return rho;
}

inline Perm regular_perm(const FiniteGroup& g, elem_t a) {
  std::vector<point_t> img(g.order());
  for (elem_t h = 0; h < g.order(); ++h) img[h] = g.mul(a, h);
  return Perm::from_images(std::move(img));
}

/**
 * A subgroup stored as a sorted set of parent element indices.
 *
 * `generators` is the greedy canonical generating set: scanning parent
 * indices upward, an element is kept when it is not in the span of the
 * ones kept before it.
 */
struct Subgroup {
  std::vector<elem_t> elements;
  std::vector<elem_t> generators;
  std::vector<std::uint64_t> mask;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(elem_t i) const { return (mask[i >> 6] >> (i & 63)) & 1u; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask == b.mask; }
};

namespace detail {

inline std::vector<std::uint64_t> closure_mask(const FiniteGroup& g, std::span<const elem_t> gens) {
  std::vector<std::uint64_t> mask((g.order() + 63) / 64, 0);
  auto set = [&](elem_t i) { mask[i >> 6] |= std::uint64_t{1} << (i & 63); };
  auto has = [&](elem_t i) { return (mask[i >> 6] >> (i & 63)) & 1u; };
  std::vector<elem_t> todo{FiniteGroup::identity()};
  set(FiniteGroup::identity());
  for (std::size_t k = 0; k < todo.size(); ++k) {
    for (elem_t s : gens) {
      elem_t y = g.mul(s, todo[k]);
      if (!has(y)) {
        set(y);
        todo.push_back(y);
      }
    }
  }
  return mask;
}

inline Subgroup subgroup_from_mask(const FiniteGroup& g, std::vector<std::uint64_t> mask) {
  Subgroup s;
  s.mask = std::move(mask);
  for (elem_t i = 0; i < g.order(); ++i)
    if (s.contains(i)) s.elements.push_back(i);
  std::vector<std::uint64_t> span((g.order() + 63) / 64, 0);
  span[0] = 1;
  for (elem_t i : s.elements) {
    if ((span[i >> 6] >> (i & 63)) & 1u) continue;
    s.generators.push_back(i);
    span = closure_mask(g, s.generators);
  }
  return s;
}

}  // namespace detail

inline Subgroup subgroup_generated(const FiniteGroup& g, std::span<const elem_t> gens) {
  for (elem_t x : gens)
    if (x >= g.order()) fail(errc::index_out_of_range, "element index out of range");
  return detail::subgroup_from_mask(g, detail::closure_mask(g, gens));
}

inline Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Perm> gens) {
  std::vector<elem_t> idx;
  for (const auto& p : gens) {
    if (p.degree() != g.degree()) fail(errc::degree_mismatch, "subgroup generator has the wrong degree");
    idx.push_back(g.require_index(p));
  }
  return subgroup_generated(g, std::span<const elem_t>(idx));
}

/// Verifies that every element of `h` lies in `g` and returns it as a subgroup.
inline Subgroup as_subgroup(const FiniteGroup& g, const FiniteGroup& h) {
  if (h.degree() != g.degree()) fail(errc::not_a_subgroup, "subgroup acts on a different point set");
  std::vector<elem_t> gens;
  for (const auto& p : h.elements()) {
    auto i = g.index_of(p);
    if (!i) fail(errc::not_a_subgroup, p.to_cycle_string() + " is not in the parent group");
    gens.push_back(*i);
  }
  return subgroup_generated(g, std::span<const elem_t>(gens));
}

/// The subgroup as a group in its own right, generated by its canonical generators.
inline FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Perm> gens;
  for (elem_t x : s.generators) gens.push_back(g.element(x));
  return group_from_generators(g.degree(), std::move(gens), std::max(default_order_cap, s.order()));
}

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  if (a.generators != b.generators) return a.generators < b.generators;
  return a.elements < b.elements;
}

/// Every subgroup exactly once: cyclic subgroups, then closure under joins.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t cap = default_subgroup_cap) {
  if (g.order() > cap) fail(errc::order_cap_exceeded, "all_subgroups limited to order " + std::to_string(cap));
  struct MaskHash {
    std::size_t operator()(const std::vector<std::uint64_t>& m) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (auto w : m) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, MaskHash> seen;
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<std::vector<elem_t>> gens_of;
  std::vector<elem_t> cyclic_gens;

  for (elem_t x = 0; x < g.order(); ++x) {
    std::vector<elem_t> gx{x};
    auto m = detail::closure_mask(g, gx);
    if (seen.emplace(m, masks.size()).second) {
      masks.push_back(std::move(m));
      gens_of.push_back(gx);
      cyclic_gens.push_back(x);
    }
  }
  for (std::size_t k = 0; k < masks.size(); ++k) {
    for (elem_t c : cyclic_gens) {
      if ((masks[k][c >> 6] >> (c & 63)) & 1u) continue;
      auto gens = gens_of[k];
      gens.push_back(c);
      auto m = detail::closure_mask(g, gens);
      if (seen.emplace(m, masks.size()).second) {
        masks.push_back(std::move(m));
        gens_of.push_back(std::move(gens));
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(masks.size());
  for (auto& m : masks) out.push_back(detail::subgroup_from_mask(g, std::move(m)));
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

/**
 * Left multiplication on the left cosets xH.
 *
 * Cosets are numbered in breadth-first order from H itself, trying the
 * letters in the given order and then their inverses. `transversal[c]` is
 * the product of the first word reaching coset c, so it represents c.
 */
struct CosetAction {
  std::size_t index = 0;
  std::vector<std::uint32_t> coset_of;
  std::vector<elem_t> transversal;
  /// Word for each representative: entries are (letter, +1 | -1), applied
  /// left to right as successive left multiplications.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> words;

  Perm action(const FiniteGroup& g, elem_t x) const {
    std::vector<point_t> img(index);
    for (std::size_t c = 0; c < index; ++c) img[c] = coset_of[g.mul(x, transversal[c])];
    return Perm::from_images(std::move(img));
  }
};

inline CosetAction coset_action(const FiniteGroup& g, const Subgroup& h, std::span<const elem_t> letters) {
  if (h.mask.size() != (g.order() + 63) / 64 || !h.contains(FiniteGroup::identity()))
    fail(errc::not_a_subgroup, "subgroup does not belong to this group");
  if (g.order() % h.order() != 0) fail(errc::not_a_subgroup, "subgroup order does not divide group order");
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  CosetAction ca;
  ca.index = g.order() / h.order();
  ca.coset_of.assign(g.order(), unset);
  auto claim = [&](elem_t rep, std::uint32_t id) {
    for (elem_t y : h.elements) ca.coset_of[g.mul(rep, y)] = id;
  };
  claim(FiniteGroup::identity(), 0);
  ca.transversal.push_back(FiniteGroup::identity());
  ca.words.emplace_back();
  std::vector<std::pair<elem_t, std::pair<std::uint32_t, int>>> moves;
  for (std::uint32_t k = 0; k < letters.size(); ++k) moves.push_back({letters[k], {k, +1}});
  for (std::uint32_t k = 0; k < letters.size(); ++k) moves.push_back({g.inv(letters[k]), {k, -1}});
  for (std::size_t c = 0; c < ca.transversal.size(); ++c) {
    for (const auto& [s, tag] : moves) {
      elem_t r = g.mul(s, ca.transversal[c]);
      if (ca.coset_of[r] != unset) continue;
      auto id = static_cast<std::uint32_t>(ca.transversal.size());
      claim(r, id);
      ca.transversal.push_back(r);
      auto w = ca.words[c];
      w.push_back(tag);
      ca.words.push_back(std::move(w));
    }
  }
  if (ca.transversal.size() != ca.index) fail(errc::invariant_breach, "letters do not act transitively on cosets");
  for (std::size_t k = 0; k < g.order(); ++k)
    if (ca.coset_of[k] == unset) fail(errc::not_a_subgroup, "cosets do not partition the group");
  return ca;
}

inline CosetAction coset_action(const FiniteGroup& g, const Subgroup& h) {
  std::vector<elem_t> letters;
  for (const auto& p : g.generators()) letters.push_back(g.require_index(p));
  return coset_action(g, h, letters);
}

}  // namespace pillow
