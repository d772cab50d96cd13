#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pillow/error.hpp"

namespace pillow {

using point_t = std::uint32_t;

/**
 * A permutation of {0, ..., d-1} stored as its image array.
 *
 * Products compose right-to-left: (p * q)(x) = p(q(x)). Text input and
 * output use 1-based cycle notation; the image array is 0-based.
 */
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), point_t{0});
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  static Perm from_images(std::vector<point_t> images) {
    std::vector<bool> hit(images.size(), false);
    for (point_t x : images) {
      if (x >= images.size() || hit[x]) fail(errc::invalid_input, "image array is not a bijection");
      hit[x] = true;
    }
    Perm p;
    p.images_ = std::move(images);
    return p;
  }

  /// Parses "(1 2 3)(4 5)"; commas are accepted as separators. Points absent
  /// from the text are fixed. A degree of 0 means "largest point mentioned".
  static Perm from_cycles(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const noexcept { return images_.size(); }
  point_t operator()(point_t x) const { return images_[x]; }
  std::span<const point_t> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<point_t>(i);
    return r;
  }

  friend Perm operator*(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree()) fail(errc::degree_mismatch, "composing permutations of different degree");
    Perm r;
    r.images_.resize(q.images_.size());
    for (std::size_t i = 0; i < q.images_.size(); ++i) r.images_[i] = p.images_[q.images_[i]];
    return r;
  }

  Perm pow(long long k) const {
    Perm base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Perm result(degree());
    while (e) {
      if (e & 1) result = base * result;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// All cycles including fixed points, each starting at its least point,
  /// ordered by that least point.
  std::vector<std::vector<point_t>> cycles() const {
    std::vector<std::vector<point_t>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      auto& c = out.emplace_back();
      for (point_t j = static_cast<point_t>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        c.push_back(j);
      }
    }
    return out;
  }

  std::size_t cycle_count() const {
    std::size_t n = 0;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      ++n;
      for (point_t j = static_cast<point_t>(i); !seen[j]; j = images_[j]) seen[j] = true;
    }
    return n;
  }

  /// Cycle lengths, sorted descending.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> t;
    for (const auto& c : cycles()) t.push_back(c.size());
    std::sort(t.rbegin(), t.rend());
    return t;
  }

  std::uint64_t order() const {
    std::uint64_t l = 1;
    for (const auto& c : cycles()) l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
    return l;
  }

  /// 1-based cycle notation without fixed points; the identity prints as "()".
  std::string to_cycle_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      s += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(c[k] + 1);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<point_t> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (point_t x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Perm Perm::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  bool open = false;
  std::size_t i = 0;
  std::size_t max_point = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
    } else if (ch == '(') {
      if (open) fail(errc::invalid_input, "nested '(' in cycle notation");
      open = true;
      cycles.emplace_back();
      ++i;
    } else if (ch == ')') {
      if (!open) fail(errc::invalid_input, "unbalanced ')' in cycle notation");
      open = false;
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!open) fail(errc::invalid_input, "point outside a cycle");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > (1u << 24)) fail(errc::invalid_input, "point too large");
        ++i;
      }
      if (v == 0) fail(errc::invalid_input, "cycle notation is 1-based; found 0");
      cycles.back().push_back(v - 1);
      max_point = std::max(max_point, v);
    } else {
      fail(errc::invalid_input, std::string("unexpected character '") + ch + "' in cycle notation");
    }
  }
  if (open) fail(errc::invalid_input, "unterminated cycle");
  if (degree == 0) degree = max_point;
  if (max_point > degree) fail(errc::degree_mismatch, "cycle mentions a point beyond the degree");
  std::vector<point_t> img(degree);
  std::iota(img.begin(), img.end(), point_t{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used[c[k]]) fail(errc::invalid_input, "point repeated in cycle notation");
      used[c[k]] = true;
      img[c[k]] = static_cast<point_t>(c[(k + 1) % c.size()]);
    }
  }
  return from_images(std::move(img));
}

/// Splits on ';' and parses each piece as a permutation of the given degree.
inline std::vector<Perm> parse_perm_list(std::string_view text, std::size_t degree) {
  std::vector<Perm> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    bool blank = std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) out.push_back(Perm::from_cycles(piece, degree));
    start = end + 1;
  }
  return out;
}

inline Perm compose_all(std::span<const Perm> perms, std::size_t degree) {
  Perm r(degree);
  for (const auto& p : perms) r = r * p;
  return r;
}

/// Orbits of the group generated by `perms`, each sorted, ordered by least point.
inline std::vector<std::vector<point_t>> orbits(std::span<const Perm> perms, std::size_t degree) {
  std::vector<int> comp(degree, -1);
  std::vector<std::vector<point_t>> out;
  for (std::size_t s = 0; s < degree; ++s) {
    if (comp[s] >= 0) continue;
    auto& orb = out.emplace_back();
    comp[s] = static_cast<int>(out.size() - 1);
    orb.push_back(static_cast<point_t>(s));
    for (std::size_t k = 0; k < orb.size(); ++k) {
      for (const auto& p : perms) {
        point_t y = p(orb[k]);
        if (comp[y] < 0) {
          comp[y] = comp[s];
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
  }
  return out;
}

inline bool is_transitive(std::span<const Perm> perms, std::size_t degree) {
  return degree == 0 || orbits(perms, degree).size() == 1;
}

}  // namespace pillow
