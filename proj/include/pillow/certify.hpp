#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pillow/cover.hpp"
#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/tower.hpp"

namespace pillow {

struct QuadDiffType {
  std::vector<int> zero_orders;

  friend bool operator==(const QuadDiffType&, const QuadDiffType&) = default;
};

/// A point of X: one cycle of the regular branch permutation over base point j.
struct LocusPoint {
  int base_index = 0;
  std::vector<elem_t> elements;  // sorted parent element indices

  friend bool operator==(const LocusPoint&, const LocusPoint&) = default;
  friend auto operator<=>(const LocusPoint&, const LocusPoint&) = default;
};

struct VanishingLocus {
  std::vector<LocusPoint> points;  // sorted

  friend bool operator==(const VanishingLocus&, const VanishingLocus&) = default;
  friend auto operator<=>(const VanishingLocus&, const VanishingLocus&) = default;
};

inline constexpr const char* uniformity_note =
    "X -> X/H is Galois, so every fiber over a point of X/H has a single ramification index";
inline constexpr const char* interpretation_note =
    "(X, q) is a uniform pillowcase cover with simple zeros only; a visible Lagrangian over the line C*q exists";

struct PillowcaseCertificate {
  QuotientTower tower;
  long long genus_X = 0;
  QuadDiffType mu;
  bool uniform = true;
  std::string uniform_reason = uniformity_note;
  VanishingLocus vanishing_locus;
  std::string interpretation = interpretation_note;
};

enum class RejectionKind { not_rational, wrong_branch_count, bad_index, no_order_three_point };

struct Rejection {
  RejectionKind kind;
  long long value = 0;

  std::string describe() const {
    switch (kind) {
      case RejectionKind::not_rational: return "NotRational(genus " + std::to_string(value) + ")";
      case RejectionKind::wrong_branch_count: return "WrongBranchCount(" + std::to_string(value) + ")";
      case RejectionKind::bad_index: return "BadIndex(" + std::to_string(value) + ")";
      case RejectionKind::no_order_three_point: return "NoOrderThreePoint";
    }
    return "Unknown";
  }
};

struct CertifyResult {
  std::optional<PillowcaseCertificate> certificate;
  std::optional<Rejection> rejection;

  explicit operator bool() const noexcept { return certificate.has_value(); }
};

/// Points of X whose ramification index over X/H is 3, one label per
/// cycle of the regular branch permutation.
inline VanishingLocus vanishing_locus(const QuotientTower& tw) {
  const FiniteGroup& g = *tw.parent.group;
  VanishingLocus out;
  for (int j = 0; j < 3; ++j) {
    elem_t gj = tw.parent.tuple[static_cast<std::size_t>(j)];
    const Perm& pj = tw.quotient_cover.branch_perms[static_cast<std::size_t>(j)];
    std::vector<std::size_t> len(tw.index());
    for (const auto& c : pj.cycles())
      for (point_t x : c) len[x] = c.size();
    std::vector<bool> seen(g.order(), false);
    for (elem_t x = 0; x < g.order(); ++x) {
      if (seen[x]) continue;
      LocusPoint p{j, {}};
      for (elem_t y = x; !seen[y]; y = g.mul(gj, y)) {
        seen[y] = true;
        p.elements.push_back(y);
      }
      std::uint64_t e = g.element_order(gj) / len[tw.cosets.coset_of[x]];
      if (e == 3) {
        std::sort(p.elements.begin(), p.elements.end());
        out.points.push_back(std::move(p));
      }
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

inline CertifyResult certify(const QuotientTower& tw) {
  CertifyResult res;
  if (tw.quotient_genus != 0) {
    res.rejection = Rejection{RejectionKind::not_rational, tw.quotient_genus};
    return res;
  }
  if (tw.branch_points.size() != 4) {
    res.rejection = Rejection{RejectionKind::wrong_branch_count, static_cast<long long>(tw.branch_points.size())};
    return res;
  }
  bool has_three = false;
  for (const auto& p : tw.branch_points) {
    if (p.ram_index != 2 && p.ram_index != 3) {
      res.rejection = Rejection{RejectionKind::bad_index, static_cast<long long>(p.ram_index)};
      return res;
    }
    has_three = has_three || p.ram_index == 3;
  }
  if (!has_three) {
    res.rejection = Rejection{RejectionKind::no_order_three_point};
    return res;
  }

  const FiniteGroup& g = *tw.parent.group;
  PillowcaseCertificate cert;
  cert.tower = tw;
  cert.genus_X = galois_genus(g, tw.parent.tuple);

  // Every point of X over a fixed point of A has the same index.
  for (const auto& p : tw.fiber_points) {
    elem_t gj = tw.parent.tuple[static_cast<std::size_t>(p.base_index)];
    for (std::uint32_t c : p.coset_cycle) {
      elem_t x = tw.cosets.transversal[c];
      for (elem_t y : tw.subgroup.elements) {
        elem_t z = g.mul(x, y);
        std::size_t len = 0;
        elem_t w = z;
        do {
          w = g.mul(gj, w);
          ++len;
        } while (w != z);
        if (len / p.coset_cycle.size() != p.ram_index) fail(errc::invariant_breach, "fiber is not uniform");
      }
    }
  }

  // ord = e - 2 at points over the poles, and q is regular elsewhere.
  for (const auto& p : tw.branch_points) {
    std::size_t count = tw.subgroup.order() / p.ram_index;
    for (std::size_t k = 0; k < count; ++k)
      if (p.ram_index == 3) cert.mu.zero_orders.push_back(1);
  }
  if (static_cast<long long>(cert.mu.zero_orders.size()) != 4 * cert.genus_X - 4)
    fail(errc::invariant_breach, "zero count differs from 4g - 4");
  cert.vanishing_locus = vanishing_locus(tw);
  if (cert.vanishing_locus.points.size() != cert.mu.zero_orders.size())
    fail(errc::invariant_breach, "vanishing locus size differs from the zero count");
  res.certificate = std::move(cert);
  return res;
}

inline CertifyResult certify(const GaloisCoverDatum& parent, const Subgroup& h) {
  return certify(quotient_tower(parent, h));
}

}  // namespace pillow
