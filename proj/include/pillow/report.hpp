#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pillow/certify.hpp"
#include "pillow/double_cover.hpp"
#include "pillow/group.hpp"
#include "pillow/parallel.hpp"

namespace pillow {

struct MultifoldOptions {
  std::size_t threads = 1;
  bool double_covers = true;
  const std::vector<Subgroup>* subgroups = nullptr;  // reuse a precomputed list
};

struct MultifoldReport {
  GaloisCoverDatum parent;
  std::vector<PillowcaseCertificate> certificates;   // in subgroup order
  std::vector<DoubleCoverDatum> double_covers;        // parallel to certificates when requested
  std::vector<std::size_t> locus_class;               // certificate -> index of its distinct locus
  std::size_t n = 0;
  std::vector<std::vector<bool>> pairwise_distinct;
  std::vector<std::vector<std::optional<Verdict>>> verdicts;  // off-diagonal only
  std::map<std::string, std::size_t> rejections;
  std::vector<std::string> errors;

  bool multifold() const noexcept { return n >= 2; }
};

inline std::string rejection_bucket(const Rejection& r) {
  switch (r.kind) {
    case RejectionKind::not_rational: return "NotRational";
    case RejectionKind::wrong_branch_count: return "WrongBranchCount(" + std::to_string(r.value) + ")";
    case RejectionKind::bad_index: return "BadIndex(" + std::to_string(r.value) + ")";
    case RejectionKind::no_order_three_point: return "NoOrderThreePoint";
  }
  return "Unknown";
}

inline MultifoldReport multifold_report(const GaloisCoverDatum& parent, const MultifoldOptions& opt = {}) {
  std::vector<Subgroup> own;
  if (!opt.subgroups) own = all_subgroups(*parent.group);
  const auto& subs = opt.subgroups ? *opt.subgroups : own;

  struct Item {
    CertifyResult result;
    std::optional<DoubleCoverDatum> dc;
  };
  auto items = parallel_map(subs.size(), opt.threads, [&](std::size_t i) {
    Item it{certify(parent, subs[i]), std::nullopt};
    if (it.result && opt.double_covers) it.dc = double_cover_over_base(it.result.certificate->tower);
    return it;
  });

  MultifoldReport rep;
  rep.parent = parent;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].ok()) {
      rep.errors.push_back("subgroup " + std::to_string(i) + ": " + items[i].error);
      continue;
    }
    auto& it = *items[i].value;
    if (it.result.rejection) {
      ++rep.rejections[rejection_bucket(*it.result.rejection)];
      continue;
    }
    rep.certificates.push_back(std::move(*it.result.certificate));
    if (it.dc) rep.double_covers.push_back(std::move(*it.dc));
  }

  std::vector<const VanishingLocus*> classes;
  for (const auto& c : rep.certificates) {
    std::size_t k = 0;
    while (k < classes.size() && !(*classes[k] == c.vanishing_locus)) ++k;
    if (k == classes.size()) classes.push_back(&c.vanishing_locus);
    rep.locus_class.push_back(k);
  }
  rep.n = classes.size();
  const std::size_t m = rep.certificates.size();
  rep.pairwise_distinct.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rep.pairwise_distinct[i][j] = rep.locus_class[i] != rep.locus_class[j];

  rep.verdicts.assign(m, std::vector<std::optional<Verdict>>(m));
  if (rep.double_covers.size() == m) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) pairs.push_back({i, j});
    auto vs = parallel_map(pairs.size(), opt.threads, [&](std::size_t k) {
      return differentials_nonisomorphic(rep.double_covers[pairs[k].first], rep.double_covers[pairs[k].second]).verdict;
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!vs[k].ok()) {
        rep.errors.push_back("comparison " + std::to_string(pairs[k].first) + "/" + std::to_string(pairs[k].second) +
                             ": " + vs[k].error);
        continue;
      }
      rep.verdicts[pairs[k].first][pairs[k].second] = *vs[k].value;
      rep.verdicts[pairs[k].second][pairs[k].first] = *vs[k].value;
    }
  }
  return rep;
}

}  // namespace pillow
