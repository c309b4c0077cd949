#pragma once

#include <string>
#include <vector>

#include "pops/model.hpp"
#include "pops/router.hpp"

namespace pops {

/// Which of the three lower-bound arguments apply to a permutation, and the
/// strongest bound they give. Witnesses record why the others do not apply.
struct BoundReport {
  bool p1 = false;  // derangement: at least ceil(d/g) slots
  bool p2 = false;  // group-collapsing, no group fixed: at least 2*ceil(d/g)
  bool p3 = false;  // group-collapsing derangement: at least 2*ceil(d/(1+g))
  int bound = 0;
  std::vector<std::string> witnesses;
};

inline bool is_derangement(const Permutation& pi) {
  for (int i = 0; i < pi.n(); ++i)
    if (pi(i) == i) return false;
  return true;
}

/// group(i) = group(j) implies group(pi(i)) = group(pi(j)).
inline bool is_group_collapsing(const NetworkConfig& cfg,
                                const Permutation& pi) {
  if (pi.n() != cfg.n()) throw Error("is_group_collapsing: size mismatch");
  for (int h = 0; h < cfg.g; ++h) {
    const int image_group = group_of(cfg, pi(h * cfg.d));
    for (int i = 1; i < cfg.d; ++i)
      if (group_of(cfg, pi(h * cfg.d + i)) != image_group) return false;
  }
  return true;
}

inline BoundReport lower_bound(const NetworkConfig& cfg,
                               const Permutation& pi) {
  BoundReport report;
  const bool derangement = is_derangement(pi);
  const bool collapsing = is_group_collapsing(cfg, pi);
  bool no_group_fixed = true;
  int fixed_group_witness = -1;
  for (int i = 0; i < cfg.n() && no_group_fixed; ++i)
    if (group_of(cfg, i) == group_of(cfg, pi(i))) {
      no_group_fixed = false;
      fixed_group_witness = i;
    }

  if (derangement) {
    report.p1 = true;
    report.bound = std::max(report.bound, ceil_div(cfg.d, cfg.g));
  } else {
    for (int i = 0; i < pi.n(); ++i)
      if (pi(i) == i) {
        report.witnesses.push_back("P1: fixed point at " + std::to_string(i));
        break;
      }
  }

  // The 2-slot arguments assume d > 1; with d = 1 any permutation routes in
  // one slot on the clique, so they are not invoked there.
  if (cfg.d == 1) {
    report.witnesses.push_back("P2: d=1 routes in one slot");
    report.witnesses.push_back("P3: d=1 routes in one slot");
    return report;
  }

  if (collapsing && no_group_fixed) {
    report.p2 = true;
    report.bound = std::max(report.bound, 2 * ceil_div(cfg.d, cfg.g));
  } else if (!collapsing) {
    report.witnesses.push_back("P2: not group-collapsing");
  } else {
    report.witnesses.push_back("P2: group fixed at processor " +
                               std::to_string(fixed_group_witness));
  }

  if (collapsing && derangement) {
    report.p3 = true;
    report.bound = std::max(report.bound, 2 * ceil_div(cfg.d, 1 + cfg.g));
  } else {
    report.witnesses.push_back(!collapsing ? "P3: not group-collapsing"
                                           : "P3: not a derangement");
  }
  return report;
}

}  // namespace pops
