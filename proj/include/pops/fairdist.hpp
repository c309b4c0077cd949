#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pops/edge_coloring.hpp"
#include "pops/model.hpp"

namespace pops {

/// List system (S,T,L): n1 sources, n2 targets, each source s carrying a
/// list of delta1 (not necessarily distinct) elements of S.
struct ListSystem {
  int n1 = 0;
  int n2 = 0;
  int delta1 = 0;
  std::vector<std::vector<int>> lists;  // n1 rows of delta1 values in {0..n1-1}

  /// Multiplicity of s_prime in the list of s.
  int multiplicity(int s, int s_prime) const {
    int count = 0;
    for (int v : lists[s])
      if (v == s_prime) ++count;
    return count;
  }
};

inline void check_well_formed(const ListSystem& ls) {
  if (ls.n1 < 0 || ls.n2 < 1) throw Error("list system: need n1 >= 0, n2 >= 1");
  if (ls.delta1 > ls.n2)
    throw Error("list system: delta1 = " + std::to_string(ls.delta1) +
                " exceeds n2 = " + std::to_string(ls.n2));
  if (static_cast<int>(ls.lists.size()) != ls.n1)
    throw Error("list system: expected " + std::to_string(ls.n1) + " lists");
  for (int s = 0; s < ls.n1; ++s) {
    if (static_cast<int>(ls.lists[s].size()) != ls.delta1)
      throw Error("list system: list " + std::to_string(s) +
                  " has wrong length");
    for (int v : ls.lists[s])
      if (v < 0 || v >= ls.n1)
        throw Error("list system: list " + std::to_string(s) +
                    " holds out-of-range element " + std::to_string(v));
  }
}

/// Assignment f of list positions to targets with load delta2 = n1*delta1/n2
/// per target.
struct FairDistribution {
  std::vector<std::vector<int>> f;  // n1 rows of delta1 values in {0..n2-1}
  int delta2 = 0;
};

struct PropernessReport {
  bool proper = false;
  std::string reason;  // first violated condition, empty when proper

  explicit operator bool() const { return proper; }
};

/// Proper: n2 divides n1*delta1 and every element of S occurs delta1 times
/// across all lists.
inline PropernessReport is_proper(const ListSystem& ls) {
  check_well_formed(ls);
  if (ls.n2 == 0 || (ls.n1 * ls.delta1) % ls.n2 != 0)
    return {false, "n2 = " + std::to_string(ls.n2) +
                       " does not divide n1*delta1 = " +
                       std::to_string(ls.n1 * ls.delta1)};
  std::vector<int> occurrences(ls.n1, 0);
  for (const auto& list : ls.lists)
    for (int v : list) ++occurrences[v];
  for (int s_prime = 0; s_prime < ls.n1; ++s_prime)
    if (occurrences[s_prime] != ls.delta1)
      return {false, "element " + std::to_string(s_prime) + " occurs " +
                         std::to_string(occurrences[s_prime]) +
                         " times across lists, expected delta1 = " +
                         std::to_string(ls.delta1)};
  return {true, ""};
}

struct FairnessReport {
  bool ok = false;
  std::string violation;  // property name plus witness, empty when ok

  explicit operator bool() const { return ok; }
};

/// Literal check of the three fair-distribution properties; reports the
/// first failing property with its witness.
inline FairnessReport verify_fair(const ListSystem& ls,
                                  const FairDistribution& fd) {
  const auto prop = is_proper(ls);
  if (!prop) return {false, "improper list system: " + prop.reason};
  if (static_cast<int>(fd.f.size()) != ls.n1)
    throw Error("verify_fair: shape mismatch (rows)");
  for (const auto& row : fd.f)
    if (static_cast<int>(row.size()) != ls.delta1)
      throw Error("verify_fair: shape mismatch (row length)");

  const int delta2 = ls.n2 == 0 ? 0 : ls.n1 * ls.delta1 / ls.n2;
  if (fd.delta2 != delta2)
    return {false, "delta2 mismatch: " + std::to_string(fd.delta2) +
                       " stored, " + std::to_string(delta2) + " expected"};

  // (1) per-source distinctness
  for (int s = 0; s < ls.n1; ++s) {
    std::vector<char> seen(ls.n2, 0);
    for (int i = 0; i < ls.delta1; ++i) {
      const int t = fd.f[s][i];
      if (t < 0 || t >= ls.n2)
        return {false, "target out of range at s=" + std::to_string(s) +
                           " i=" + std::to_string(i)};
      if (seen[t])
        return {false, "property (1): source s=" + std::to_string(s) +
                           " maps two positions to target " +
                           std::to_string(t)};
      seen[t] = 1;
    }
  }
  // (2) per-target load
  std::vector<int> load(ls.n2, 0);
  for (const auto& row : fd.f)
    for (int t : row) ++load[t];
  for (int t = 0; t < ls.n2; ++t)
    if (load[t] != delta2)
      return {false, "property (2): target " + std::to_string(t) + " has " +
                         std::to_string(load[t]) + " preimages, expected " +
                         std::to_string(delta2)};
  // (3) equal list values get distinct targets
  std::map<std::pair<int, int>, std::pair<int, int>> seen_value_target;
  for (int s = 0; s < ls.n1; ++s)
    for (int i = 0; i < ls.delta1; ++i) {
      const auto key = std::make_pair(ls.lists[s][i], fd.f[s][i]);
      auto [it, inserted] = seen_value_target.emplace(key, std::make_pair(s, i));
      if (!inserted)
        return {false,
                "property (3): positions (" + std::to_string(it->second.first) +
                    "," + std::to_string(it->second.second) + ") and (" +
                    std::to_string(s) + "," + std::to_string(i) +
                    ") share list value " + std::to_string(key.first) +
                    " and target " + std::to_string(key.second)};
    }
  return {true, ""};
}

/// Constructive existence proof turned algorithm: build the multigraph with
/// l(s,s') parallel edges, pad both sides to n2-regular with stub-paired
/// filler graphs, 1-factorize, and read targets off the colors of the
/// original edges.
inline FairDistribution find_fair_distribution(const ListSystem& ls) {
  const auto prop = is_proper(ls);
  if (!prop) throw Error("find_fair_distribution: " + prop.reason);

  const int n1 = ls.n1, n2 = ls.n2, delta1 = ls.delta1;
  const int delta2 = n1 * delta1 / n2;
  const int pad = n1 - delta2;  // |V| = |V'|
  if (pad < 0) throw Error("find_fair_distribution: delta2 exceeds n1");

  // Left nodes: S = 0..n1-1, V = n1..n1+pad-1.
  // Right nodes: S' = 0..n1-1, V' = n1..n1+pad-1.
  BipartiteMultigraph graph;
  graph.left_count = n1 + pad;
  graph.right_count = n1 + pad;
  const int list_edges = n1 * delta1;
  graph.edges.reserve(list_edges + 2 * pad * n2);
  for (int s = 0; s < n1; ++s)
    for (int i = 0; i < delta1; ++i) graph.edges.push_back({s, ls.lists[s][i]});

  // F1: V (degree n2 each) against S' (deficit n2 - delta1 each).
  const auto f1 = pad_to_regular(std::vector<int>(pad, n2),
                                 std::vector<int>(n1, n2 - delta1), n2);
  for (const auto& e : f1.edges) graph.edges.push_back({n1 + e.left, e.right});
  // F2: S (deficit n2 - delta1 each) against V' (degree n2 each).
  const auto f2 = pad_to_regular(std::vector<int>(n1, n2 - delta1),
                                 std::vector<int>(pad, n2), n2);
  for (const auto& e : f2.edges) graph.edges.push_back({e.left, n1 + e.right});

  if (check_regular(graph) != (graph.edges.empty() ? 0 : n2))
    throw Error("find_fair_distribution: padded graph is not n2-regular");

  const auto fact = one_factorize(graph);

  FairDistribution fd;
  fd.delta2 = delta2;
  fd.f.assign(n1, std::vector<int>(delta1, -1));
  for (int s = 0; s < n1; ++s)
    for (int i = 0; i < delta1; ++i)
      fd.f[s][i] = fact.color_of[s * delta1 + i];

  // Parallel edges of one (s,s') pair carry distinct colors; hand them to
  // the positions in increasing position order by increasing color.
  for (int s = 0; s < n1; ++s) {
    std::map<int, std::vector<int>> positions_by_value;
    for (int i = 0; i < delta1; ++i)
      positions_by_value[ls.lists[s][i]].push_back(i);
    for (auto& [value, positions] : positions_by_value) {
      if (positions.size() < 2) continue;
      std::vector<int> colors;
      for (int i : positions) colors.push_back(fd.f[s][i]);
      std::sort(colors.begin(), colors.end());
      for (std::size_t k = 0; k < positions.size(); ++k)
        fd.f[s][positions[k]] = colors[k];
    }
  }

  // Each color class restricted to the list edges must have size delta2.
  std::vector<int> class_size(n2, 0);
  for (const auto& row : fd.f)
    for (int t : row) ++class_size[t];
  for (int c = 0; c < n2 && list_edges > 0; ++c)
    if (class_size[c] != delta2)
      throw Error("find_fair_distribution: color class " + std::to_string(c) +
                  " has size " + std::to_string(class_size[c]) + ", expected " +
                  std::to_string(delta2));
  return fd;
}

}  // namespace pops
