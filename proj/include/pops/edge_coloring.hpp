#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "pops/model.hpp"

namespace pops {

/// Bipartite multigraph; parallel edges are distinguished by their index in
/// `edges`, which doubles as the edge id.
struct BipartiteMultigraph {
  struct Edge {
    int left;
    int right;
  };

  int left_count = 0;
  int right_count = 0;
  std::vector<Edge> edges;
};

/// Partition of an r-regular graph's edges into r perfect matchings;
/// color_of[edge_id] in {0..colors-1}.
struct Factorization {
  std::vector<int> color_of;
  int colors = 0;
};

/// Returns r if every node on both sides has degree exactly r, throws
/// naming a violating node otherwise. The empty graph has r = 0.
inline int check_regular(const BipartiteMultigraph& g) {
  std::vector<int> ldeg(g.left_count, 0), rdeg(g.right_count, 0);
  for (const auto& e : g.edges) {
    if (e.left < 0 || e.left >= g.left_count || e.right < 0 ||
        e.right >= g.right_count)
      throw Error("edge endpoint out of range");
    ++ldeg[e.left];
    ++rdeg[e.right];
  }
  if (g.edges.empty()) return 0;
  const int r = ldeg.empty() ? 0 : ldeg[0];
  for (int v = 0; v < g.left_count; ++v)
    if (ldeg[v] != r)
      throw Error("graph is not regular: left node " + std::to_string(v) +
                  " has degree " + std::to_string(ldeg[v]) + ", expected " +
                  std::to_string(r));
  for (int v = 0; v < g.right_count; ++v)
    if (rdeg[v] != r)
      throw Error("graph is not regular: right node " + std::to_string(v) +
                  " has degree " + std::to_string(rdeg[v]) + ", expected " +
                  std::to_string(r));
  return r;
}

/// Deterministic stub pairing: each node contributes degree-many stubs in
/// node order, and the k-th left stub is wired to the k-th right stub.
inline BipartiteMultigraph pad_to_regular(const std::vector<int>& left_degrees,
                                          const std::vector<int>& right_degrees,
                                          int target_r) {
  long long lsum = 0, rsum = 0;
  for (int d : left_degrees) {
    if (d < 0 || d > target_r)
      throw Error("pad_to_regular: left deficit out of [0," +
                  std::to_string(target_r) + "]");
    lsum += d;
  }
  for (int d : right_degrees) {
    if (d < 0 || d > target_r)
      throw Error("pad_to_regular: right deficit out of [0," +
                  std::to_string(target_r) + "]");
    rsum += d;
  }
  if (lsum != rsum)
    throw Error("pad_to_regular: deficit sums differ (" + std::to_string(lsum) +
                " vs " + std::to_string(rsum) + ")");

  BipartiteMultigraph g;
  g.left_count = static_cast<int>(left_degrees.size());
  g.right_count = static_cast<int>(right_degrees.size());
  g.edges.reserve(static_cast<std::size_t>(lsum));

  int rv = 0, remaining = g.right_count > 0 ? right_degrees[0] : 0;
  for (int lv = 0; lv < g.left_count; ++lv) {
    for (int k = 0; k < left_degrees[lv]; ++k) {
      while (remaining == 0) {
        ++rv;
        remaining = right_degrees[rv];
      }
      g.edges.push_back({lv, rv});
      --remaining;
    }
  }
  return g;
}

namespace detail {

// Kuhn augmenting search over uncolored edges. Adjacency is pre-sorted by
// (right node, edge id), so the traversal order is deterministic.
struct MatchingState {
  const BipartiteMultigraph* g;
  std::vector<std::vector<int>> adj;  // left node -> uncolored edge ids
  std::vector<int> match_left;        // left node -> edge id or -1
  std::vector<int> match_right;       // right node -> edge id or -1
  std::vector<char> visited;          // right nodes, per augmentation

  bool try_augment(int lv) {
    for (int eid : adj[lv]) {
      const int rv = g->edges[eid].right;
      if (visited[rv]) continue;
      visited[rv] = 1;
      if (match_right[rv] == -1 ||
          try_augment(g->edges[match_right[rv]].left)) {
        match_left[lv] = eid;
        match_right[rv] = eid;
        return true;
      }
    }
    return false;
  }
};

}  // namespace detail

/// 1-factorization of an r-regular bipartite multigraph by repeated perfect
/// matching extraction, r rounds of augmenting-path search.
inline Factorization one_factorize(const BipartiteMultigraph& g) {
  const int r = check_regular(g);
  Factorization out;
  out.colors = r;
  out.color_of.assign(g.edges.size(), -1);
  if (r == 0) return out;
  if (g.left_count != g.right_count)
    throw Error("one_factorize: regular graph with unequal sides");

  detail::MatchingState st;
  st.g = &g;
  st.adj.resize(g.left_count);
  for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid)
    st.adj[g.edges[eid].left].push_back(eid);
  for (auto& lst : st.adj)
    std::sort(lst.begin(), lst.end(), [&](int a, int b) {
      if (g.edges[a].right != g.edges[b].right)
        return g.edges[a].right < g.edges[b].right;
      return a < b;
    });

  for (int color = 0; color < r; ++color) {
    st.match_left.assign(g.left_count, -1);
    st.match_right.assign(g.right_count, -1);
    // Greedy seed pass, then augment the leftovers.
    for (int lv = 0; lv < g.left_count; ++lv)
      for (int eid : st.adj[lv]) {
        const int rv = g.edges[eid].right;
        if (st.match_right[rv] == -1) {
          st.match_left[lv] = eid;
          st.match_right[rv] = eid;
          break;
        }
      }
    for (int lv = 0; lv < g.left_count; ++lv) {
      if (st.match_left[lv] != -1) continue;
      st.visited.assign(g.right_count, 0);
      if (!st.try_augment(lv))
        throw Error("one_factorize: no perfect matching found (internal)");
    }
    for (int lv = 0; lv < g.left_count; ++lv) {
      const int eid = st.match_left[lv];
      out.color_of[eid] = color;
      auto& lst = st.adj[lv];
      lst.erase(std::find(lst.begin(), lst.end(), eid));
    }
  }
  return out;
}

/// Validity predicate, independent of how the factorization was produced:
/// every color class is a perfect matching and the classes cover each edge
/// exactly once.
inline bool is_valid_factorization(const BipartiteMultigraph& g,
                                   const Factorization& f,
                                   std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (f.color_of.size() != g.edges.size())
    return fail("color_of size mismatch");
  if (f.colors == 0) return g.edges.empty() || fail("edges left uncolored");
  std::vector<int> seen_left(g.left_count * f.colors, 0);
  std::vector<int> seen_right(g.right_count * f.colors, 0);
  for (std::size_t eid = 0; eid < g.edges.size(); ++eid) {
    const int c = f.color_of[eid];
    if (c < 0 || c >= f.colors) return fail("color out of range");
    if (++seen_left[g.edges[eid].left * f.colors + c] > 1)
      return fail("left node " + std::to_string(g.edges[eid].left) +
                  " has two edges of color " + std::to_string(c));
    if (++seen_right[g.edges[eid].right * f.colors + c] > 1)
      return fail("right node " + std::to_string(g.edges[eid].right) +
                  " has two edges of color " + std::to_string(c));
  }
  for (int v = 0; v < g.left_count; ++v)
    for (int c = 0; c < f.colors; ++c)
      if (seen_left[v * f.colors + c] != 1)
        return fail("left node " + std::to_string(v) + " misses color " +
                    std::to_string(c));
  for (int v = 0; v < g.right_count; ++v)
    for (int c = 0; c < f.colors; ++c)
      if (seen_right[v * f.colors + c] != 1)
        return fail("right node " + std::to_string(v) + " misses color " +
                    std::to_string(c));
  return true;
}

}  // namespace pops
