#pragma once

// Slow reference computations used only by tests. They work from a dense
// copy of the edge list and share no code with the library's enumerators.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "motifclust/graph.hpp"
#include "motifclust/motif.hpp"

namespace oracle {

using motifclust::DirectedGraph;
using motifclust::MotifSpec;
using motifclust::NodeId;

struct Dense {
  std::size_t n;
  std::vector<int> a;  // a[u*n+v] = sign, 0 = no edge
  int at(NodeId u, NodeId v) const { return a[u * n + v]; }
};

inline Dense dense(const DirectedGraph& g) {
  Dense d{g.node_count(), std::vector<int>(g.node_count() * g.node_count(), 0)};
  for (const auto& e : g.edges()) d.a[e.src * d.n + e.dst] = e.sign;
  return d;
}

// All (node set, anchor set) pairs, by scanning every k-subset and every
// ordering of it.
inline std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> instances(
    const DirectedGraph& g, const MotifSpec& s) {
  const Dense d = dense(g);
  const std::size_t k = s.k;
  std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> out;
  std::vector<NodeId> subset(k);
  auto check = [&](const std::vector<NodeId>& v) {
    for (std::size_t p = 0; p < s.patterns.size(); ++p) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (!s.colors.empty() && g.has_colors() && s.colors[i] >= 0 &&
            g.color(v[i]) != s.colors[i])
          ok = false;
        for (std::size_t j = 0; j < k && ok; ++j) {
          if (i == j) continue;
          const int want = s.patterns[p][i * k + j];
          int have = d.at(v[i], v[j]);
          if (s.undirected) {
            have = (d.at(v[i], v[j]) != 0 || d.at(v[j], v[i]) != 0) ? 1 : 0;
            ok = (have != 0) == (want != 0);
          } else if (s.signed_pattern) {
            ok = have == want;
          } else {
            ok = (have != 0) == (want != 0);
          }
        }
      }
      if (ok) {
        std::vector<NodeId> nodes = v, anchors;
        std::sort(nodes.begin(), nodes.end());
        for (std::size_t a : s.anchors) anchors.push_back(v[a]);
        std::sort(anchors.begin(), anchors.end());
        out.emplace(nodes, anchors);
      }
    }
  };
  std::function<void(std::size_t, NodeId)> choose = [&](std::size_t depth, NodeId from) {
    if (depth == k) {
      std::vector<NodeId> v = subset;
      do check(v);
      while (std::next_permutation(v.begin(), v.end()));
      return;
    }
    for (NodeId u = from; u < g.node_count(); ++u) {
      subset[depth] = u;
      choose(depth + 1, u + 1);
    }
  };
  choose(0, 0);
  return out;
}

// Number of k-subsets of a symmetric graph that are cliques.
inline std::size_t clique_count(const DirectedGraph& g, std::size_t k) {
  const Dense d = dense(g);
  std::size_t count = 0;
  std::vector<NodeId> cur;
  std::function<void(NodeId)> rec = [&](NodeId from) {
    if (cur.size() == k) {
      ++count;
      return;
    }
    for (NodeId u = from; u < g.node_count(); ++u) {
      bool ok = true;
      for (NodeId w : cur) ok = ok && d.at(u, w) != 0;
      if (!ok) continue;
      cur.push_back(u);
      rec(u + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return count;
}

// Dense W_M from an instance set.
inline std::map<std::pair<NodeId, NodeId>, double> weights(
    const std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>>& inst) {
  std::map<std::pair<NodeId, NodeId>, double> w;
  for (const auto& [nodes, anchors] : inst)
    for (std::size_t a = 0; a < anchors.size(); ++a)
      for (std::size_t b = a + 1; b < anchors.size(); ++b) w[{anchors[a], anchors[b]}] += 1.0;
  return w;
}

}  // namespace oracle
