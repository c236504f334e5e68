#pragma once

#include <random>
#include <vector>

#include "motifclust/graph.hpp"

namespace testing_support {

using motifclust::DirectedGraph;
using motifclust::Edge;
using motifclust::NodeId;

// G(n, p) digraph: every ordered pair is an edge independently with
// probability p, so reciprocal pairs appear with probability p^2.
inline DirectedGraph random_digraph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && coin(rng)) es.push_back({u, v});
  return DirectedGraph::from_edges(n, std::move(es));
}

inline DirectedGraph random_signed_digraph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::bernoulli_distribution neg(0.4);
  std::vector<Edge> es;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && coin(rng)) es.push_back({u, v, static_cast<std::int8_t>(neg(rng) ? -1 : 1)});
  return DirectedGraph::from_edges(n, std::move(es), true);
}

// Symmetric G(n, p).
inline DirectedGraph random_undirected(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) {
        es.push_back({u, v});
        es.push_back({v, u});
      }
  return DirectedGraph::from_edges(n, std::move(es));
}

inline DirectedGraph from_pairs(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> ps,
                                bool both_ways = false) {
  std::vector<Edge> es;
  for (auto [a, b] : ps) {
    es.push_back({a, b});
    if (both_ways) es.push_back({b, a});
  }
  return DirectedGraph::from_edges(n, std::move(es));
}

}  // namespace testing_support
