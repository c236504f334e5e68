#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "motifclust/enumerate.hpp"
#include "motifclust/errors.hpp"
#include "motifclust/kmeans.hpp"
#include "motifclust/motif_adjacency.hpp"
#include "motifclust/spectral.hpp"

namespace motifclust {

// Disjoint clusters over a subset of nodes. assignment[u] = -1 marks an
// uncovered node (isolated in W_M, or outside the clustered component).
struct Partition {
  std::vector<int> assignment;
  std::size_t k = 0;

  std::vector<NodeId> covered() const {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < assignment.size(); ++u)
      if (assignment[u] >= 0) out.push_back(u);
    return out;
  }

  std::vector<std::vector<NodeId>> clusters() const {
    std::vector<std::vector<NodeId>> out(k);
    for (NodeId u = 0; u < assignment.size(); ++u)
      if (assignment[u] >= 0) out[static_cast<std::size_t>(assignment[u])].push_back(u);
    return out;
  }
};

// Relabels clusters 0, 1, ... in order of their smallest node id.
inline Partition canonical_partition(std::vector<int> raw) {
  std::vector<int> map;
  Partition p;
  p.assignment.assign(raw.size(), -1);
  for (std::size_t u = 0; u < raw.size(); ++u) {
    if (raw[u] < 0) continue;
    const auto c = static_cast<std::size_t>(raw[u]);
    if (c >= map.size()) map.resize(c + 1, -1);
    if (map[c] < 0) map[c] = static_cast<int>(p.k++);
    p.assignment[u] = map[c];
  }
  return p;
}

namespace detail {

inline std::vector<char> membership(std::size_t n, std::span<const NodeId> s) {
  std::vector<char> in(n, 0);
  for (NodeId u : s) {
    if (u >= n) throw DomainError("node " + std::to_string(u) + " out of range");
    if (in[u]) throw DomainError("node " + std::to_string(u) + " listed twice");
    in[u] = 1;
  }
  return in;
}

inline void require_proper(std::size_t n, std::size_t size) {
  if (size == 0) throw DomainError("set is empty");
  if (size == n) throw DomainError("set contains every node; complement is empty");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Conductance

struct CutVolume {
  double cut = 0.0;
  double vol_s = 0.0;
  double vol_complement = 0.0;
  double conductance() const { return cut / std::min(vol_s, vol_complement); }
};

// Cut and volumes of S on the weighted graph W.
inline CutVolume weighted_cut_volume(const MotifAdjacency& w, std::span<const NodeId> s) {
  const auto in = detail::membership(w.size(), s);
  CutVolume cv;
  for (NodeId u = 0; u < w.size(); ++u) {
    (in[u] ? cv.vol_s : cv.vol_complement) += w.degree(u);
    if (!in[u]) continue;
    const auto nb = w.neighbors(u);
    const auto ws = w.weights(u);
    for (std::size_t e = 0; e < nb.size(); ++e)
      if (!in[nb[e]]) cv.cut += ws[e];
  }
  return cv;
}

inline double conductance_weighted(const MotifAdjacency& w, std::span<const NodeId> s) {
  detail::require_proper(w.size(), s.size());
  const CutVolume cv = weighted_cut_volume(w, s);
  if (!(std::min(cv.vol_s, cv.vol_complement) > 0.0))
    throw DomainError(cv.vol_s > 0.0 ? "complement has zero volume" : "set has zero volume");
  return cv.conductance();
}

// Motif cut (instances with anchors on both sides, weighted) and motif
// volumes (anchor endpoints on each side, weighted).
inline CutVolume motif_cut_volume(std::span<const MotifInstance> instances, std::size_t n,
                                  std::span<const NodeId> s) {
  const auto in = detail::membership(n, s);
  CutVolume cv;
  for (const auto& inst : instances) {
    std::size_t inside = 0;
    for (NodeId a : inst.anchors) inside += in[a] ? 1 : 0;
    cv.vol_s += inst.weight * static_cast<double>(inside);
    cv.vol_complement += inst.weight * static_cast<double>(inst.anchors.size() - inside);
    if (inside > 0 && inside < inst.anchors.size()) cv.cut += inst.weight;
  }
  return cv;
}

inline double motif_conductance_exact(std::span<const MotifInstance> instances, std::size_t n,
                                      std::span<const NodeId> s) {
  detail::require_proper(n, s.size());
  const CutVolume cv = motif_cut_volume(instances, n, s);
  if (!(cv.vol_s > 0.0)) throw DomainError("no motif endpoints inside the set (zero volume)");
  if (!(cv.vol_complement > 0.0))
    throw DomainError("no motif endpoints in the complement (zero volume)");
  return cv.conductance();
}

inline double motif_conductance_exact(const DirectedGraph& g, const MotifSpec& spec,
                                      std::span<const NodeId> s) {
  const auto inst = motif_instances(g, spec);
  return motif_conductance_exact(inst, g.node_count(), s);
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepResult {
  SpectralOrdering ordering;
  std::vector<double> profile;    // profile[r - 1] = phi(S_r), r = 1 .. n-1
  std::size_t best_prefix = 0;    // r* (first minimizer)
  double best_phi = 0.0;
  std::vector<NodeId> best_set;   // S_r* or its complement, whichever has fewer nodes; ascending
};

// Conductance of every prefix of the ordering, computed incrementally:
// adding u changes the cut by deg(u) - 2 w(u, S).
inline SweepResult sweep_cut(const MotifAdjacency& w, SpectralOrdering ordering) {
  const std::size_t n = w.size();
  if (n < 2) throw DomainError("sweep needs at least 2 nodes");
  if (ordering.sigma.size() != n) throw DomainError("ordering does not cover the matrix");
  detail::require_positive_degrees(w);
  const double total = w.total_volume();
  std::vector<char> in(n, 0);
  SweepResult r;
  double cut = 0.0, vol = 0.0;
  r.best_phi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const NodeId u = ordering.sigma[i];
    if (in[u]) throw DomainError("ordering repeats a node");
    double to_s = 0.0;
    const auto nb = w.neighbors(u);
    const auto ws = w.weights(u);
    for (std::size_t e = 0; e < nb.size(); ++e)
      if (in[nb[e]]) to_s += ws[e];
    in[u] = 1;
    cut += w.degree(u) - 2.0 * to_s;
    vol += w.degree(u);
    const double phi = cut / std::min(vol, total - vol);
    r.profile.push_back(phi);
    if (phi < r.best_phi) {
      r.best_phi = phi;
      r.best_prefix = i + 1;
    }
  }
  const std::size_t rs = r.best_prefix;
  if (rs < n - rs) {
    r.best_set.assign(ordering.sigma.begin(), ordering.sigma.begin() + static_cast<std::ptrdiff_t>(rs));
  } else {
    r.best_set.assign(ordering.sigma.begin() + static_cast<std::ptrdiff_t>(rs), ordering.sigma.end());
  }
  std::sort(r.best_set.begin(), r.best_set.end());
  r.ordering = std::move(ordering);
  return r;
}

// Fiedler vector, ordering and sweep on a connected W.
inline SweepResult spectral_sweep(const MotifAdjacency& w, const SpectralOptions& opt,
                                  FiedlerPair* pair_out = nullptr) {
  FiedlerPair fp = fiedler_pair(w, opt);
  SweepResult r = sweep_cut(w, spectral_ordering(w, fp));
  if (pair_out) *pair_out = std::move(fp);
  return r;
}

// Single-cluster run on the largest connected component of W (isolated
// nodes excluded). `best_set` is in original ids.
struct ComponentSweep {
  ComponentMap components;
  std::vector<NodeId> component;  // original ids of the largest component, ascending
  MotifAdjacency local;           // W restricted to `component`
  FiedlerPair fiedler;
  SweepResult sweep;              // in local ids
  std::vector<NodeId> best_set;   // original ids, ascending
};

inline ComponentSweep sweep_largest_component(const MotifAdjacency& w,
                                              const SpectralOptions& opt = {}) {
  ComponentSweep cs;
  cs.components = connected_components(w);
  if (cs.components.count() == 0 || cs.components.sizes[0] < 2)
    throw DomainError("motif adjacency has no edges; nothing to cluster");
  cs.component = cs.components.members[0];
  cs.local = w.induced(cs.component);
  cs.sweep = spectral_sweep(cs.local, opt, &cs.fiedler);
  for (NodeId u : cs.sweep.best_set) cs.best_set.push_back(cs.component[u]);
  std::sort(cs.best_set.begin(), cs.best_set.end());
  return cs;
}

// ---------------------------------------------------------------------------
// Multiway

// Splits W into k clusters: components of the motif-active nodes first,
// then repeated sweeps on the largest cluster (ties: smallest node id). A
// cluster whose induced matrix is disconnected loses its smallest component
// instead of being swept. Nodes with zero motif degree stay uncovered.
inline Partition recursive_bipartition(const MotifAdjacency& w, std::size_t k,
                                       const SpectralOptions& opt = {},
                                       std::vector<std::string>* warnings = nullptr) {
  if (k < 2) throw DomainError("recursive bipartition needs k >= 2");
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };
  std::vector<std::vector<NodeId>> clusters;
  {
    const ComponentMap cm = connected_components(w);
    for (const auto& mem : cm.members)
      if (mem.size() >= 2) clusters.push_back(mem);
  }
  if (clusters.size() > k)
    warn("motif adjacency has " + std::to_string(clusters.size()) +
         " components, more than k = " + std::to_string(k) + "; components kept unsplit");
  while (clusters.size() < k) {
    if (clusters.empty()) {
      warn("no motif-active nodes");
      break;
    }
    std::size_t pick = 0;
    for (std::size_t c = 1; c < clusters.size(); ++c) {
      if (clusters[c].size() > clusters[pick].size() ||
          (clusters[c].size() == clusters[pick].size() && clusters[c][0] < clusters[pick][0]))
        pick = c;
    }
    std::vector<NodeId> cur = clusters[pick];
    if (cur.size() < 2) {
      warn("largest cluster has fewer than 2 nodes; stopping at " +
           std::to_string(clusters.size()) + " clusters");
      break;
    }
    const MotifAdjacency sub = w.induced(cur);
    const ComponentMap cm = connected_components(sub);
    std::vector<char> take(cur.size(), 0);
    if (cm.count() > 1) {
      // smallest component; the component map puts ties on the larger id last,
      // so scan for the smallest size with the smallest first member
      std::size_t best = cm.count() - 1;
      for (std::size_t c = cm.count(); c-- > 0;)
        if (cm.sizes[c] == cm.sizes[best] && cm.members[c][0] < cm.members[best][0]) best = c;
      for (NodeId u : cm.members[best]) take[u] = 1;
    } else {
      const SweepResult r = spectral_sweep(sub, opt);
      for (NodeId u : r.best_set) take[u] = 1;
    }
    std::vector<NodeId> a, b;
    for (std::size_t i = 0; i < cur.size(); ++i) (take[i] ? a : b).push_back(cur[i]);
    clusters[pick] = std::move(b);
    clusters.push_back(std::move(a));
  }
  std::vector<int> raw(w.size(), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (NodeId u : clusters[c]) raw[u] = static_cast<int>(c);
  return canonical_partition(std::move(raw));
}

inline Partition recursive_bipartition(const DirectedGraph& g, const MotifSpec& spec,
                                       std::size_t k, const SpectralOptions& opt = {},
                                       std::vector<std::string>* warnings = nullptr) {
  return recursive_bipartition(build_motif_adjacency(g, spec), k, opt, warnings);
}

struct EmbedKMeansResult {
  Partition partition;
  SpectralEmbedding embedding;  // rows follow `nodes`
  std::vector<NodeId> nodes;    // motif-active nodes, ascending
  double inertia = 0.0;
};

// Spectral embedding of the motif-active nodes followed by k-means on the
// unit-normalized rows. Zero-degree nodes stay uncovered.
inline EmbedKMeansResult embed_kmeans_detailed(const MotifAdjacency& w, std::size_t k,
                                               std::size_t iters, std::uint64_t seed,
                                               const SpectralOptions& opt = {}) {
  EmbedKMeansResult out;
  out.nodes = active_nodes(w);
  if (k < 1) throw DomainError("k must be at least 1");
  if (k > out.nodes.size())
    throw DomainError("k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(out.nodes.size()) + " motif-active nodes");
  const MotifAdjacency sub = w.induced(out.nodes);
  std::vector<int> raw(w.size(), -1);
  if (k == 1) {
    for (NodeId u : out.nodes) raw[u] = 0;
  } else {
    out.embedding = embed_k(sub, k, opt);
    const auto km = kmeans(out.embedding.y, out.nodes.size(), k, k, iters, seed);
    out.inertia = km.inertia;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) raw[out.nodes[i]] = km.labels[i];
  }
  out.partition = canonical_partition(std::move(raw));
  return out;
}

inline Partition embed_kmeans(const MotifAdjacency& w, std::size_t k, std::size_t iters,
                              std::uint64_t seed, const SpectralOptions& opt = {}) {
  return embed_kmeans_detailed(w, k, iters, seed, opt).partition;
}

}  // namespace motifclust
