#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <span>
#include <thread>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/graph.hpp"
#include "motifclust/motif.hpp"
#include "motifclust/motif_adjacency.hpp"

namespace motifclust {

struct EnumerateOptions {
  std::size_t threads = 1;
};

namespace detail {

// Runs body(begin, end, out) over contiguous pivot ranges, one per worker,
// and concatenates the per-range outputs in range order.
template <typename Body>
std::vector<MotifInstance> over_pivots(std::size_t count, std::size_t threads, Body&& body) {
  const std::size_t t = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::vector<MotifInstance>> parts(t);
  auto run = [&](std::size_t c) {
    body(c * count / t, (c + 1) * count / t, parts[c]);
  };
  if (t == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < t; ++c) pool.emplace_back(run, c);
    for (auto& th : pool) th.join();
  }
  std::vector<MotifInstance> all;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
  return all;
}

inline void sort_unique(std::vector<MotifInstance>& v) {
  std::sort(v.begin(), v.end(), instance_less);
  v.erase(std::unique(v.begin(), v.end(),
                      [](const MotifInstance& a, const MotifInstance& b) {
                        return a.nodes == b.nodes && a.anchors == b.anchors;
                      }),
          v.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Triangles

// Degree-ordered triangle listing for triangular 3-node motifs. Edges that
// cannot take part in the motif are dropped first (reciprocal pairs when no
// pattern has one, one-way edges when every pair in every pattern is
// reciprocal). Each triangle of the remaining undirected graph is found once
// from its lowest-ranked node and classified against the original graph
// over all six orderings. Output sorted by (nodes, anchors).
inline std::vector<MotifInstance> enumerate_triangles(const DirectedGraph& g, const MotifSpec& spec,
                                                      const EnumerateOptions& opt = {}) {
  if (!spec.is_triangular())
    throw DomainError("enumerate_triangles needs a triangular 3-node motif");
  bool any_reciprocal = false;
  bool all_reciprocal = true;
  for (std::size_t p = 0; p < spec.patterns.size(); ++p) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        const bool r = spec.entry(p, i, j) != 0 && spec.entry(p, j, i) != 0;
        any_reciprocal |= r;
        all_reciprocal &= r;
      }
    }
  }
  const bool drop_mutual = !spec.undirected && !any_reciprocal;
  const bool drop_one_way = !spec.undirected && all_reciprocal;

  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (NodeId u = 0; u < n; ++u) {
    auto keep = [&](NodeId v) {
      const bool mutual = g.has_edge(u, v) && g.has_edge(v, u);
      if (mutual ? drop_mutual : drop_one_way) return;
      adj[u].push_back(v);
    };
    for (NodeId v : g.out_neighbors(u)) keep(v);
    for (NodeId v : g.in_neighbors(u))
      if (!g.has_edge(u, v)) keep(v);
    std::sort(adj[u].begin(), adj[u].end());
  }

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return adj[a].size() < adj[b].size(); });
  const std::vector<NodeId> rank = ordering_ranks(order);
  std::vector<std::vector<NodeId>> up(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : adj[u])
      if (rank[v] > rank[u]) up[u].push_back(v);

  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  auto out = detail::over_pivots(n, opt.threads, [&](std::size_t begin, std::size_t end,
                                                     std::vector<MotifInstance>& found) {
    std::vector<char> mark(n, 0);
    std::vector<MotifInstance> local;
    for (std::size_t pos = begin; pos < end; ++pos) {
      const NodeId u = order[pos];
      for (NodeId v : up[u]) mark[v] = 1;
      for (NodeId v : up[u]) {
        for (NodeId w : up[v]) {
          if (!mark[w]) continue;
          const std::array<NodeId, 3> tri{u, v, w};
          local.clear();
          for (const auto& pm : perms) {
            const std::array<NodeId, 3> t{tri[pm[0]], tri[pm[1]], tri[pm[2]]};
            for (std::size_t p = 0; p < spec.patterns.size(); ++p) {
              if (!matches_ordered(g, spec, p, t)) continue;
              MotifInstance inst = make_instance(spec, t);
              if (std::find(local.begin(), local.end(), inst) == local.end())
                local.push_back(std::move(inst));
            }
          }
          for (auto& inst : local) found.push_back(std::move(inst));
        }
      }
      for (NodeId v : up[u]) mark[v] = 0;
    }
  });
  detail::sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// Generic backtracking

// Ordered backtracking over each pattern: positions are visited in BFS order
// of the pattern's support, so every position after the first is drawn
// from the neighbors of an already placed node. Instances are deduplicated
// on (node set, anchor set). Output sorted by (nodes, anchors).
inline std::vector<MotifInstance> enumerate_generic(const DirectedGraph& g, const MotifSpec& spec,
                                                    std::size_t limit = 5,
                                                    const EnumerateOptions& opt = {}) {
  spec.validate();
  if (spec.k > limit)
    throw CapabilityError("generic enumeration is limited to k <= " + std::to_string(limit) +
                          ", motif has k = " + std::to_string(spec.k));
  const std::size_t k = spec.k;
  const std::size_t n = g.node_count();

  struct Plan {
    std::vector<std::size_t> order;   // positions in visit order
    std::vector<std::size_t> parent;  // per visit step (unused at step 0)
  };
  std::vector<Plan> plans;
  for (std::size_t p = 0; p < spec.patterns.size(); ++p) {
    Plan plan;
    std::vector<bool> seen(k, false);
    plan.order.push_back(0);
    plan.parent.push_back(0);
    seen[0] = true;
    for (std::size_t h = 0; h < plan.order.size(); ++h) {
      const std::size_t q = plan.order[h];
      for (std::size_t r = 0; r < k; ++r) {
        if (!seen[r] && (spec.entry(p, q, r) != 0 || spec.entry(p, r, q) != 0)) {
          seen[r] = true;
          plan.order.push_back(r);
          plan.parent.push_back(q);
        }
      }
    }
    plans.push_back(std::move(plan));
  }

  auto consistent = [&](std::size_t p, std::span<const NodeId> v, const std::vector<bool>& placed,
                        std::size_t pos) {
    const NodeId x = v[pos];
    if (!spec.colors.empty() && g.has_colors() && spec.colors[pos] >= 0 &&
        g.color(x) != spec.colors[pos])
      return false;
    for (std::size_t r = 0; r < k; ++r) {
      if (!placed[r] || r == pos) continue;
      const NodeId y = v[r];
      if (x == y) return false;
      if (spec.undirected) {
        const bool have = g.has_edge(x, y) || g.has_edge(y, x);
        if (have != (spec.entry(p, pos, r) != 0)) return false;
      } else {
        for (int dir = 0; dir < 2; ++dir) {
          const NodeId a = dir == 0 ? x : y;
          const NodeId b = dir == 0 ? y : x;
          const int want = dir == 0 ? spec.entry(p, pos, r) : spec.entry(p, r, pos);
          const int have = g.sign(a, b);
          if ((have != 0) != (want != 0)) return false;
          if (want != 0 && spec.signed_pattern && have != want) return false;
        }
      }
    }
    return true;
  };

  auto out = detail::over_pivots(n, opt.threads, [&](std::size_t begin, std::size_t end,
                                                     std::vector<MotifInstance>& found) {
    std::vector<NodeId> v(k, 0);
    std::vector<bool> placed(k, false);
    std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> seen;
    for (std::size_t p = 0; p < plans.size(); ++p) {
      const Plan& plan = plans[p];
      std::function<void(std::size_t)> place = [&](std::size_t step) {
        if (step == k) {
          MotifInstance inst = make_instance(spec, v);
          if (seen.emplace(inst.nodes, inst.anchors).second) found.push_back(std::move(inst));
          return;
        }
        const std::size_t pos = plan.order[step];
        const std::size_t q = plan.parent[step];
        const NodeId vq = v[q];
        auto attempt = [&](NodeId x) {
          v[pos] = x;
          if (!consistent(p, v, placed, pos)) return;
          placed[pos] = true;
          place(step + 1);
          placed[pos] = false;
        };
        if (spec.undirected) {
          for (NodeId x : g.out_neighbors(vq)) attempt(x);
          for (NodeId x : g.in_neighbors(vq))
            if (!g.has_edge(vq, x)) attempt(x);
        } else if (spec.entry(p, q, pos) != 0) {
          for (NodeId x : g.out_neighbors(vq)) attempt(x);
        } else {
          for (NodeId x : g.in_neighbors(vq)) attempt(x);
        }
      };
      for (std::size_t s = begin; s < end; ++s) {
        const NodeId x = static_cast<NodeId>(s);
        const std::size_t pos0 = plan.order[0];
        if (!spec.colors.empty() && g.has_colors() && spec.colors[pos0] >= 0 &&
            g.color(x) != spec.colors[pos0])
          continue;
        v[pos0] = x;
        placed[pos0] = true;
        place(1);
        placed[pos0] = false;
      }
    }
  });
  detail::sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// k-cliques

struct CliqueStats {
  std::size_t core_nodes = 0;     // nodes surviving (k-1)-core pruning
  std::size_t touched_nodes = 0;  // nodes whose adjacency the listing phase read
};

// Lists k-cliques (3 <= k <= 9) of a symmetric graph. With pruning on, the
// (k-1)-core is peeled first and nodes outside it are never visited by the
// listing phase. Listing orients edges along the degree ordering of the
// remaining graph and intersects forward neighbor lists.
inline std::vector<MotifInstance> enumerate_kcliques(const DirectedGraph& g_undir, std::size_t k,
                                                     bool core_pruning = true,
                                                     CliqueStats* stats = nullptr) {
  if (k < 3 || k > 9) throw DomainError("k-clique enumeration supports 3 <= k <= 9");
  if (!g_undir.is_symmetric()) throw DomainError("k-clique enumeration needs a symmetric graph");
  const std::size_t n = g_undir.node_count();

  std::vector<char> alive(n, 1);
  std::vector<std::size_t> deg(n);
  for (NodeId u = 0; u < n; ++u) deg[u] = g_undir.out_degree(u);
  if (core_pruning) {
    std::vector<NodeId> queue;
    for (NodeId u = 0; u < n; ++u)
      if (deg[u] + 1 < k) {
        alive[u] = 0;
        queue.push_back(u);
      }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (NodeId v : g_undir.out_neighbors(queue[h])) {
        if (!alive[v]) continue;
        if (--deg[v] + 1 < k) {
          alive[v] = 0;
          queue.push_back(v);
        }
      }
    }
  }

  std::vector<NodeId> order;
  for (NodeId u = 0; u < n; ++u)
    if (alive[u]) order.push_back(u);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return deg[a] < deg[b]; });
  std::vector<NodeId> rank(n, 0);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<NodeId>(i);

  std::vector<char> touched(n, 0);
  std::vector<std::vector<NodeId>> fwd(n);
  for (NodeId u : order) {
    touched[u] = 1;
    for (NodeId v : g_undir.out_neighbors(u))
      if (alive[v] && rank[v] > rank[u]) fwd[u].push_back(v);  // already sorted by id
  }

  std::vector<MotifInstance> out;
  std::vector<NodeId> clique;
  std::function<void(const std::vector<NodeId>&)> extend = [&](const std::vector<NodeId>& cand) {
    if (clique.size() == k) {
      MotifInstance inst;
      inst.nodes = clique;
      std::sort(inst.nodes.begin(), inst.nodes.end());
      inst.anchors = inst.nodes;
      out.push_back(std::move(inst));
      return;
    }
    const std::size_t need = k - clique.size();
    if (cand.size() < need) return;
    std::vector<NodeId> next;
    for (NodeId v : cand) {
      next.clear();
      std::set_intersection(cand.begin(), cand.end(), fwd[v].begin(), fwd[v].end(),
                            std::back_inserter(next));
      if (next.size() + 1 < need) continue;
      clique.push_back(v);
      extend(next);
      clique.pop_back();
    }
  };
  for (NodeId u : order) {
    clique.assign(1, u);
    extend(fwd[u]);
  }
  detail::sort_unique(out);
  if (stats) {
    stats->core_nodes = order.size();
    stats->touched_nodes = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch and W_M accumulation

// Picks the k-clique path for uncolored cliques, the triangle path for
// triangular triads and the generic path otherwise.
inline std::vector<MotifInstance> motif_instances(const DirectedGraph& g, const MotifSpec& spec,
                                                  const EnumerateOptions& opt = {}) {
  spec.validate();
  if (spec.is_clique() && spec.k >= 3 && !spec.has_colors())
    return enumerate_kcliques(undirected_view(g), spec.k);
  if (spec.is_triangular()) return enumerate_triangles(g, spec, opt);
  return enumerate_generic(g, spec, 5, opt);
}

// (W_M)_ij = sum of instance weights over instances with i and j both
// anchored. Accumulation runs over the sorted instance list, so the result
// does not depend on how enumeration was scheduled.
inline MotifAdjacency motif_adjacency_from_instances(std::size_t n,
                                                     std::span<const MotifInstance> instances) {
  std::vector<WeightedPair> pairs;
  for (const auto& inst : instances) {
    const auto& a = inst.anchors;
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y) pairs.push_back({a[x], a[y], inst.weight});
  }
  return MotifAdjacency::from_pairs(n, std::move(pairs));
}

using InstanceWeight = std::function<double(const MotifInstance&)>;

struct BuildOptions {
  std::size_t threads = 1;
  InstanceWeight weight;  // empty: every instance weighs 1
};

inline MotifAdjacency build_motif_adjacency(const DirectedGraph& g, const MotifSpec& spec,
                                            const BuildOptions& opt = {}) {
  auto instances = motif_instances(g, spec, {opt.threads});
  if (opt.weight) {
    for (auto& inst : instances) {
      inst.weight = opt.weight(inst);
      if (!(inst.weight > 0.0)) throw DomainError("instance weights must be positive");
    }
  }
  return motif_adjacency_from_instances(g.node_count(), instances);
}

}  // namespace motifclust
