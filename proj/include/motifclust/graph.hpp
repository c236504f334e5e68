#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "motifclust/errors.hpp"

namespace motifclust {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  std::int8_t sign = +1;
  double weight = 1.0;
};

// Immutable simple digraph with dense node ids. Adjacency is stored in CSR
// form in both directions with sorted neighbor lists, so edge lookups are
// binary searches. Signs, weights, labels and node colors are optional; an
// unsigned graph reports sign +1 on every edge.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Throws DomainError on self-loops, duplicate edges, ids >= n, zero signs
  // or non-positive weights.
  static DirectedGraph from_edges(std::size_t n, std::vector<Edge> edges,
                                  bool is_signed = false,
                                  bool is_weighted = false) {
    DirectedGraph g;
    g.n_ = n;
    g.signed_ = is_signed;
    g.weighted_ = is_weighted;
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge& ed = edges[e];
      if (ed.src >= n || ed.dst >= n)
        throw DomainError("edge endpoint out of range");
      if (ed.src == ed.dst) throw DomainError("self-loop on node " + std::to_string(ed.src));
      if (e > 0 && edges[e - 1].src == ed.src && edges[e - 1].dst == ed.dst)
        throw DomainError("duplicate edge " + std::to_string(ed.src) + "->" +
                          std::to_string(ed.dst));
      if (ed.sign != 1 && ed.sign != -1) throw DomainError("edge sign must be +1 or -1");
      if (!(ed.weight > 0.0)) throw DomainError("edge weight must be positive");
    }
    g.out_ptr_.assign(n + 1, 0);
    g.in_ptr_.assign(n + 1, 0);
    for (const Edge& ed : edges) {
      ++g.out_ptr_[ed.src + 1];
      ++g.in_ptr_[ed.dst + 1];
    }
    std::partial_sum(g.out_ptr_.begin(), g.out_ptr_.end(), g.out_ptr_.begin());
    std::partial_sum(g.in_ptr_.begin(), g.in_ptr_.end(), g.in_ptr_.begin());
    g.out_idx_.resize(edges.size());
    g.in_idx_.resize(edges.size());
    if (is_signed) g.out_sign_.resize(edges.size());
    if (is_weighted) g.out_weight_.resize(edges.size());
    // edges are sorted by (src, dst), so out lists come out sorted directly
    for (std::size_t e = 0; e < edges.size(); ++e) {
      g.out_idx_[e] = edges[e].dst;
      if (is_signed) g.out_sign_[e] = edges[e].sign;
      if (is_weighted) g.out_weight_[e] = edges[e].weight;
    }
    std::vector<std::size_t> fill(g.in_ptr_.begin(), g.in_ptr_.end() - 1);
    for (const Edge& ed : edges) g.in_idx_[fill[ed.dst]++] = ed.src;
    return g;
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return out_idx_.size(); }
  bool is_signed() const noexcept { return signed_; }
  bool is_weighted() const noexcept { return weighted_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  bool has_colors() const noexcept { return !colors_.empty(); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_idx_.data() + out_ptr_[u], out_ptr_[u + 1] - out_ptr_[u]};
  }
  std::span<const NodeId> in_neighbors(NodeId u) const {
    return {in_idx_.data() + in_ptr_[u], in_ptr_[u + 1] - in_ptr_[u]};
  }
  std::size_t out_degree(NodeId u) const { return out_ptr_[u + 1] - out_ptr_[u]; }
  std::size_t in_degree(NodeId u) const { return in_ptr_[u + 1] - in_ptr_[u]; }

  bool has_edge(NodeId u, NodeId v) const { return find(u, v) != npos; }

  // 0 when the edge is absent.
  int sign(NodeId u, NodeId v) const {
    const std::size_t e = find(u, v);
    if (e == npos) return 0;
    return signed_ ? out_sign_[e] : 1;
  }

  // 0 when the edge is absent.
  double weight(NodeId u, NodeId v) const {
    const std::size_t e = find(u, v);
    if (e == npos) return 0.0;
    return weighted_ ? out_weight_[e] : 1.0;
  }

  // Original token, or the decimal id when the graph has no labels.
  std::string label(NodeId u) const {
    return labels_.empty() ? std::to_string(u) : labels_[u];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // -1 when the graph carries no colors.
  int color(NodeId u) const { return colors_.empty() ? -1 : colors_[u]; }

  // All edges sorted by (src, dst).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < n_; ++u) {
      for (std::size_t e = out_ptr_[u]; e < out_ptr_[u + 1]; ++e) {
        out.push_back({u, out_idx_[e], signed_ ? out_sign_[e] : std::int8_t{1},
                       weighted_ ? out_weight_[e] : 1.0});
      }
    }
    return out;
  }

  bool is_symmetric() const {
    for (NodeId u = 0; u < n_; ++u)
      for (NodeId v : out_neighbors(u))
        if (!has_edge(v, u)) return false;
    return true;
  }

  DirectedGraph with_labels(std::vector<std::string> labels) const {
    if (!labels.empty() && labels.size() != n_)
      throw DomainError("label count does not match node count");
    DirectedGraph g = *this;
    g.labels_ = std::move(labels);
    return g;
  }

  DirectedGraph with_colors(std::vector<int> colors) const {
    if (!colors.empty() && colors.size() != n_)
      throw DomainError("color count does not match node count");
    DirectedGraph g = *this;
    g.colors_ = std::move(colors);
    return g;
  }

  // Subgraph induced on `nodes`; node i of the result is nodes[i].
  DirectedGraph induced(std::span<const NodeId> nodes) const {
    std::vector<std::int64_t> local(n_, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeId u = nodes[i];
      for (std::size_t e = out_ptr_[u]; e < out_ptr_[u + 1]; ++e) {
        const std::int64_t j = local[out_idx_[e]];
        if (j < 0) continue;
        es.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j),
                      signed_ ? out_sign_[e] : std::int8_t{1},
                      weighted_ ? out_weight_[e] : 1.0});
      }
    }
    DirectedGraph g = from_edges(nodes.size(), std::move(es), signed_, weighted_);
    if (!labels_.empty()) {
      std::vector<std::string> ls;
      for (NodeId u : nodes) ls.push_back(labels_[u]);
      g.labels_ = std::move(ls);
    }
    if (!colors_.empty()) {
      std::vector<int> cs;
      for (NodeId u : nodes) cs.push_back(colors_[u]);
      g.colors_ = std::move(cs);
    }
    return g;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t find(NodeId u, NodeId v) const {
    const auto first = out_idx_.begin() + static_cast<std::ptrdiff_t>(out_ptr_[u]);
    const auto last = out_idx_.begin() + static_cast<std::ptrdiff_t>(out_ptr_[u + 1]);
    const auto it = std::lower_bound(first, last, v);
    if (it == last || *it != v) return npos;
    return static_cast<std::size_t>(it - out_idx_.begin());
  }

  std::size_t n_ = 0;
  bool signed_ = false;
  bool weighted_ = false;
  std::vector<std::size_t> out_ptr_{0};
  std::vector<NodeId> out_idx_;
  std::vector<std::int8_t> out_sign_;
  std::vector<double> out_weight_;
  std::vector<std::size_t> in_ptr_{0};
  std::vector<NodeId> in_idx_;
  std::vector<std::string> labels_;
  std::vector<int> colors_;
};

// ---------------------------------------------------------------------------
// Edge-list ingestion

struct ParseOptions {
  bool directed = true;
  bool signed_edges = false;
  bool weighted = false;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline std::int8_t parse_sign(std::string_view tok, std::size_t line_no) {
  if (tok == "+1" || tok == "1") return +1;
  if (tok == "-1") return -1;
  throw ParseError(line_no, "edge sign must be +1 or -1, got '" + std::string(tok) + "'");
}

inline double parse_weight(std::string_view tok, std::size_t line_no) {
  std::string s(tok);
  std::size_t used = 0;
  double w = 0.0;
  try {
    w = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, "non-numeric edge weight '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line_no, "non-numeric edge weight '" + s + "'");
  if (!(w > 0.0) || w == std::numeric_limits<double>::infinity())
    throw ParseError(line_no, "edge weight must be positive and finite, got '" + s + "'");
  return w;
}

}  // namespace detail

// Reads `src dst [sign] [weight]` lines; '#' starts a comment line. Node
// tokens are arbitrary strings mapped to dense ids in order of first
// appearance. Self-loops are dropped and duplicates merged, keeping the
// annotation of the last occurrence. Undirected input adds both
// orientations of each line.
inline DirectedGraph parse_edge_list(std::istream& in, const ParseOptions& opt = {},
                                     ParseStats* stats = nullptr) {
  ParseStats local;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::unordered_map<std::uint64_t, std::size_t> where;
  std::vector<Edge> edges;

  auto intern = [&](std::string_view tok) {
    auto [it, fresh] = ids.try_emplace(std::string(tok), static_cast<NodeId>(labels.size()));
    if (fresh) labels.emplace_back(tok);
    return it->second;
  };
  auto add = [&](NodeId u, NodeId v, std::int8_t s, double w) {
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    auto [it, fresh] = where.try_emplace(key, edges.size());
    if (fresh) {
      edges.push_back({u, v, s, w});
    } else {
      ++local.duplicates_merged;
      edges[it->second].sign = s;
      edges[it->second].weight = w;
    }
  };

  const std::size_t extras = (opt.signed_edges ? 1 : 0) + (opt.weighted ? 1 : 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    ++local.lines;
    const std::size_t max_tokens = 2 + (extras == 0 ? 1 : extras);
    if (toks.size() < 2 || toks.size() > max_tokens) {
      throw ParseError(line_no, "expected 2 to " + std::to_string(max_tokens) +
                                    " tokens, got " + std::to_string(toks.size()));
    }
    std::int8_t s = +1;
    double w = 1.0;
    std::size_t next = 2;
    if (opt.signed_edges && next < toks.size()) s = detail::parse_sign(toks[next++], line_no);
    if (opt.weighted && next < toks.size()) w = detail::parse_weight(toks[next++], line_no);

    const NodeId u = intern(toks[0]);
    const NodeId v = intern(toks[1]);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    add(u, v, s, w);
    if (!opt.directed) add(v, u, s, w);
  }
  if (stats) *stats = local;
  const std::size_t n = labels.size();
  return DirectedGraph::from_edges(n, std::move(edges), opt.signed_edges, opt.weighted)
      .with_labels(std::move(labels));
}

inline DirectedGraph parse_edge_list(std::string_view text, const ParseOptions& opt = {},
                                     ParseStats* stats = nullptr) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, opt, stats);
}

// Inverse of parse_edge_list for directed input; writes labels.
inline void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.src) << ' ' << g.label(e.dst);
    if (g.is_signed()) out << ' ' << (e.sign > 0 ? "+1" : "-1");
    if (g.is_weighted()) out << ' ' << e.weight;
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Unidirectional / bidirectional split: B = A o A^T, U = A - B.

struct EdgeSplit {
  std::vector<std::pair<NodeId, NodeId>> unidirectional;  // (src, dst), sorted
  std::vector<std::pair<NodeId, NodeId>> bidirectional;   // (lo, hi), sorted
};

inline EdgeSplit split_edges(const DirectedGraph& g) {
  EdgeSplit s;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      if (g.has_edge(v, u)) {
        if (u < v) s.bidirectional.emplace_back(u, v);
      } else {
        s.unidirectional.emplace_back(u, v);
      }
    }
  }
  return s;
}

// Symmetric graph with {i,j} present iff (i,j) or (j,i) is an edge of g.
// Keeps labels and colors; drops signs and weights.
inline DirectedGraph undirected_view(const DirectedGraph& g) {
  std::vector<Edge> es;
  es.reserve(2 * g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      es.push_back({u, v});
      if (!g.has_edge(v, u)) es.push_back({v, u});
    }
  }
  DirectedGraph out = DirectedGraph::from_edges(g.node_count(), std::move(es));
  if (g.has_labels()) out = out.with_labels(g.labels());
  if (g.has_colors()) {
    std::vector<int> cs(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) cs[u] = g.color(u);
    out = out.with_colors(std::move(cs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connected components

struct ComponentMap {
  std::vector<std::size_t> component_id;     // per node; 0 is the largest component
  std::vector<std::size_t> sizes;            // descending
  std::vector<NodeId> renumbering;           // node -> dense id inside its component
  std::vector<std::vector<NodeId>> members;  // per component, ascending node ids

  std::size_t count() const noexcept { return sizes.size(); }

  // Sizes of components with at least `min_size` nodes.
  std::vector<std::size_t> sizes_at_least(std::size_t min_size) const {
    std::vector<std::size_t> out;
    for (std::size_t s : sizes)
      if (s >= min_size) out.push_back(s);
    return out;
  }
};

// Components sorted by size (descending), ties broken by the smallest node
// id they contain. `for_neighbors(u, f)` calls f(v) for every neighbor v.
template <typename ForNeighbors>
ComponentMap connected_components(std::size_t n, ForNeighbors&& for_neighbors) {
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw(n, unseen);
  std::vector<std::vector<NodeId>> groups;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (raw[s] != unseen) continue;
    const std::size_t cid = groups.size();
    groups.emplace_back();
    raw[s] = cid;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      groups[cid].push_back(u);
      for_neighbors(u, [&](NodeId v) {
        if (raw[v] == unseen) {
          raw[v] = cid;
          stack.push_back(v);
        }
      });
    }
  }
  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  // groups were discovered in order of their smallest member, so a stable
  // sort by size gives the id tie-break
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].size() > groups[b].size();
  });

  ComponentMap cm;
  cm.component_id.assign(n, 0);
  cm.renumbering.assign(n, 0);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    auto& grp = groups[order[rank]];
    cm.sizes.push_back(grp.size());
    for (std::size_t i = 0; i < grp.size(); ++i) {
      cm.component_id[grp[i]] = rank;
      cm.renumbering[grp[i]] = static_cast<NodeId>(i);
    }
    cm.members.push_back(std::move(grp));
  }
  return cm;
}

// Weakly connected components of a digraph (plain components when symmetric).
inline ComponentMap connected_components(const DirectedGraph& g) {
  return connected_components(g.node_count(), [&](NodeId u, auto&& visit) {
    for (NodeId v : g.out_neighbors(u)) visit(v);
    for (NodeId v : g.in_neighbors(u)) visit(v);
  });
}

// ---------------------------------------------------------------------------
// Degree ordering

// Nodes by nondecreasing degree, ties by ascending id. Element i is the node
// at position i of the ordering.
inline std::vector<NodeId> degree_ordering(const DirectedGraph& g_undir) {
  std::vector<NodeId> order(g_undir.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return g_undir.out_degree(a) < g_undir.out_degree(b);
  });
  return order;
}

// rank[u] = position of u in `order`.
inline std::vector<NodeId> ordering_ranks(std::span<const NodeId> order) {
  std::vector<NodeId> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<NodeId>(i);
  return rank;
}

}  // namespace motifclust
