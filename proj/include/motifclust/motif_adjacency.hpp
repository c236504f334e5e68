#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/graph.hpp"

namespace motifclust {

struct WeightedPair {
  NodeId i = 0;
  NodeId j = 0;
  double w = 0.0;

  friend bool operator==(const WeightedPair&, const WeightedPair&) = default;
};

// Symmetric nonnegative matrix with zero diagonal, stored as CSR with both
// triangles and sorted columns. Degrees are row sums.
class MotifAdjacency {
 public:
  MotifAdjacency() = default;
  explicit MotifAdjacency(std::size_t n) : ptr_(n + 1, 0), degree_(n, 0.0) {}

  // Each (i, j, w) with i != j adds w to both (i, j) and (j, i). Repeated
  // pairs are summed; zero totals are dropped.
  static MotifAdjacency from_pairs(std::size_t n, std::vector<WeightedPair> pairs) {
    std::vector<WeightedPair> both;
    both.reserve(2 * pairs.size());
    for (const auto& p : pairs) {
      if (p.i >= n || p.j >= n) throw DomainError("matrix entry out of range");
      if (p.i == p.j) throw DomainError("motif adjacency must have zero diagonal");
      if (!(p.w >= 0.0) || !std::isfinite(p.w))
        throw DomainError("motif adjacency entries must be finite and nonnegative");
      both.push_back(p);
      both.push_back({p.j, p.i, p.w});
    }
    // stable: equal (i,j) keep insertion order, so the summation order is
    // fixed by the caller and independent of the sort implementation
    std::stable_sort(both.begin(), both.end(), [](const WeightedPair& a, const WeightedPair& b) {
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    MotifAdjacency m(n);
    for (std::size_t e = 0; e < both.size();) {
      std::size_t f = e;
      double sum = 0.0;
      while (f < both.size() && both[f].i == both[e].i && both[f].j == both[e].j) sum += both[f++].w;
      if (sum != 0.0) {
        m.idx_.push_back(both[e].j);
        m.val_.push_back(sum);
        ++m.ptr_[both[e].i + 1];
      }
      e = f;
    }
    for (std::size_t u = 0; u < n; ++u) m.ptr_[u + 1] += m.ptr_[u];
    m.recompute_degrees();
    return m;
  }

  std::size_t size() const noexcept { return degree_.size(); }
  // Stored nonzeros, counting both triangles.
  std::size_t nnz() const noexcept { return idx_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {idx_.data() + ptr_[u], ptr_[u + 1] - ptr_[u]};
  }
  std::span<const double> weights(NodeId u) const {
    return {val_.data() + ptr_[u], ptr_[u + 1] - ptr_[u]};
  }

  double weight(NodeId i, NodeId j) const {
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return val_[ptr_[i] + static_cast<std::size_t>(it - nb.begin())];
  }

  double degree(NodeId u) const { return degree_[u]; }
  const std::vector<double>& degrees() const noexcept { return degree_; }
  double total_volume() const {
    double s = 0.0;
    for (double d : degree_) s += d;
    return s;
  }

  // Entries with i < j sorted by (i, j).
  std::vector<WeightedPair> upper_entries() const {
    std::vector<WeightedPair> out;
    out.reserve(nnz() / 2);
    for (NodeId u = 0; u < size(); ++u) {
      const auto nb = neighbors(u);
      const auto ws = weights(u);
      for (std::size_t e = 0; e < nb.size(); ++e)
        if (nb[e] > u) out.push_back({u, nb[e], ws[e]});
    }
    return out;
  }

  // Principal submatrix on `nodes`; row i of the result is nodes[i].
  MotifAdjacency induced(std::span<const NodeId> nodes) const {
    std::vector<std::int64_t> local(size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (local[nodes[i]] >= 0) throw DomainError("induced: repeated node");
      local[nodes[i]] = static_cast<std::int64_t>(i);
    }
    MotifAdjacency m(nodes.size());
    std::vector<std::pair<NodeId, double>> row;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      row.clear();
      const auto nb = neighbors(nodes[i]);
      const auto ws = weights(nodes[i]);
      for (std::size_t e = 0; e < nb.size(); ++e)
        if (local[nb[e]] >= 0) row.emplace_back(static_cast<NodeId>(local[nb[e]]), ws[e]);
      std::sort(row.begin(), row.end());
      for (auto [j, w] : row) {
        m.idx_.push_back(j);
        m.val_.push_back(w);
      }
      m.ptr_[i + 1] = m.idx_.size();
    }
    m.recompute_degrees();
    return m;
  }

  // c * W.
  MotifAdjacency scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("scale factor must be positive");
    MotifAdjacency m = *this;
    for (double& v : m.val_) v *= c;
    m.recompute_degrees();
    return m;
  }

  friend bool operator==(const MotifAdjacency& a, const MotifAdjacency& b) {
    return a.ptr_ == b.ptr_ && a.idx_ == b.idx_ && a.val_ == b.val_;
  }

 private:
  void recompute_degrees() {
    degree_.assign(ptr_.size() - 1, 0.0);
    for (std::size_t u = 0; u + 1 < ptr_.size(); ++u)
      for (std::size_t e = ptr_[u]; e < ptr_[u + 1]; ++e) degree_[u] += val_[e];
  }

  std::vector<std::size_t> ptr_{0};
  std::vector<NodeId> idx_;
  std::vector<double> val_;
  std::vector<double> degree_;
};

inline ComponentMap connected_components(const MotifAdjacency& w) {
  return connected_components(w.size(), [&](NodeId u, auto&& visit) {
    for (NodeId v : w.neighbors(u)) visit(v);
  });
}

// Nodes with positive motif degree, ascending.
inline std::vector<NodeId> active_nodes(const MotifAdjacency& w) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < w.size(); ++u)
    if (w.degree(u) > 0.0) out.push_back(u);
  return out;
}

// Sum_j alpha_j W_j. All parts must share one dimension.
inline MotifAdjacency combine_weighted(std::span<const std::pair<MotifAdjacency, double>> parts) {
  if (parts.empty()) throw DomainError("combine_weighted needs at least one part");
  const std::size_t n = parts.front().first.size();
  std::vector<WeightedPair> pairs;
  for (const auto& [w, alpha] : parts) {
    if (w.size() != n)
      throw DomainError("dimension mismatch: " + std::to_string(w.size()) + " vs " +
                        std::to_string(n));
    if (!(alpha >= 0.0)) throw DomainError("combination weights must be nonnegative");
    if (alpha == 0.0) continue;
    for (const auto& e : w.upper_entries()) pairs.push_back({e.i, e.j, alpha * e.w});
  }
  return MotifAdjacency::from_pairs(n, std::move(pairs));
}

inline MotifAdjacency combine_weighted(std::initializer_list<std::pair<MotifAdjacency, double>> parts) {
  std::vector<std::pair<MotifAdjacency, double>> v(parts);
  return combine_weighted(std::span<const std::pair<MotifAdjacency, double>>(v));
}

// ---------------------------------------------------------------------------
// Coordinate text: one `i j weight` line per stored pair with i < j.

// Shortest text that parses back to the same double. -0 prints as 0.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_coordinates(std::ostream& out, const MotifAdjacency& w) {
  for (const auto& e : w.upper_entries())
    out << e.i << ' ' << e.j << ' ' << format_double(e.w) << '\n';
}

inline MotifAdjacency read_coordinates(std::istream& in, std::size_t n) {
  std::vector<WeightedPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks.size() != 3) throw ParseError(line_no, "expected `i j weight`");
    WeightedPair p;
    auto num = [&](std::string_view t, auto& out) {
      const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
      if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw ParseError(line_no, "bad number '" + std::string(t) + "'");
    };
    num(toks[0], p.i);
    num(toks[1], p.j);
    num(toks[2], p.w);
    if (p.i >= p.j) throw ParseError(line_no, "coordinate lines must have i < j");
    pairs.push_back(p);
  }
  try {
    return MotifAdjacency::from_pairs(n, std::move(pairs));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace motifclust
