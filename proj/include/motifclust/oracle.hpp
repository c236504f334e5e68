#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "motifclust/clustering.hpp"
#include "motifclust/enumerate.hpp"
#include "motifclust/errors.hpp"

namespace motifclust {

struct OptimumResult {
  double phi_star = 0.0;
  std::vector<NodeId> witness;    // original ids, ascending
  std::vector<NodeId> component;  // original ids scanned, ascending
};

// Exact minimum motif conductance over every proper subset of `nodes` with
// positive volume on both sides, from the given instance list (instances
// with anchors outside `nodes` are ignored). Only subsets holding nodes[0]
// are scanned; the witness is the lexicographically smallest minimizer.
inline OptimumResult brute_force_optimum(std::span<const MotifInstance> instances,
                                         std::span<const NodeId> nodes, std::size_t n,
                                         std::size_t max_n = 20) {
  const std::size_t m = nodes.size();
  if (m > max_n || m > 30)
    throw CapabilityError("component has " + std::to_string(m) +
                          " nodes; exhaustive search is limited to " + std::to_string(max_n));
  if (m < 2) throw DomainError("need at least 2 nodes for a proper subset");
  std::vector<std::int64_t> local(n, -1);
  for (std::size_t i = 0; i < m; ++i) local[nodes[i]] = static_cast<std::int64_t>(i);

  struct Masked {
    std::uint32_t mask;
    double weight;
  };
  std::vector<Masked> masks;
  for (const auto& inst : instances) {
    std::uint32_t mk = 0;
    bool inside = true;
    for (NodeId a : inst.anchors) {
      if (a >= n || local[a] < 0) {
        inside = false;
        break;
      }
      mk |= 1u << local[a];
    }
    if (inside) masks.push_back({mk, inst.weight});
  }

  double total = 0.0;
  for (const auto& x : masks) total += x.weight * std::popcount(x.mask);

  const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1u);
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  auto lex_less = [&](std::uint32_t a, std::uint32_t b) {
    // compare ascending member lists; nodes[] is ascending so bit order works
    for (std::size_t i = 0; i < m; ++i) {
      const bool ia = (a >> i) & 1u, ib = (b >> i) & 1u;
      if (ia == ib) continue;
      // the list lacking i is smaller only if it ends here (a proper prefix)
      const std::uint32_t lacking = ia ? b : a;
      const bool lacking_ends = (static_cast<std::uint64_t>(lacking) >> (i + 1)) == 0;
      return ia ? !lacking_ends : lacking_ends;
    }
    return false;
  };
  for (std::uint32_t s = 1; s < full; s += 2) {  // bit 0 always set
    double cut = 0.0, vol = 0.0;
    for (const auto& x : masks) {
      const std::uint32_t in = x.mask & s;
      vol += x.weight * std::popcount(in);
      if (in != 0 && in != x.mask) cut += x.weight;
    }
    const double lo = std::min(vol, total - vol);
    if (!(lo > 0.0)) continue;
    const double phi = cut / lo;
    if (phi < best || (phi == best && lex_less(s, best_mask))) {
      best = phi;
      best_mask = s;
    }
  }
  if (!std::isfinite(best)) throw DomainError("no proper subset has positive motif volume on both sides");
  OptimumResult r;
  r.phi_star = best;
  for (std::size_t i = 0; i < m; ++i)
    if ((best_mask >> i) & 1u) r.witness.push_back(nodes[i]);
  r.component.assign(nodes.begin(), nodes.end());
  return r;
}

// Brute-force optimum on the largest connected component of W_M.
inline OptimumResult brute_force_optimum(const DirectedGraph& g, const MotifSpec& spec,
                                         std::size_t max_n = 20) {
  const auto inst = motif_instances(g, spec);
  const auto w = motif_adjacency_from_instances(g.node_count(), inst);
  const auto cm = connected_components(w);
  if (cm.count() == 0 || cm.sizes[0] < 2) throw DomainError("motif adjacency has no edges");
  return brute_force_optimum(inst, cm.members[0], g.node_count(), max_n);
}

struct CheegerReport {
  std::vector<NodeId> component;      // largest W_M component, original ids
  double lambda2 = 0.0;
  double lower_bound = 0.0;           // lambda2 / 2
  double phi_alg = 0.0;               // exact motif conductance of the sweep set
  std::vector<NodeId> sweep_set;      // original ids
  bool lower_only = false;            // component too large for the exhaustive optimum
  std::optional<double> phi_star;
  std::vector<NodeId> witness_set;
  std::optional<bool> upper_ok;       // phi_alg <= 4 sqrt(phi_star)
  std::optional<bool> lower_ok;       // phi_star >= lambda2 / 2
  bool sweep_above_bound = false;     // phi_alg >= lambda2 / 2, checkable in both modes
};

struct CertifyOptions {
  std::size_t max_n = 20;
  bool allow_lower_only = false;
  double slack = 1e-9;  // absolute slack on both inequalities
  SpectralOptions spectral;
};

// Checks the quadratic-factor guarantee of the sweep against the exact
// optimum on the largest W_M component. Components above max_n either
// throw or, when allowed, fall back to reporting only the spectral bound.
inline CheegerReport cheeger_certify(const DirectedGraph& g, const MotifSpec& spec,
                                     const CertifyOptions& opt = {}) {
  const auto inst = motif_instances(g, spec);
  const auto w = motif_adjacency_from_instances(g.node_count(), inst);
  const auto cs = sweep_largest_component(w, opt.spectral);
  CheegerReport rep;
  rep.component = cs.component;
  rep.lambda2 = cs.fiedler.lambda2;
  rep.lower_bound = rep.lambda2 / 2.0;
  rep.sweep_set = cs.best_set;
  // instances of the component only: every instance's anchors share a component
  std::vector<char> in_comp(g.node_count(), 0);
  for (NodeId u : cs.component) in_comp[u] = 1;
  std::vector<MotifInstance> local;
  for (const auto& i : inst)
    if (in_comp[i.anchors.front()]) local.push_back(i);
  std::vector<NodeId> lid(g.node_count(), 0);
  for (std::size_t i = 0; i < cs.component.size(); ++i) lid[cs.component[i]] = static_cast<NodeId>(i);
  for (auto& i : local) {
    for (auto& a : i.anchors) a = lid[a];
    for (auto& v : i.nodes) v = in_comp[v] ? lid[v] : v;  // non-anchor nodes are not used
  }
  std::vector<NodeId> sweep_local;
  for (NodeId u : cs.best_set) sweep_local.push_back(lid[u]);
  rep.phi_alg = motif_conductance_exact(local, cs.component.size(), sweep_local);
  rep.sweep_above_bound = rep.phi_alg >= rep.lower_bound - opt.slack;

  if (cs.component.size() > opt.max_n) {
    if (!opt.allow_lower_only)
      throw CapabilityError("largest motif component has " + std::to_string(cs.component.size()) +
                            " nodes (limit " + std::to_string(opt.max_n) +
                            "); use lower-bound-only mode");
    rep.lower_only = true;
    return rep;
  }
  std::vector<NodeId> all(cs.component.size());
  std::iota(all.begin(), all.end(), 0);
  const auto opt_res = brute_force_optimum(local, all, cs.component.size(), opt.max_n);
  rep.phi_star = opt_res.phi_star;
  for (NodeId u : opt_res.witness) rep.witness_set.push_back(cs.component[u]);
  rep.upper_ok = rep.phi_alg <= 4.0 * std::sqrt(opt_res.phi_star) + opt.slack;
  rep.lower_ok = opt_res.phi_star >= rep.lower_bound - opt.slack;
  return rep;
}

}  // namespace motifclust
