#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/graph.hpp"
#include "motifclust/motif.hpp"
#include "motifclust/motif_adjacency.hpp"

namespace motifclust {

// Closed-form W_M for the triangular triads M1-M7 using only sparse
// products and Hadamard products of B = A o A^T and U = A - B. Exact integer
// arithmetic; the result matches instance counting entry for entry.
inline MotifAdjacency motif_adjacency_by_formula(const DirectedGraph& g, const MotifSpec& spec) {
  using Sp = Eigen::SparseMatrix<std::int64_t>;
  using Trip = Eigen::Triplet<std::int64_t>;
  const auto n = static_cast<Eigen::Index>(g.node_count());

  const EdgeSplit split = split_edges(g);
  std::vector<Trip> ut, bt;
  for (auto [s, d] : split.unidirectional) ut.emplace_back(s, d, 1);
  for (auto [a, b] : split.bidirectional) {
    bt.emplace_back(a, b, 1);
    bt.emplace_back(b, a, 1);
  }
  Sp U(n, n), B(n, n);
  U.setFromTriplets(ut.begin(), ut.end());
  B.setFromTriplets(bt.begin(), bt.end());
  const Sp Ut = U.transpose();

  const std::string& name = spec.name;
  Sp C(n, n);
  bool add_transpose = true;
  if (name == "M1") {
    C = Sp(U * U).cwiseProduct(Ut);
  } else if (name == "M2") {
    C = Sp(B * U).cwiseProduct(Ut) + Sp(U * B).cwiseProduct(Ut) + Sp(U * U).cwiseProduct(B);
  } else if (name == "M3") {
    C = Sp(B * B).cwiseProduct(U) + Sp(B * U).cwiseProduct(B) + Sp(U * B).cwiseProduct(B);
  } else if (name == "M4") {
    C = Sp(B * B).cwiseProduct(B);
    add_transpose = false;
  } else if (name == "M5") {
    C = Sp(U * U).cwiseProduct(U) + Sp(U * Ut).cwiseProduct(U) + Sp(Ut * U).cwiseProduct(U);
  } else if (name == "M6") {
    C = Sp(U * B).cwiseProduct(U) + Sp(B * Ut).cwiseProduct(Ut) + Sp(Ut * U).cwiseProduct(B);
    add_transpose = false;
  } else if (name == "M7") {
    C = Sp(Ut * B).cwiseProduct(Ut) + Sp(B * U).cwiseProduct(U) + Sp(U * Ut).cwiseProduct(B);
    add_transpose = false;
  } else {
    throw DomainError("matrix formula exists only for M1-M7, got '" + name + "'");
  }
  const Sp W = add_transpose ? Sp(C + Sp(C.transpose())) : C;

  std::vector<WeightedPair> pairs;
  for (Eigen::Index col = 0; col < W.outerSize(); ++col) {
    for (Sp::InnerIterator it(W, col); it; ++it) {
      if (it.value() == 0) continue;
      if (it.row() == col) throw DomainError("formula produced a diagonal entry");
      if (it.row() < col)
        pairs.push_back({static_cast<NodeId>(it.row()), static_cast<NodeId>(col),
                         static_cast<double>(it.value())});
    }
  }
  return MotifAdjacency::from_pairs(g.node_count(), std::move(pairs));
}

}  // namespace motifclust
