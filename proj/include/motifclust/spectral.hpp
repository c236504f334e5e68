#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/lanczos.hpp"
#include "motifclust/motif_adjacency.hpp"

namespace motifclust {

enum class EigenMethod { automatic, dense, lanczos };

struct SpectralOptions {
  double tol = 1e-4;
  std::uint64_t seed = 0;
  EigenMethod method = EigenMethod::automatic;
  std::size_t dense_threshold = 200;  // automatic: dense at or below this size
  std::size_t max_matvecs = 0;        // 0: 10 * n
};

struct FiedlerPair {
  double lambda2 = 0.0;
  std::vector<double> z;  // unit norm, largest-magnitude entry positive
  double residual = 0.0;  // ||L z - lambda2 z||
  std::size_t matvecs = 0;
  bool dense = false;
};

struct SpectralOrdering {
  std::vector<NodeId> sigma;   // node at each position
  std::vector<double> scores;  // D^{-1/2} z along sigma, nondecreasing
};

struct SpectralEmbedding {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> y;               // n x k, row-major
  std::vector<double> eigenvalues;     // k smallest of L, ascending
  std::vector<NodeId> zero_rows;       // rows left at zero

  std::span<const double> row(NodeId i) const { return {y.data() + i * k, k}; }
};

namespace detail {

// Flip so the entry of largest magnitude is positive. Magnitudes within a
// relative 1e-9 of the maximum count as tied and the lowest index wins, so
// rounding noise cannot flip the sign.
inline void normalize_sign(std::vector<double>& z) {
  double top = 0.0;
  for (double v : z) top = std::max(top, std::abs(v));
  std::size_t best = 0;
  while (best < z.size() && std::abs(z[best]) < top * (1.0 - 1e-9)) ++best;
  if (best < z.size() && z[best] < 0.0)
    for (double& v : z) v = -v;
}

inline void require_positive_degrees(const MotifAdjacency& w) {
  for (NodeId u = 0; u < w.size(); ++u)
    if (!(w.degree(u) > 0.0))
      throw DomainError("node " + std::to_string(u) + " has zero motif degree");
}

inline bool use_dense(const MotifAdjacency& w, const SpectralOptions& opt) {
  if (opt.method == EigenMethod::dense) return true;
  if (opt.method == EigenMethod::lanczos) return false;
  return w.size() <= opt.dense_threshold;
}

inline Eigen::MatrixXd normalized_laplacian_dense(const MotifAdjacency& w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  for (NodeId u = 0; u < w.size(); ++u) {
    const auto nb = w.neighbors(u);
    const auto ws = w.weights(u);
    for (std::size_t e = 0; e < nb.size(); ++e)
      L(u, nb[e]) -= ws[e] / std::sqrt(w.degree(u) * w.degree(nb[e]));
  }
  return L;
}

// y = D^{-1/2} W D^{-1/2} x
inline void apply_normalized_adjacency(const MotifAdjacency& w, std::span<const double> inv_sqrt,
                                       std::span<const double> x, std::span<double> y) {
  for (NodeId u = 0; u < w.size(); ++u) {
    const auto nb = w.neighbors(u);
    const auto ws = w.weights(u);
    double s = 0.0;
    for (std::size_t e = 0; e < nb.size(); ++e) s += ws[e] * inv_sqrt[nb[e]] * x[nb[e]];
    y[u] = inv_sqrt[u] * s;
  }
}

inline double laplacian_residual(const MotifAdjacency& w, std::span<const double> z, double lambda) {
  std::vector<double> inv_sqrt(w.size()), y(w.size());
  for (NodeId u = 0; u < w.size(); ++u) inv_sqrt[u] = 1.0 / std::sqrt(w.degree(u));
  apply_normalized_adjacency(w, inv_sqrt, z, y);
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double d = (z[i] - y[i]) - lambda * z[i];
    r += d * d;
  }
  return std::sqrt(r);
}

// k smallest eigenpairs of L; columns sign-normalized.
inline std::pair<std::vector<double>, std::vector<std::vector<double>>> smallest_pairs(
    const MotifAdjacency& w, std::size_t k, const SpectralOptions& opt, std::size_t* matvecs,
    bool* dense) {
  const std::size_t n = w.size();
  std::vector<double> values;
  std::vector<std::vector<double>> vecs;
  std::vector<double> u(n);
  double un = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    u[i] = std::sqrt(w.degree(i));
    un += w.degree(i);
  }
  for (double& x : u) x /= std::sqrt(un);

  if (use_dense(w, opt)) {
    *dense = true;
    *matvecs = 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian_dense(w));
    for (std::size_t c = 0; c < k; ++c) {
      values.push_back(es.eigenvalues()(static_cast<Eigen::Index>(c)));
      std::vector<double> z(n);
      for (std::size_t i = 0; i < n; ++i)
        z[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
      vecs.push_back(std::move(z));
    }
  } else {
    *dense = false;
    values.push_back(0.0);
    vecs.push_back(u);
    if (k > 1) {
      std::vector<double> inv_sqrt(n);
      for (NodeId i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(w.degree(i));
      LanczosOptions lo;
      lo.tol = opt.tol;
      lo.seed = opt.seed;
      lo.max_matvecs = opt.max_matvecs;
      const std::vector<std::vector<double>> defl{u};
      const auto r = lanczos_largest(
          n,
          [&](std::span<const double> x, std::span<double> y) {
            apply_normalized_adjacency(w, inv_sqrt, x, y);
          },
          k - 1, defl, lo);
      *matvecs = r.matvecs;
      for (std::size_t c = 0; c + 1 < k; ++c) {
        values.push_back(1.0 - r.values[c]);
        vecs.push_back(r.vectors[c]);
      }
    } else {
      *matvecs = 0;
    }
  }
  for (auto& z : vecs) normalize_sign(z);
  return {values, vecs};
}

}  // namespace detail

// Second-smallest eigenpair of L = I - D^{-1/2} W D^{-1/2} for a connected
// W with positive degrees. Dense eigendecomposition for small inputs,
// deflated Lanczos otherwise.
inline FiedlerPair fiedler_pair(const MotifAdjacency& w, const SpectralOptions& opt = {}) {
  if (w.size() < 2) throw DomainError("fiedler_pair needs at least 2 nodes");
  if (!(opt.tol > 0.0)) throw DomainError("tolerance must be positive");
  detail::require_positive_degrees(w);
  if (connected_components(w).count() != 1)
    throw DomainError("motif adjacency is disconnected (lambda2 = 0); split components first");
  FiedlerPair fp;
  auto [values, vecs] = detail::smallest_pairs(w, 2, opt, &fp.matvecs, &fp.dense);
  fp.lambda2 = values[1];
  fp.z = std::move(vecs[1]);
  fp.residual = detail::laplacian_residual(w, fp.z, fp.lambda2);
  return fp;
}

// Nodes sorted by D^{-1/2} z ascending, ties by node id.
inline SpectralOrdering spectral_ordering(const MotifAdjacency& w, std::span<const double> z) {
  if (z.size() != w.size()) throw DomainError("eigenvector dimension does not match matrix");
  std::vector<double> s(z.size());
  for (NodeId u = 0; u < w.size(); ++u)
    s[u] = w.degree(u) > 0.0 ? z[u] / std::sqrt(w.degree(u)) : 0.0;
  SpectralOrdering o;
  o.sigma.resize(z.size());
  std::iota(o.sigma.begin(), o.sigma.end(), 0);
  std::stable_sort(o.sigma.begin(), o.sigma.end(), [&](NodeId a, NodeId b) { return s[a] < s[b]; });
  for (NodeId u : o.sigma) o.scores.push_back(s[u]);
  return o;
}

inline SpectralOrdering spectral_ordering(const MotifAdjacency& w, const FiedlerPair& pair) {
  return spectral_ordering(w, pair.z);
}

// Rows of the k smallest eigenvectors of L, each scaled to unit length.
// W may be disconnected but every node needs a positive degree. Rows whose
// entries are all zero stay zero and are listed in zero_rows.
inline SpectralEmbedding embed_k(const MotifAdjacency& w, std::size_t k,
                                 const SpectralOptions& opt = {}) {
  const std::size_t n = w.size();
  if (k < 1 || k > n) throw DomainError("embed_k needs 1 <= k <= n");
  detail::require_positive_degrees(w);
  std::size_t matvecs = 0;
  bool dense = false;
  auto [values, vecs] = detail::smallest_pairs(w, k, opt, &matvecs, &dense);
  SpectralEmbedding e;
  e.n = n;
  e.k = k;
  e.eigenvalues = values;
  e.y.assign(n * k, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += vecs[c][i] * vecs[c][i];
    if (s == 0.0) {
      e.zero_rows.push_back(i);
      continue;
    }
    const double r = std::sqrt(s);
    for (std::size_t c = 0; c < k; ++c) e.y[i * k + c] = vecs[c][i] / r;
  }
  return e;
}

}  // namespace motifclust
