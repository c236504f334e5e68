#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "motifclust/errors.hpp"

namespace motifclust {

struct LanczosOptions {
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::size_t max_matvecs = 0;  // 0: 10 * n
  std::size_t max_basis = 0;    // 0: chosen from nev and n
};

struct LanczosResult {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // unit norm
  std::vector<double> residuals;             // ||A x - theta x||
  std::size_t matvecs = 0;
  std::size_t restarts = 0;
};

namespace detail {

// Uniform in [-0.5, 0.5) from raw 64-bit draws; avoids the
// implementation-defined distributions of <random>.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

// Largest `nev` eigenpairs of a symmetric operator restricted to the
// orthogonal complement of `deflate` (orthonormal columns). Thick-restart
// Lanczos with full reorthogonalization: after each cycle the best Ritz
// vectors are kept and the Krylov basis is rebuilt from the residual.
inline LanczosResult lanczos_largest(
    std::size_t n, const std::function<void(std::span<const double>, std::span<double>)>& apply,
    std::size_t nev, std::span<const std::vector<double>> deflate, const LanczosOptions& opt = {}) {
  const std::size_t free_dim = n - std::min(n, deflate.size());
  if (nev == 0 || nev > free_dim) throw DomainError("lanczos: too many eigenpairs requested");
  const std::size_t cap = opt.max_matvecs ? opt.max_matvecs : 10 * n;
  std::size_t m_max = opt.max_basis ? opt.max_basis : std::max<std::size_t>(2 * nev + 20, 40);
  m_max = std::min(std::max(m_max, nev + 1), free_dim);

  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<double>> V;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_max),
                                            static_cast<Eigen::Index>(m_max));
  std::vector<double> w(n);
  LanczosResult res;

  // Orthogonalizes x against the deflation space and V[0..upto), twice.
  // Returns the accumulated projection coefficients onto V.
  auto orthogonalize = [&](std::vector<double>& x, std::size_t upto) {
    std::vector<double> coef(upto, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& d : deflate) {
        const double c = detail::dot(d, x);
        for (std::size_t i = 0; i < n; ++i) x[i] -= c * d[i];
      }
      for (std::size_t j = 0; j < upto; ++j) {
        const double c = detail::dot(V[j], x);
        coef[j] += c;
        for (std::size_t i = 0; i < n; ++i) x[i] -= c * V[j][i];
      }
    }
    return coef;
  };

  auto fresh_start = [&](std::size_t upto) {
    // random vector orthogonal to everything kept so far
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<double> x(n);
      for (double& xi : x) xi = detail::unit_draw(rng);
      orthogonalize(x, upto);
      const double nx = detail::norm(x);
      if (nx > 1e-8) {
        for (double& xi : x) xi /= nx;
        return x;
      }
    }
    throw DomainError("lanczos: could not build a start vector");
  };

  V.push_back(fresh_start(0));
  std::size_t kept = 0;  // leading columns of H that are diagonal Ritz values
  double best_residual = std::numeric_limits<double>::infinity();

  while (true) {
    std::size_t m = kept;
    double beta = 0.0;
    std::vector<double> f;
    for (std::size_t j = kept; j < m_max; ++j) {
      apply(V[j], w);
      ++res.matvecs;
      std::vector<double> x = w;
      const auto coef = orthogonalize(x, j + 1);
      for (std::size_t i = 0; i <= j; ++i)
        H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coef[i];
      beta = detail::norm(x);
      m = j + 1;
      if (beta <= 1e-10) {
        // invariant subspace: exact Ritz pairs
        beta = 0.0;
        break;
      }
      if (j + 1 < m_max) {
        for (double& xi : x) xi /= beta;
        V.push_back(std::move(x));
      } else {
        f = std::move(x);
      }
    }

    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd T = H.topLeftCorner(mi, mi);
    T = T.triangularView<Eigen::Upper>();
    T = (T + T.transpose()).eval();
    T.diagonal() /= 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd theta = es.eigenvalues();  // ascending
    const Eigen::MatrixXd Y = es.eigenvectors();

    const std::size_t want = std::min(nev, m);
    double worst = 0.0;
    for (std::size_t r = 0; r < want; ++r) {
      const Eigen::Index c = mi - 1 - static_cast<Eigen::Index>(r);
      worst = std::max(worst, beta * std::abs(Y(mi - 1, c)));
    }
    const bool converged = want == nev && worst <= opt.tol;
    best_residual = std::min(best_residual, want == nev ? worst : best_residual);

    auto ritz = [&](Eigen::Index c) {
      std::vector<double> x(n, 0.0);
      for (Eigen::Index j = 0; j < mi; ++j) {
        const double y = Y(j, c);
        const auto& vj = V[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < n; ++i) x[i] += y * vj[i];
      }
      const double nx = detail::norm(x);
      for (double& xi : x) xi /= nx;
      return x;
    };

    if (converged) {
      for (std::size_t r = 0; r < nev; ++r) {
        const Eigen::Index c = mi - 1 - static_cast<Eigen::Index>(r);
        std::vector<double> x = ritz(c);
        apply(x, w);
        ++res.matvecs;
        double rr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = w[i] - theta(c) * x[i];
          rr += d * d;
        }
        res.values.push_back(theta(c));
        res.vectors.push_back(std::move(x));
        res.residuals.push_back(std::sqrt(rr));
      }
      return res;
    }
    if (res.matvecs >= cap)
      throw ConvergenceError("lanczos did not converge within " + std::to_string(cap) +
                                 " matrix applications",
                             best_residual);

    // thick restart: keep the top Ritz vectors, continue from the residual
    std::size_t keep = std::min<std::size_t>(m - 1, nev + (m - nev) / 2);
    if (beta == 0.0) keep = m;  // nothing to continue from; keep the whole space
    if (keep >= m_max) keep = m_max - 1;
    std::vector<std::vector<double>> nv;
    H.setZero();
    for (std::size_t r = 0; r < keep; ++r) {
      const Eigen::Index c = mi - 1 - static_cast<Eigen::Index>(r);
      nv.push_back(ritz(c));
      H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = theta(c);
    }
    V = std::move(nv);
    if (beta > 0.0) {
      for (double& fi : f) fi /= beta;
      // re-orthogonalize against the rotated basis for safety
      orthogonalize(f, V.size());
      const double nf = detail::norm(f);
      for (double& fi : f) fi /= nf;
      V.push_back(std::move(f));
    } else {
      V.push_back(fresh_start(V.size()));
    }
    kept = keep;
    ++res.restarts;
  }
}

}  // namespace motifclust
