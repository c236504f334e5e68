#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "motifclust/enumerate.hpp"
#include "motifclust/spectral.hpp"
#include "support.hpp"

using namespace motifclust;

namespace {

MotifAdjacency path3() { return MotifAdjacency::from_pairs(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

// Connected random weighted matrix: a spanning path plus G(n, p) extras.
MotifAdjacency random_connected(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wdist(1, 4);
  std::bernoulli_distribution coin(p);
  std::vector<WeightedPair> ps;
  for (NodeId u = 0; u + 1 < n; ++u) ps.push_back({u, u + 1, static_cast<double>(wdist(rng))});
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 2; v < n; ++v)
      if (coin(rng)) ps.push_back({u, v, static_cast<double>(wdist(rng))});
  return MotifAdjacency::from_pairs(n, ps);
}

// Reference spectrum of L from a plain dense matrix built here.
Eigen::VectorXd reference_spectrum(const MotifAdjacency& w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : w.upper_entries()) W(e.i, e.j) = W(e.j, e.i) = e.w;
  Eigen::VectorXd d = W.rowwise().sum();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n) -
                      d.cwiseSqrt().cwiseInverse().asDiagonal() * W *
                          d.cwiseSqrt().cwiseInverse().asDiagonal();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L).eigenvalues();
}

SpectralOptions forced(EigenMethod m, double tol = 1e-4) {
  SpectralOptions o;
  o.method = m;
  o.tol = tol;
  return o;
}

}  // namespace

TEST(Fiedler, PathOfThree) {
  for (auto m : {EigenMethod::dense, EigenMethod::lanczos}) {
    const auto fp = fiedler_pair(path3(), forced(m, 1e-10));
    EXPECT_NEAR(fp.lambda2, 1.0, 1e-9);
    EXPECT_NEAR(fp.z[0], 1 / std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(fp.z[1], 0.0, 1e-8);
    EXPECT_NEAR(fp.z[2], -1 / std::sqrt(2.0), 1e-8);
  }
}

TEST(Fiedler, Triangle) {
  const auto w = MotifAdjacency::from_pairs(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  EXPECT_NEAR(fiedler_pair(w).lambda2, 1.5, 1e-9);
  EXPECT_NEAR(fiedler_pair(w, forced(EigenMethod::lanczos)).lambda2, 1.5, 1e-6);
}

TEST(Fiedler, DisconnectedRejected) {
  const auto w = MotifAdjacency::from_pairs(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_THROW(fiedler_pair(w), DomainError);
  EXPECT_THROW(fiedler_pair(MotifAdjacency::from_pairs(3, {{0, 1, 1.0}})), DomainError);
  // the reference spectrum confirms the degenerate second eigenvalue
  EXPECT_NEAR(reference_spectrum(w)(1), 0.0, 1e-12);
}

TEST(Fiedler, ContractOnRandomInputs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto w = random_connected(30 + seed, 0.1, seed);
    const auto ref = reference_spectrum(w);
    for (auto m : {EigenMethod::dense, EigenMethod::lanczos}) {
      const auto fp = fiedler_pair(w, forced(m));
      EXPECT_NEAR(fp.lambda2, ref(1), 1e-3) << "seed " << seed;
      EXPECT_GE(fp.lambda2, -1e-12);
      EXPECT_LE(fp.lambda2, 2.0 + 1e-12);
      EXPECT_LE(fp.residual, 1e-4);
      double dot = 0.0, vol = w.total_volume(), nz = 0.0;
      for (NodeId u = 0; u < w.size(); ++u) {
        dot += fp.z[u] * std::sqrt(w.degree(u) / vol);
        nz += fp.z[u] * fp.z[u];
      }
      EXPECT_LE(std::abs(dot), 1e-4);
      EXPECT_NEAR(nz, 1.0, 1e-9);
    }
  }
}

TEST(Fiedler, LanczosMatchesDenseOrdering) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = random_connected(50, 0.08, 100 + seed);
    const auto ref = reference_spectrum(w);
    if (ref(2) - ref(1) < 1e-3) continue;  // near-degenerate pair: ordering not defined
    const auto d = fiedler_pair(w, forced(EigenMethod::dense, 1e-12));
    const auto l = fiedler_pair(w, forced(EigenMethod::lanczos, 1e-12));
    EXPECT_NEAR(d.lambda2, l.lambda2, 1e-9);
    const auto od = spectral_ordering(w, d).sigma;
    auto ol = spectral_ordering(w, l).sigma;
    if (od != ol) std::reverse(ol.begin(), ol.end());
    EXPECT_EQ(od, ol) << "seed " << seed;
  }
}

TEST(Fiedler, LargeInputUsesLanczos) {
  const auto w = random_connected(450, 0.01, 9);
  const auto fp = fiedler_pair(w);
  EXPECT_FALSE(fp.dense);
  EXPECT_NEAR(fp.lambda2, reference_spectrum(w)(1), 1e-3);
  EXPECT_LE(fp.matvecs, 10 * w.size() + 2);
}

TEST(Fiedler, DeterministicForSeed) {
  const auto w = random_connected(80, 0.05, 3);
  const auto a = fiedler_pair(w, forced(EigenMethod::lanczos));
  const auto b = fiedler_pair(w, forced(EigenMethod::lanczos));
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.lambda2, b.lambda2);
}

TEST(Fiedler, IterationCapRaisesConvergenceError) {
  const auto w = random_connected(300, 0.01, 4);
  auto o = forced(EigenMethod::lanczos, 1e-12);
  o.max_matvecs = 5;
  try {
    fiedler_pair(w, o);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Ordering, Examples) {
  const auto w = path3();
  const std::vector<double> z{1, 0, -1};
  EXPECT_EQ(spectral_ordering(w, z).sigma, (std::vector<NodeId>{2, 1, 0}));
  const std::vector<double> flat{0.5, 0.5, 0.5};
  const auto k3 = MotifAdjacency::from_pairs(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  EXPECT_EQ(spectral_ordering(k3, flat).sigma, (std::vector<NodeId>{0, 1, 2}));
  const std::vector<double> flip{-1, 0, 1};
  EXPECT_EQ(spectral_ordering(w, flip).sigma, (std::vector<NodeId>{0, 1, 2}));
  const auto o = spectral_ordering(w, z);
  EXPECT_TRUE(std::is_sorted(o.scores.begin(), o.scores.end()));
}

TEST(Ordering, ScaleInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = random_connected(40, 0.1, 50 + seed);
    const auto a = spectral_ordering(w, fiedler_pair(w, forced(EigenMethod::dense, 1e-12)));
    const auto s = w.scaled(3.5);
    const auto b = spectral_ordering(s, fiedler_pair(s, forced(EigenMethod::dense, 1e-12)));
    EXPECT_EQ(a.sigma, b.sigma);
  }
}

TEST(Embedding, OneColumnIsConstant) {
  const auto w = random_connected(20, 0.2, 1);
  const auto e = embed_k(w, 1);
  for (NodeId i = 0; i < 20; ++i) EXPECT_NEAR(e.row(i)[0], 1.0, 1e-12);
  EXPECT_TRUE(e.zero_rows.empty());
}

TEST(Embedding, TwoCliquesSeparateAntipodally) {
  std::vector<WeightedPair> ps;
  for (NodeId a = 0; a < 6; ++a)
    for (NodeId b = a + 1; b < 6; ++b) {
      ps.push_back({a, b, 1.0});
      ps.push_back({static_cast<NodeId>(a + 6), static_cast<NodeId>(b + 6), 1.0});
    }
  ps.push_back({5, 6, 0.01});
  const auto w = MotifAdjacency::from_pairs(12, ps);
  for (auto m : {EigenMethod::dense, EigenMethod::lanczos}) {
    const auto e = embed_k(w, 2, forced(m, 1e-10));
    for (NodeId i = 0; i < 12; ++i) {
      const auto r = e.row(i);
      EXPECT_NEAR(r[0] * r[0] + r[1] * r[1], 1.0, 1e-12);
      const double sgn = (i < 6) == (e.row(0)[1] > 0) ? 1.0 : -1.0;
      EXPECT_GT(sgn * r[1], 0.0) << i;
    }
  }
}

TEST(Embedding, LanczosAgreesWithDense) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto w = random_connected(60, 0.06, 200 + seed);
    const auto ref = reference_spectrum(w);
    if (ref(3) - ref(2) < 1e-3 || ref(2) - ref(1) < 1e-3) continue;
    const auto d = embed_k(w, 3, forced(EigenMethod::dense, 1e-12));
    const auto l = embed_k(w, 3, forced(EigenMethod::lanczos, 1e-12));
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(d.eigenvalues[c], l.eigenvalues[c], 1e-9);
    for (std::size_t i = 0; i < d.y.size(); ++i) EXPECT_NEAR(d.y[i], l.y[i], 1e-6);
  }
}

TEST(Embedding, Rejections) {
  const auto w = path3();
  EXPECT_THROW(embed_k(w, 4), DomainError);
  EXPECT_THROW(embed_k(w, 0), DomainError);
  EXPECT_THROW(embed_k(MotifAdjacency::from_pairs(3, {{0, 1, 1.0}}), 2), DomainError);
}

TEST(Embedding, DisconnectedButNoIsolatedNodes) {
  const auto w = MotifAdjacency::from_pairs(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const auto e = embed_k(w, 2);
  EXPECT_NEAR(e.eigenvalues[1], 0.0, 1e-12);
  EXPECT_TRUE(e.zero_rows.empty());
}
