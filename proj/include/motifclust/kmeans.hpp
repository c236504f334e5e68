#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/lanczos.hpp"

namespace motifclust {

struct KMeansResult {
  std::vector<int> labels;     // per point, in [0, k)
  std::vector<double> centers; // k x d, row-major
  double inertia = 0.0;        // sum of squared distances to assigned centers
  std::size_t iterations = 0;  // Lloyd steps of the kept restart
};

namespace detail {

inline double sq_dist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace detail

// Lloyd's algorithm with k-means++ seeding. `restarts` independent runs
// draw from one generator seeded with `seed`; the run with the lowest
// inertia is kept (earliest on ties). An empty cluster takes over the point
// farthest from its current center.
inline KMeansResult kmeans(std::span<const double> points, std::size_t n, std::size_t d,
                           std::size_t k, std::size_t restarts, std::uint64_t seed,
                           std::size_t max_iter = 300) {
  if (points.size() != n * d) throw DomainError("kmeans: point buffer has wrong size");
  if (k < 1 || k > n) throw DomainError("kmeans needs 1 <= k <= number of points");
  if (restarts < 1) throw DomainError("kmeans needs at least one restart");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&] { return detail::unit_draw(rng) + 0.5; };
  const double* P = points.data();

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t run = 0; run < restarts; ++run) {
    std::vector<double> C(k * d);
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    // k-means++ seeding
    std::size_t first = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    if (first >= n) first = n - 1;
    std::copy(P + first * d, P + (first + 1) * d, C.begin());
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dist[i] = std::min(dist[i], detail::sq_dist(P + i * d, &C[(c - 1) * d], d));
        total += dist[i];
      }
      std::size_t pick = n - 1;
      if (total > 0.0) {
        const double r = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += dist[i];
          if (acc > r) {
            pick = i;
            break;
          }
        }
      } else {
        pick = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        if (pick >= n) pick = n - 1;
      }
      std::copy(P + pick * d, P + (pick + 1) * d, C.begin() + static_cast<std::ptrdiff_t>(c * d));
    }

    std::vector<int> lab(n, -1);
    std::vector<double> own(n, 0.0);
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        int arg = 0;
        double bd = detail::sq_dist(P + i * d, &C[0], d);
        for (std::size_t c = 1; c < k; ++c) {
          const double dc = detail::sq_dist(P + i * d, &C[c * d], d);
          if (dc < bd) {
            bd = dc;
            arg = static_cast<int>(c);
          }
        }
        own[i] = bd;
        if (lab[i] != arg) {
          lab[i] = arg;
          changed = true;
        }
      }
      // repair empty clusters
      std::vector<std::size_t> count(k, 0);
      for (int l : lab) ++count[static_cast<std::size_t>(l)];
      for (std::size_t c = 0; c < k; ++c) {
        if (count[c] != 0) continue;
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (count[static_cast<std::size_t>(lab[i])] <= 1) continue;
          if (far == n || own[i] > own[far]) far = i;
        }
        if (far == n) continue;  // k <= n guarantees this cannot happen
        --count[static_cast<std::size_t>(lab[far])];
        lab[far] = static_cast<int>(c);
        own[far] = 0.0;
        count[c] = 1;
        changed = true;
      }
      std::fill(C.begin(), C.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) C[static_cast<std::size_t>(lab[i]) * d + j] += P[i * d + j];
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < d; ++j) C[c * d + j] /= static_cast<double>(count[c]);
      if (!changed) break;
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      inertia += detail::sq_dist(P + i * d, &C[static_cast<std::size_t>(lab[i]) * d], d);
    if (inertia < best.inertia) {
      best.labels = std::move(lab);
      best.centers = std::move(C);
      best.inertia = inertia;
      best.iterations = it;
    }
  }
  return best;
}

}  // namespace motifclust
