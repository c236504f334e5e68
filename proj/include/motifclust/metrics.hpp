#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "motifclust/clustering.hpp"
#include "motifclust/errors.hpp"

namespace motifclust {

struct QualityScores {
  double ari = 0.0;     // Hubert-Arabie adjusted Rand index
  double f1 = 0.0;      // pair-counting F1, pred pairs scored against truth pairs
  double nmi = 0.0;     // 2 I / (H_pred + H_truth)
  double purity = 0.0;  // sum_c max_t |c & t| / N
  std::size_t n = 0;
};

namespace detail {

inline double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace detail

// External quality of `pred` against `truth`. Both must cover the same
// nodes; cluster ids are arbitrary integers (negative = uncovered).
inline QualityScores score_labels(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) throw DomainError("partitions have different node counts");
  std::vector<std::size_t> mismatch;
  for (std::size_t u = 0; u < pred.size(); ++u)
    if ((pred[u] >= 0) != (truth[u] >= 0)) mismatch.push_back(u);
  if (!mismatch.empty()) {
    std::string msg = "partitions cover different nodes:";
    for (std::size_t i = 0; i < mismatch.size() && i < 20; ++i) msg += " " + std::to_string(mismatch[i]);
    if (mismatch.size() > 20) msg += " ...";
    throw DomainError(msg);
  }
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> a, b;
  double N = 0.0;
  for (std::size_t u = 0; u < pred.size(); ++u) {
    if (pred[u] < 0) continue;
    joint[{pred[u], truth[u]}] += 1.0;
    a[pred[u]] += 1.0;
    b[truth[u]] += 1.0;
    N += 1.0;
  }
  if (N == 0.0) throw DomainError("partitions cover no nodes");
  QualityScores q;
  q.n = static_cast<std::size_t>(N);

  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : joint) sum_ij += detail::choose2(c);
  for (const auto& [key, c] : a) sum_a += detail::choose2(c);
  for (const auto& [key, c] : b) sum_b += detail::choose2(c);
  const double pairs = detail::choose2(N);
  const bool identical = joint.size() == a.size() && joint.size() == b.size();

  const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
  const double maximum = (sum_a + sum_b) / 2.0;
  q.ari = maximum == expected ? (identical ? 1.0 : 0.0) : (sum_ij - expected) / (maximum - expected);

  if (sum_a == 0.0 && sum_b == 0.0) {
    q.f1 = identical ? 1.0 : 0.0;
  } else if (sum_ij == 0.0) {
    q.f1 = 0.0;
  } else {
    const double p = sum_ij / sum_a, r = sum_ij / sum_b;
    q.f1 = 2.0 * p * r / (p + r);
  }

  double mi = 0.0, ha = 0.0, hb = 0.0;
  for (const auto& [key, c] : joint) mi += c / N * std::log(N * c / (a[key.first] * b[key.second]));
  for (const auto& [key, c] : a) ha -= c / N * std::log(c / N);
  for (const auto& [key, c] : b) hb -= c / N * std::log(c / N);
  q.nmi = ha + hb == 0.0 ? 1.0 : std::max(0.0, 2.0 * mi / (ha + hb));

  std::map<int, double> best;
  for (const auto& [key, c] : joint) best[key.first] = std::max(best[key.first], c);
  double hit = 0.0;
  for (const auto& [key, c] : best) hit += c;
  q.purity = hit / N;
  return q;
}

inline QualityScores score_partition(const Partition& pred, const Partition& truth) {
  return score_labels(pred.assignment, truth.assignment);
}

// ---------------------------------------------------------------------------

struct LabeledInstance {
  std::vector<NodeId> nodes;
  std::string function;
};

struct CoherenceResult {
  std::size_t coherent = 0;
  std::size_t total = 0;
  double coherent_fraction = 0.0;
  double rand_index = 0.0;  // over coherent instances: cluster vs function
  double accuracy = 0.0;    // rand_index * coherent_fraction
};

// instance_cluster[i] is the cluster holding every node of instance i, or
// -1 when its nodes are split.
inline CoherenceResult coherence_from_labels(const std::vector<int>& instance_cluster,
                                             const std::vector<std::string>& function) {
  if (instance_cluster.size() != function.size())
    throw DomainError("one function label per instance required");
  CoherenceResult r;
  r.total = function.size();
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < instance_cluster.size(); ++i)
    if (instance_cluster[i] >= 0) ok.push_back(i);
  r.coherent = ok.size();
  if (r.total == 0 || r.coherent == 0) return r;
  r.coherent_fraction = static_cast<double>(r.coherent) / static_cast<double>(r.total);
  double agree = 0.0, pairs = 0.0;
  for (std::size_t x = 0; x < ok.size(); ++x)
    for (std::size_t y = x + 1; y < ok.size(); ++y) {
      const bool same_c = instance_cluster[ok[x]] == instance_cluster[ok[y]];
      const bool same_f = function[ok[x]] == function[ok[y]];
      agree += same_c == same_f ? 1.0 : 0.0;
      pairs += 1.0;
    }
  r.rand_index = pairs > 0.0 ? agree / pairs : 1.0;
  r.accuracy = r.rand_index * r.coherent_fraction;
  return r;
}

inline CoherenceResult coherence_accuracy(const Partition& pred,
                                          const std::vector<LabeledInstance>& instances) {
  std::vector<int> cl;
  std::vector<std::string> fn;
  for (const auto& inst : instances) {
    int c = -1;
    bool same = !inst.nodes.empty();
    for (NodeId u : inst.nodes) {
      if (u >= pred.assignment.size()) throw DomainError("instance node out of range");
      const int a = pred.assignment[u];
      if (a < 0 || (c >= 0 && a != c)) same = false;
      c = a;
    }
    cl.push_back(same ? c : -1);
    fn.push_back(inst.function);
  }
  return coherence_from_labels(cl, fn);
}

}  // namespace motifclust
