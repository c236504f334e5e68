#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "motifclust/clustering.hpp"
#include "motifclust/errors.hpp"
#include "motifclust/graph.hpp"
#include "motifclust/metrics.hpp"
#include "motifclust/motif_adjacency.hpp"
#include "motifclust/spectral.hpp"

// Text formats written and read back by the command-line tool. Every file
// is keyed by node label; dense ids appear only in coordinate exports,
// next to a label map.

namespace motifclust {

namespace detail {

template <class F>
void for_data_lines(std::istream& in, F&& f) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    f(line_no, line, toks);
  }
}

inline double parse_double(std::string_view t, std::size_t line_no) {
  double x = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x);
  if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
    throw ParseError(line_no, "bad number '" + std::string(t) + "'");
  return x;
}

template <class Int>
Int parse_int(std::string_view t, std::size_t line_no) {
  Int x{};
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x);
  if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
    throw ParseError(line_no, "bad integer '" + std::string(t) + "'");
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Partitions: `node<TAB>cluster`, header line, covered nodes in id order.
// Truth files use the same layout; their class tokens may be any word.

struct LabeledPartition {
  std::vector<std::string> nodes;
  std::vector<std::string> classes;
};

inline void write_partition(std::ostream& out, const DirectedGraph& g, const Partition& p) {
  out << "node\tcluster\n";
  for (NodeId u = 0; u < p.assignment.size(); ++u)
    if (p.assignment[u] >= 0) out << g.label(u) << '\t' << p.assignment[u] << '\n';
}

inline LabeledPartition read_partition(std::istream& in) {
  LabeledPartition lp;
  std::unordered_map<std::string, std::size_t> seen;
  bool header = true;
  detail::for_data_lines(in, [&](std::size_t ln, const std::string&, const auto& toks) {
    if (header && toks.size() == 2 && toks[0] == "node" && toks[1] == "cluster") {
      header = false;
      return;
    }
    header = false;
    if (toks.size() != 2) throw ParseError(ln, "expected `node cluster`");
    if (!seen.emplace(std::string(toks[0]), ln).second)
      throw ParseError(ln, "node '" + std::string(toks[0]) + "' listed twice");
    lp.nodes.emplace_back(toks[0]);
    lp.classes.emplace_back(toks[1]);
  });
  return lp;
}

// Aligns two labeled partitions by node label and scores pred against
// truth. Nodes present in only one file are reported by label.
inline QualityScores score_labeled(const LabeledPartition& pred, const LabeledPartition& truth) {
  std::map<std::string, std::pair<int, int>> joint;  // label -> (pred, truth) class ids
  auto intern = [](std::map<std::string, int>& ids, const std::string& c) {
    return ids.emplace(c, static_cast<int>(ids.size())).first->second;
  };
  std::map<std::string, int> pid, tid;
  for (std::size_t i = 0; i < pred.nodes.size(); ++i)
    joint[pred.nodes[i]] = {intern(pid, pred.classes[i]), -1};
  for (std::size_t i = 0; i < truth.nodes.size(); ++i) {
    auto [it, fresh] = joint.try_emplace(truth.nodes[i], std::pair{-1, 0});
    it->second.second = intern(tid, truth.classes[i]);
  }
  std::vector<std::string> only;
  std::vector<int> a, b;
  for (const auto& [label, pt] : joint) {
    if (pt.first < 0 || pt.second < 0) only.push_back(label + (pt.first < 0 ? " (truth only)" : " (pred only)"));
    a.push_back(pt.first);
    b.push_back(pt.second);
  }
  if (!only.empty()) {
    std::string msg = "partitions cover different nodes:";
    for (std::size_t i = 0; i < only.size() && i < 20; ++i) msg += " " + only[i];
    if (only.size() > 20) msg += " ... (" + std::to_string(only.size()) + " total)";
    throw DomainError(msg);
  }
  return score_labels(a, b);
}

// ---------------------------------------------------------------------------
// Motif instances with a function label: tab-separated, node labels first,
// the function in the last field. `ids` maps labels to node ids; labels it
// lacks are appended with fresh ids.

inline std::vector<LabeledInstance> read_labeled_instances(
    std::istream& in, std::unordered_map<std::string, NodeId>& ids) {
  std::vector<LabeledInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
      if (i == line.size() || line[i] == '\t') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    if (f.size() < 3) throw ParseError(line_no, "expected at least two nodes and a function");
    LabeledInstance li;
    li.function = f.back();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      if (f[i].empty()) throw ParseError(line_no, "empty node field");
      li.nodes.push_back(ids.emplace(f[i], static_cast<NodeId>(ids.size())).first->second);
    }
    out.push_back(std::move(li));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep profile: `r,phi` for r = 1 .. n-1.

inline void write_profile(std::ostream& out, const SweepResult& r) {
  out << "r,phi\n";
  for (std::size_t i = 0; i < r.profile.size(); ++i)
    out << i + 1 << ',' << format_double(r.profile[i]) << '\n';
}

inline std::vector<double> read_profile(std::istream& in) {
  std::vector<double> phi;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "r,phi") throw ParseError(1, "expected header `r,phi`");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected `r,phi`");
    const auto r = detail::parse_int<std::size_t>(std::string_view(line).substr(0, comma), line_no);
    if (r != phi.size() + 1) throw ParseError(line_no, "prefix sizes must run 1, 2, ...");
    phi.push_back(detail::parse_double(std::string_view(line).substr(comma + 1), line_no));
  }
  return phi;
}

// One node label per line.
inline void write_node_list(std::ostream& out, const DirectedGraph& g, std::span<const NodeId> nodes) {
  for (NodeId u : nodes) out << g.label(u) << '\n';
}

inline std::vector<std::string> read_node_list(std::istream& in) {
  std::vector<std::string> out;
  detail::for_data_lines(in, [&](std::size_t ln, const std::string&, const auto& toks) {
    if (toks.size() != 1) throw ParseError(ln, "expected one node label per line");
    out.emplace_back(toks[0]);
  });
  return out;
}

// `id<TAB>label`, accompanying a coordinate export.
inline void write_label_map(std::ostream& out, const DirectedGraph& g) {
  out << "id\tlabel\n";
  for (NodeId u = 0; u < g.node_count(); ++u) out << u << '\t' << g.label(u) << '\n';
}

inline std::vector<std::string> read_label_map(std::istream& in) {
  std::vector<std::string> labels;
  bool header = true;
  detail::for_data_lines(in, [&](std::size_t ln, const std::string&, const auto& toks) {
    if (header && toks.size() == 2 && toks[0] == "id" && toks[1] == "label") {
      header = false;
      return;
    }
    header = false;
    if (toks.size() != 2) throw ParseError(ln, "expected `id label`");
    if (detail::parse_int<std::size_t>(toks[0], ln) != labels.size())
      throw ParseError(ln, "ids must run 0, 1, ...");
    labels.emplace_back(toks[1]);
  });
  return labels;
}

// Embedding rows: `node<TAB>y1<TAB>...<TAB>yk`, rows following `nodes`.
inline void write_embedding(std::ostream& out, const DirectedGraph& g, std::span<const NodeId> nodes,
                            const SpectralEmbedding& e) {
  out << "node";
  for (std::size_t c = 0; c < e.k; ++c) out << "\ty" << c + 1;
  out << '\n';
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << g.label(nodes[i]);
    for (std::size_t c = 0; c < e.k; ++c) out << '\t' << format_double(e.y[i * e.k + c]);
    out << '\n';
  }
}

struct LabeledEmbedding {
  std::vector<std::string> nodes;
  std::size_t k = 0;
  std::vector<double> y;  // row-major
};

inline LabeledEmbedding read_embedding(std::istream& in) {
  LabeledEmbedding le;
  bool header = true;
  detail::for_data_lines(in, [&](std::size_t ln, const std::string&, const auto& toks) {
    if (header) {
      header = false;
      if (toks[0] != "node") throw ParseError(ln, "expected header starting with `node`");
      le.k = toks.size() - 1;
      return;
    }
    if (toks.size() != le.k + 1) throw ParseError(ln, "row width differs from header");
    le.nodes.emplace_back(toks[0]);
    for (std::size_t c = 1; c < toks.size(); ++c) le.y.push_back(detail::parse_double(toks[c], ln));
  });
  return le;
}

}  // namespace motifclust
