#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "motifclust/errors.hpp"
#include "motifclust/graph.hpp"

namespace motifclust {

// k x k edge pattern, row-major. Entry (i, j) != 0 means an edge from
// position i to position j; -1/+1 carry the sign in signed patterns.
using Pattern = std::vector<std::int8_t>;

// A motif: one or more alternative patterns over k positions plus an anchor
// set. Instances are the distinct (node set, anchor node set) pairs of
// ordered node tuples whose induced subgraph equals one of the patterns.
//
// `undirected` patterns are matched against the undirected view of the
// graph. `signed_pattern` requires edge signs to agree; unsigned patterns
// ignore signs. `colors[i] >= 0` pins the node color at position i; -1 is a
// wildcard.
struct MotifSpec {
  std::size_t k = 0;
  std::vector<Pattern> patterns;
  std::vector<std::size_t> anchors;  // 0-based positions, ascending
  std::vector<int> colors;           // empty, or one entry per position
  bool undirected = false;
  bool signed_pattern = false;
  std::string name;

  std::int8_t entry(std::size_t p, std::size_t i, std::size_t j) const {
    return patterns[p][i * k + j];
  }
  bool is_simple() const { return anchors.size() == k; }

  // k = 3 and all three position pairs are joined in every pattern.
  bool is_triangular() const {
    if (k != 3) return false;
    for (std::size_t p = 0; p < patterns.size(); ++p)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          if (entry(p, i, j) == 0 && entry(p, j, i) == 0) return false;
    return true;
  }

  // Undirected, single pattern with every pair joined.
  bool is_clique() const {
    if (!undirected || patterns.size() != 1) return false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && entry(0, i, j) == 0) return false;
    return true;
  }

  bool has_colors() const {
    return std::any_of(colors.begin(), colors.end(), [](int c) { return c >= 0; });
  }

  // Throws DomainError when an invariant is broken.
  void validate() const {
    if (k < 2) throw DomainError("motif needs at least 2 nodes");
    if (patterns.empty()) throw DomainError("motif has no pattern");
    if (anchors.size() < 2) throw DomainError("motif needs at least 2 anchors");
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      if (anchors[a] >= k) throw DomainError("anchor position out of range");
      if (a > 0 && anchors[a] <= anchors[a - 1])
        throw DomainError("anchors must be ascending and distinct");
    }
    if (!colors.empty() && colors.size() != k)
      throw DomainError("motif colors must cover every position");
    for (const Pattern& pat : patterns) {
      if (pat.size() != k * k) throw DomainError("pattern is not k x k");
      for (std::size_t i = 0; i < k; ++i) {
        if (pat[i * k + i] != 0) throw DomainError("pattern diagonal must be zero");
        for (std::size_t j = 0; j < k; ++j) {
          const int e = pat[i * k + j];
          if (e < -1 || e > 1) throw DomainError("pattern entries must be 0, +1 or -1");
          if (undirected && (e < 0 || e != pat[j * k + i]))
            throw DomainError("undirected pattern must be symmetric 0/1");
        }
      }
      // connected undirected support
      std::vector<bool> seen(k, false);
      std::vector<std::size_t> stack{0};
      seen[0] = true;
      std::size_t reached = 1;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < k; ++v) {
          if (!seen[v] && (pat[u * k + v] != 0 || pat[v * k + u] != 0)) {
            seen[v] = true;
            ++reached;
            stack.push_back(v);
          }
        }
      }
      if (reached != k) throw DomainError("pattern support must be connected");
    }
  }
};

struct MotifInstance {
  std::vector<NodeId> nodes;    // ascending
  std::vector<NodeId> anchors;  // ascending, subset of nodes
  double weight = 1.0;

  friend bool operator==(const MotifInstance&, const MotifInstance&) = default;
};

inline bool instance_less(const MotifInstance& a, const MotifInstance& b) {
  return a.nodes != b.nodes ? a.nodes < b.nodes : a.anchors < b.anchors;
}

// True when the subgraph of g induced on the ordered tuple `v` equals
// pattern `p` of `spec`, including sign and color constraints.
inline bool matches_ordered(const DirectedGraph& g, const MotifSpec& spec, std::size_t p,
                            std::span<const NodeId> v) {
  const std::size_t k = spec.k;
  if (!spec.colors.empty() && g.has_colors()) {
    for (std::size_t i = 0; i < k; ++i)
      if (spec.colors[i] >= 0 && g.color(v[i]) != spec.colors[i]) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (v[i] == v[j]) return false;
      const int want = spec.entry(p, i, j);
      if (spec.undirected) {
        if (j < i) continue;
        const bool have = g.has_edge(v[i], v[j]) || g.has_edge(v[j], v[i]);
        if (have != (want != 0)) return false;
      } else {
        const int have = g.sign(v[i], v[j]);
        if ((have != 0) != (want != 0)) return false;
        if (want != 0 && spec.signed_pattern && have != want) return false;
      }
    }
  }
  return true;
}

// Rebuilds the instance's (set(v), set(chi_A(v))) from an ordered tuple.
inline MotifInstance make_instance(const MotifSpec& spec, std::span<const NodeId> v,
                                   double weight = 1.0) {
  MotifInstance inst;
  inst.nodes.assign(v.begin(), v.end());
  std::sort(inst.nodes.begin(), inst.nodes.end());
  for (std::size_t a : spec.anchors) inst.anchors.push_back(v[a]);
  std::sort(inst.anchors.begin(), inst.anchors.end());
  inst.weight = weight;
  return inst;
}

// ---------------------------------------------------------------------------
// Catalogue

namespace detail {

// Builds a k-node pattern from a list of directed edges (1-based positions);
// `mutual` lists reciprocal pairs.
inline Pattern make_pattern(std::size_t k, std::initializer_list<std::array<int, 2>> one_way,
                            std::initializer_list<std::array<int, 2>> mutual = {}) {
  Pattern p(k * k, 0);
  for (auto [a, b] : one_way) p[(a - 1) * k + (b - 1)] = 1;
  for (auto [a, b] : mutual) {
    p[(a - 1) * k + (b - 1)] = 1;
    p[(b - 1) * k + (a - 1)] = 1;
  }
  return p;
}

inline MotifSpec simple_spec(std::string name, std::size_t k, std::vector<Pattern> patterns) {
  MotifSpec s;
  s.k = k;
  s.patterns = std::move(patterns);
  s.anchors.resize(k);
  std::iota(s.anchors.begin(), s.anchors.end(), std::size_t{0});
  s.name = std::move(name);
  return s;
}

inline MotifSpec clique_spec(std::size_t k) {
  Pattern p(k * k, 1);
  for (std::size_t i = 0; i < k; ++i) p[i * k + i] = 0;
  MotifSpec s = simple_spec("clique" + std::to_string(k), k, {p});
  s.undirected = true;
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

inline std::vector<std::string> available_motifs() {
  std::vector<std::string> names;
  for (int i = 1; i <= 13; ++i) names.push_back("M" + std::to_string(i));
  names.insert(names.end(), {"Medge", "bifan", "semiclique", "cffl"});
  for (int k = 3; k <= 9; ++k) names.push_back("clique" + std::to_string(k));
  return names;
}

// Canonical motifs. M1-M7 are the triangular triads, M8-M13 the open
// wedges; all are simple. Medge is the union of the one-way and the
// reciprocal edge. cffl is the union of the four coherent feed-forward
// loop sign patterns. semiclique is the undirected 4-clique minus one edge.
inline MotifSpec named_motif(std::string_view name) {
  using detail::make_pattern;
  using detail::simple_spec;
  const std::string key = detail::lower(name);
  MotifSpec s;
  if (key == "m1") {
    s = simple_spec("M1", 3, {make_pattern(3, {{1, 2}, {2, 3}, {3, 1}})});
  } else if (key == "m2") {
    s = simple_spec("M2", 3, {make_pattern(3, {{2, 3}, {3, 1}}, {{1, 2}})});
  } else if (key == "m3") {
    s = simple_spec("M3", 3, {make_pattern(3, {{1, 3}}, {{1, 2}, {2, 3}})});
  } else if (key == "m4") {
    s = simple_spec("M4", 3, {make_pattern(3, {}, {{1, 2}, {2, 3}, {1, 3}})});
  } else if (key == "m5") {
    s = simple_spec("M5", 3, {make_pattern(3, {{1, 2}, {1, 3}, {2, 3}})});
  } else if (key == "m6") {
    s = simple_spec("M6", 3, {make_pattern(3, {{1, 2}, {1, 3}}, {{2, 3}})});
  } else if (key == "m7") {
    s = simple_spec("M7", 3, {make_pattern(3, {{2, 1}, {3, 1}}, {{2, 3}})});
  } else if (key == "m8") {
    s = simple_spec("M8", 3, {make_pattern(3, {{1, 2}, {1, 3}})});
  } else if (key == "m9") {
    s = simple_spec("M9", 3, {make_pattern(3, {{2, 1}, {1, 3}})});
  } else if (key == "m10") {
    s = simple_spec("M10", 3, {make_pattern(3, {{2, 1}, {3, 1}})});
  } else if (key == "m11") {
    s = simple_spec("M11", 3, {make_pattern(3, {{1, 3}}, {{1, 2}})});
  } else if (key == "m12") {
    s = simple_spec("M12", 3, {make_pattern(3, {{3, 1}}, {{1, 2}})});
  } else if (key == "m13") {
    s = simple_spec("M13", 3, {make_pattern(3, {}, {{1, 2}, {1, 3}})});
  } else if (key == "medge" || key == "m_edge" || key == "edge") {
    s = simple_spec("Medge", 2, {make_pattern(2, {{1, 2}}), make_pattern(2, {}, {{1, 2}})});
  } else if (key == "bifan") {
    s = simple_spec("bifan", 4, {make_pattern(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}})});
  } else if (key == "semiclique") {
    s = simple_spec("semiclique", 4,
                    {make_pattern(4, {}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}})});
    s.undirected = true;
  } else if (key == "cffl") {
    // rows: source, intermediate, target; entries (1,2), (1,3), (2,3)
    auto ffl = [](int s12, int s13, int s23) {
      Pattern p(9, 0);
      p[0 * 3 + 1] = static_cast<std::int8_t>(s12);
      p[0 * 3 + 2] = static_cast<std::int8_t>(s13);
      p[1 * 3 + 2] = static_cast<std::int8_t>(s23);
      return p;
    };
    s = simple_spec("cffl", 3,
                    {ffl(+1, +1, +1), ffl(-1, -1, +1), ffl(+1, -1, -1), ffl(-1, +1, -1)});
    s.signed_pattern = true;
  } else if (key.size() == 7 && key.starts_with("clique") && key[6] >= '3' && key[6] <= '9') {
    s = detail::clique_spec(static_cast<std::size_t>(key[6] - '0'));
  } else {
    std::string msg = "unknown motif '" + std::string(name) + "'; available:";
    for (const auto& n : available_motifs()) msg += " " + n;
    throw DomainError(msg);
  }
  s.validate();
  return s;
}

// Custom motif literal: k lines of k characters from {0,1,+,-}; further
// blank-line separated blocks add alternative patterns. Optional trailing
// lines `anchors: 1,3` (1-based; default all positions), `colors: 2,*,1`
// and `undirected`. Any '+' or '-' makes the motif signed.
inline MotifSpec parse_motif_literal(std::istream& in, std::string name = "custom") {
  MotifSpec s;
  s.name = std::move(name);
  std::vector<std::string> block;
  std::size_t line_no = 0;
  std::string raw;

  auto flush = [&]() {
    if (block.empty()) return;
    const std::size_t k = block.size();
    if (s.k == 0) s.k = k;
    if (k != s.k) throw ParseError(line_no, "all pattern blocks must have the same size");
    Pattern p(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (block[i].size() != k)
        throw ParseError(line_no, "pattern row " + std::to_string(i + 1) + " must have " +
                                      std::to_string(k) + " characters");
      for (std::size_t j = 0; j < k; ++j) {
        switch (block[i][j]) {
          case '0': break;
          case '1': p[i * k + j] = 1; break;
          case '+': p[i * k + j] = 1; s.signed_pattern = true; break;
          case '-': p[i * k + j] = -1; s.signed_pattern = true; break;
          default:
            throw ParseError(line_no, std::string("invalid pattern character '") + block[i][j] + "'");
        }
      }
    }
    s.patterns.push_back(std::move(p));
    block.clear();
  };

  auto parse_list = [&](std::string_view body, auto&& on_item) {
    std::string item;
    std::istringstream ss{std::string(body)};
    while (std::getline(ss, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 item.end());
      if (!item.empty()) on_item(item);
    }
  };

  std::vector<std::size_t> anchors;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    line.erase(std::remove_if(line.begin(), line.end(),
                              [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; }),
               line.end());
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) {
      flush();
      continue;
    }
    const std::string low = detail::lower(line);
    if (low.starts_with("anchors:")) {
      flush();
      parse_list(std::string_view(line).substr(8), [&](const std::string& item) {
        try {
          const long a = std::stol(item);
          if (a < 1) throw ParseError(line_no, "anchor positions are 1-based");
          anchors.push_back(static_cast<std::size_t>(a - 1));
        } catch (const std::logic_error&) {
          throw ParseError(line_no, "bad anchor '" + item + "'");
        }
      });
    } else if (low.starts_with("colors:")) {
      flush();
      parse_list(std::string_view(line).substr(7), [&](const std::string& item) {
        if (item == "*") {
          s.colors.push_back(-1);
        } else {
          try {
            s.colors.push_back(std::stoi(item));
          } catch (const std::logic_error&) {
            throw ParseError(line_no, "bad color '" + item + "'");
          }
        }
      });
    } else if (low == "undirected") {
      flush();
      s.undirected = true;
    } else {
      block.push_back(line);
    }
  }
  flush();
  if (s.patterns.empty()) throw ParseError(0, "motif literal has no pattern");
  if (anchors.empty()) {
    anchors.resize(s.k);
    std::iota(anchors.begin(), anchors.end(), std::size_t{0});
  }
  std::sort(anchors.begin(), anchors.end());
  s.anchors = std::move(anchors);
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
  return s;
}

inline MotifSpec parse_motif_literal(std::string_view text, std::string name = "custom") {
  std::istringstream in{std::string(text)};
  return parse_motif_literal(in, std::move(name));
}

}  // namespace motifclust
