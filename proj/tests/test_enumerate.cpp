#include <gtest/gtest.h>

#include <map>

#include "motifclust/enumerate.hpp"
#include "motifclust/formula.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace motifclust;
using testing_support::from_pairs;
using testing_support::random_digraph;

namespace {

using InstanceSet = std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>>;

InstanceSet as_set(const std::vector<MotifInstance>& v) {
  InstanceSet s;
  for (const auto& i : v) s.emplace(i.nodes, i.anchors);
  return s;
}

std::map<std::pair<NodeId, NodeId>, double> as_map(const MotifAdjacency& w) {
  std::map<std::pair<NodeId, NodeId>, double> m;
  for (const auto& e : w.upper_entries()) m[{e.i, e.j}] = e.w;
  return m;
}

const std::vector<std::string> kTriads{"M1", "M2", "M3", "M4", "M5", "M6", "M7"};

}  // namespace

TEST(Triangles, CyclicTriad) {
  const auto g = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto inst = enumerate_triangles(g, named_motif("M1"));
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].nodes, (std::vector<NodeId>{0, 1, 2}));
}

TEST(Triangles, ReciprocalTriangle) {
  const auto g = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}, true);
  EXPECT_EQ(enumerate_triangles(g, named_motif("M4")).size(), 1u);
  EXPECT_EQ(enumerate_triangles(g, named_motif("M1")).size(), 0u);
}

TEST(Triangles, FeedForward) {
  const auto g = from_pairs(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(enumerate_triangles(g, named_motif("M5")).size(), 1u);
  EXPECT_EQ(enumerate_triangles(g, named_motif("M1")).size(), 0u);
}

TEST(Triangles, EachTriadTypeClassifiedOnce) {
  // every connected triangular triad appears as exactly one of M1..M7
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_digraph(18, 0.3, seed);
    std::map<std::vector<NodeId>, int> hits;
    for (const auto& name : kTriads)
      for (const auto& i : enumerate_triangles(g, named_motif(name))) ++hits[i.nodes];
    const auto tri = enumerate_kcliques(undirected_view(g), 3);
    EXPECT_EQ(hits.size(), tri.size());
    for (const auto& [nodes, c] : hits) EXPECT_EQ(c, 1);
  }
}

TEST(Triangles, AgreeWithGenericAndOracle) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = random_digraph(14, 0.1 + 0.02 * seed, seed);
    for (const auto& name : kTriads) {
      const auto s = named_motif(name);
      const auto tri = enumerate_triangles(g, s);
      EXPECT_EQ(as_set(tri), as_set(enumerate_generic(g, s))) << name << " seed " << seed;
      EXPECT_EQ(as_set(tri), oracle::instances(g, s)) << name << " seed " << seed;
      for (const auto& inst : tri) {
        std::vector<NodeId> v = inst.nodes;
        bool any = false;
        do any = any || matches_ordered(g, s, 0, v);
        while (std::next_permutation(v.begin(), v.end()));
        EXPECT_TRUE(any);
      }
    }
  }
}

TEST(Generic, MinimalBifan) {
  const auto g = from_pairs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const auto inst = enumerate_generic(g, named_motif("bifan"));
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].nodes, (std::vector<NodeId>{0, 1, 2, 3}));
}

TEST(Generic, AnchoredInstanceNeedsInducedMatch) {
  // a=0 b=1 c=2 d=3: a<->b, b->c, c->a forms the motif; a->d, b->d does not
  const auto g = from_pairs(4, {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {0, 3}, {1, 3}});
  MotifSpec s = named_motif("M2");
  s.anchors = {0, 1};
  s.name = "M2 anchored";
  const auto inst = enumerate_generic(g, s);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].nodes, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(inst[0].anchors, (std::vector<NodeId>{0, 1}));
}

TEST(Generic, SignFilter) {
  const auto ffl = parse_motif_literal("0++\n00+\n000\n");
  auto g = DirectedGraph::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}, true);
  EXPECT_EQ(enumerate_generic(g, ffl).size(), 1u);
  g = DirectedGraph::from_edges(3, {{0, 1, 1}, {0, 2, -1}, {1, 2, 1}}, true);
  EXPECT_EQ(enumerate_generic(g, ffl).size(), 0u);
  // unsigned spec ignores signs
  EXPECT_EQ(enumerate_generic(g, named_motif("M5")).size(), 1u);
}

TEST(Generic, CoherentFflUnion) {
  const auto s = named_motif("cffl");
  // incoherent sign combination (+,+,-) is rejected, coherent (-,-,+) accepted
  auto g = DirectedGraph::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, -1}}, true);
  EXPECT_TRUE(enumerate_generic(g, s).empty());
  g = DirectedGraph::from_edges(3, {{0, 1, -1}, {0, 2, -1}, {1, 2, 1}}, true);
  EXPECT_EQ(enumerate_generic(g, s).size(), 1u);
  EXPECT_EQ(enumerate_triangles(g, s).size(), 1u);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto h = testing_support::random_signed_digraph(12, 0.25, seed);
    EXPECT_EQ(as_set(enumerate_triangles(h, s)), oracle::instances(h, s));
    EXPECT_EQ(as_set(enumerate_generic(h, s)), oracle::instances(h, s));
  }
}

TEST(Generic, NodeColors) {
  auto s = named_motif("M8");
  s.colors = {1, -1, -1};
  const auto base = from_pairs(4, {{0, 1}, {0, 2}, {3, 1}, {3, 2}});
  const auto g = base.with_colors({1, 0, 0, 2});
  const auto inst = enumerate_generic(g, s);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].nodes, (std::vector<NodeId>{0, 1, 2}));
  // colorless graph: spec colors act as wildcards
  EXPECT_EQ(enumerate_generic(base, s).size(), 2u);
}

TEST(Generic, CapabilityLimit) {
  const auto g = from_pairs(3, {{0, 1}});
  EXPECT_THROW(enumerate_generic(g, named_motif("clique6")), CapabilityError);
}

TEST(Generic, MatchesOracleOnWedgesAndFourNodeMotifs) {
  std::vector<MotifSpec> specs;
  for (int i = 8; i <= 13; ++i) specs.push_back(named_motif("M" + std::to_string(i)));
  specs.push_back(named_motif("bifan"));
  specs.push_back(named_motif("semiclique"));
  specs.push_back(named_motif("Medge"));
  specs.push_back(parse_motif_literal("011\n101\n010\nanchors: 1,3\n"));
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto g = random_digraph(11, 0.15 + 0.02 * seed, 100 + seed);
    for (const auto& s : specs) {
      const auto inst = enumerate_generic(g, s);
      EXPECT_EQ(as_set(inst), oracle::instances(g, s)) << s.name << " seed " << seed;
      EXPECT_TRUE(std::is_sorted(inst.begin(), inst.end(), instance_less));
    }
  }
}

TEST(KCliques, CompleteGraph) {
  std::vector<std::pair<NodeId, NodeId>> ps;
  std::vector<Edge> es;
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = 0; v < 5; ++v)
      if (u != v) es.push_back({u, v});
  const auto k5 = DirectedGraph::from_edges(5, es);
  EXPECT_EQ(enumerate_kcliques(k5, 4).size(), 5u);
  EXPECT_EQ(enumerate_kcliques(k5, 5).size(), 1u);
  EXPECT_EQ(enumerate_kcliques(k5, 6).size(), 0u);
}

TEST(KCliques, PendantPrunedByCore) {
  const auto g = from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}, true);
  CliqueStats st;
  EXPECT_EQ(enumerate_kcliques(g, 4, true, &st).size(), 1u);
  EXPECT_EQ(st.core_nodes, 4u);
  EXPECT_EQ(st.touched_nodes, 4u);
  EXPECT_EQ(enumerate_kcliques(g, 4, false, &st).size(), 1u);
  EXPECT_EQ(st.touched_nodes, 5u);
}

TEST(KCliques, MatchBruteForceAndPruningInvariant) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = testing_support::random_undirected(20, 0.5, seed);
    for (std::size_t k = 3; k <= 6; ++k) {
      const auto pruned = enumerate_kcliques(g, k, true);
      EXPECT_EQ(pruned.size(), oracle::clique_count(g, k)) << "k=" << k;
      EXPECT_EQ(pruned, enumerate_kcliques(g, k, false));
    }
  }
}

TEST(KCliques, Rejections) {
  const auto g = from_pairs(3, {{0, 1}});
  EXPECT_THROW(enumerate_kcliques(g, 3), DomainError);  // not symmetric
  EXPECT_THROW(enumerate_kcliques(undirected_view(g), 2), DomainError);
  EXPECT_THROW(enumerate_kcliques(undirected_view(g), 10), DomainError);
}

TEST(BuildMotifAdjacency, CycleAndBifan) {
  auto w = build_motif_adjacency(from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}), named_motif("M1"));
  EXPECT_EQ(w.upper_entries(),
            (std::vector<WeightedPair>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}));
  w = build_motif_adjacency(from_pairs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}), named_motif("bifan"));
  EXPECT_EQ(w.upper_entries().size(), 6u);
  for (const auto& e : w.upper_entries()) EXPECT_EQ(e.w, 1.0);
  EXPECT_DOUBLE_EQ(w.degree(0), 3.0);
}

TEST(BuildMotifAdjacency, AnchoredTwoHopEqualsSquaredReciprocalMatrix) {
  const auto s = parse_motif_literal(
      "011\n101\n110\n\n011\n101\n010\n\n010\n101\n010\nanchors: 1,3\n", "two-hop");
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = random_digraph(16, 0.35, 7 + seed);
    const auto w = build_motif_adjacency(g, s);
    const auto split = split_edges(g);
    std::vector<std::vector<int>> S(16, std::vector<int>(16, 0));
    for (auto [a, b] : split.bidirectional) S[a][b] = S[b][a] = 1;
    for (NodeId i = 0; i < 16; ++i)
      for (NodeId j = 0; j < 16; ++j) {
        if (i == j) continue;
        int sq = 0;
        for (NodeId x = 0; x < 16; ++x) sq += S[i][x] * S[x][j];
        EXPECT_EQ(w.weight(i, j), sq) << i << "," << j;
      }
  }
}

TEST(BuildMotifAdjacency, MatchesOracleWeights) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_digraph(12, 0.3, 40 + seed);
    for (const char* name : {"M2", "M6", "M9", "bifan", "clique4", "semiclique"}) {
      const auto s = named_motif(name);
      EXPECT_EQ(as_map(build_motif_adjacency(g, s)), oracle::weights(oracle::instances(g, s)))
          << name;
    }
  }
}

TEST(BuildMotifAdjacency, MotifNodeIncidenceIdentity) {
  // off-diagonal W_M equals A_M^T A_M for simple motifs
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_digraph(15, 0.25, 300 + seed);
    for (const auto& name : kTriads) {
      const auto s = named_motif(name);
      const auto inst = motif_instances(g, s);
      std::vector<std::vector<int>> am(inst.size(), std::vector<int>(15, 0));
      for (std::size_t r = 0; r < inst.size(); ++r)
        for (NodeId u : inst[r].nodes) am[r][u] = 1;
      const auto w = build_motif_adjacency(g, s);
      for (NodeId i = 0; i < 15; ++i)
        for (NodeId j = 0; j < 15; ++j) {
          if (i == j) continue;
          int dot = 0;
          for (const auto& row : am) dot += row[i] * row[j];
          EXPECT_EQ(w.weight(i, j), dot);
        }
    }
  }
}

TEST(BuildMotifAdjacency, TriadNonzerosBoundedByInput) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_digraph(30, 0.2, 500 + seed);
    const auto undirected_nnz = undirected_view(g).edge_count();
    for (int i = 1; i <= 13; ++i) {
      const auto w = build_motif_adjacency(g, named_motif("M" + std::to_string(i)));
      if (i > 7) continue;
      EXPECT_LE(w.nnz(), undirected_nnz);
      for (const auto& e : w.upper_entries()) {
        EXPECT_TRUE(g.has_edge(e.i, e.j) || g.has_edge(e.j, e.i));
      }
    }
  }
}

TEST(BuildMotifAdjacency, ThreadBudgetDoesNotChangeResult) {
  const auto g = random_digraph(60, 0.15, 11);
  for (const char* name : {"M1", "M5", "M8", "bifan", "cffl"}) {
    const auto s = named_motif(name);
    const auto one = build_motif_adjacency(g, s);
    for (std::size_t t : {2u, 3u, 7u}) {
      BuildOptions opt;
      opt.threads = t;
      EXPECT_EQ(build_motif_adjacency(g, s, opt), one) << name;
      EXPECT_EQ(motif_instances(g, s, {t}), motif_instances(g, s)) << name;
    }
  }
}

TEST(BuildMotifAdjacency, InstanceWeights) {
  const auto g = from_pairs(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  BuildOptions opt;
  opt.weight = [](const MotifInstance& i) { return i.nodes.back() == 4 ? 2.5 : 1.0; };
  const auto w = build_motif_adjacency(g, named_motif("M1"), opt);
  EXPECT_DOUBLE_EQ(w.weight(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(w.weight(2, 3), 2.5);
  EXPECT_DOUBLE_EQ(w.degree(2), 7.0);
}

TEST(Formula, Examples) {
  const auto cyc = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(motif_adjacency_by_formula(cyc, named_motif("M1")).upper_entries(),
            (std::vector<WeightedPair>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}));
  const auto rec = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}, true);
  EXPECT_EQ(motif_adjacency_by_formula(rec, named_motif("M4")).upper_entries(),
            (std::vector<WeightedPair>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}));
  EXPECT_THROW(motif_adjacency_by_formula(rec, named_motif("M8")), DomainError);
}

TEST(Formula, EqualsEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_digraph(30, 0.2, 900 + seed);
    for (const auto& name : kTriads) {
      const auto s = named_motif(name);
      EXPECT_EQ(motif_adjacency_by_formula(g, s), build_motif_adjacency(g, s)) << name;
    }
  }
}

TEST(CombineWeighted, DirectedEdgeDecomposition) {
  const auto g = random_digraph(20, 0.2, 5);
  const auto w1 = build_motif_adjacency(g, parse_motif_literal("01\n00\n", "one-way"));
  const auto w2 = build_motif_adjacency(g, parse_motif_literal("01\n10\n", "mutual"));
  EXPECT_EQ(combine_weighted({{w1, 1.0}}), w1);
  const auto sym = combine_weighted({{w1, 1.0}, {w2, 2.0}});
  for (NodeId i = 0; i < 20; ++i)
    for (NodeId j = 0; j < 20; ++j) {
      if (i == j) continue;
      EXPECT_EQ(sym.weight(i, j), g.has_edge(i, j) + g.has_edge(j, i));
    }
  const auto un = combine_weighted({{w1, 1.0}, {w2, 1.0}});
  EXPECT_EQ(un, build_motif_adjacency(g, named_motif("Medge")));
  const auto view = undirected_view(g);
  for (NodeId i = 0; i < 20; ++i)
    for (NodeId j = 0; j < 20; ++j) {
      if (i == j) continue;
      EXPECT_EQ(un.weight(i, j), view.has_edge(i, j) ? 1.0 : 0.0);
    }
  EXPECT_THROW(combine_weighted({{w1, 1.0}, {MotifAdjacency(3), 1.0}}), DomainError);
  EXPECT_THROW(combine_weighted({{w1, -1.0}}), DomainError);
}
