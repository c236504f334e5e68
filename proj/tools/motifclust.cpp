// motifclust: motif adjacency, spectral clustering and certification from
// the command line.
//
//   motifclust motifs list
//   motifclust build-wm --input g.txt --motif M6 --out dir
//   motifclust cluster  --input g.txt --motif M6 --method sweep --out dir
//   motifclust certify  --input g.txt --motif M1 [--max-n 20] [--lower-only]
//   motifclust score    --pred p.tsv --truth t.tsv [--instances i.tsv]
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 eigensolver did not converge.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "motifclust/motifclust.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace motifclust;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string motif = "M1";
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-4;
  std::size_t k = 2;
  std::string method = "sweep";
  std::size_t kmeans_iters = 100;
  std::size_t threads = 1;
  bool signed_edges = false;
  bool weighted = false;
  bool undirected = false;
  // certify
  std::size_t max_n = 20;
  bool lower_only = false;
  // score
  std::string pred, truth, instances;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("MOTIFCLUST_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring MOTIFCLUST_THREADS='" << env << "'\n";
  }
  return 1;
}

void check_common(const Config& c) {
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.threads < 1) throw UsageError("--threads must be at least 1");
}

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string(what) + " is required");
  if (!fs::is_regular_file(path)) throw Error(std::string(what) + " '" + path + "' is not a readable file");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

DirectedGraph load_graph(const Config& c) {
  auto in = open_input(c.input, "--input");
  ParseOptions po;
  po.directed = !c.undirected;
  po.signed_edges = c.signed_edges;
  po.weighted = c.weighted;
  return parse_edge_list(in, po);
}

MotifSpec load_motif(const Config& c) {
  if (fs::is_regular_file(c.motif)) {
    std::ifstream in(c.motif);
    return parse_motif_literal(in, fs::path(c.motif).stem().string());
  }
  try {
    return named_motif(c.motif);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

fs::path prepare_out(const Config& c, bool required) {
  if (c.out.empty()) {
    if (required) throw UsageError("--out is required");
    return {};
  }
  fs::create_directories(c.out);
  return fs::path(c.out);
}

template <class F>
void write_file(const fs::path& p, F&& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  body(out);
  if (!out) throw Error("write failed for " + p.string());
}

void emit(const json& report, const fs::path& dir, const char* name) {
  const std::string text = report.dump(2) + "\n";
  if (!dir.empty()) write_file(dir / name, [&](std::ostream& o) { o << text; });
  std::cout << text;
}

json labels_of(const DirectedGraph& g, std::span<const NodeId> nodes) {
  json a = json::array();
  for (NodeId u : nodes) a.push_back(g.label(u));
  return a;
}

json component_summary(const ComponentMap& cm) {
  json sizes = json::array();
  std::size_t isolated = 0;
  for (std::size_t s : cm.sizes) {
    if (s >= 2) sizes.push_back(s);
    else ++isolated;
  }
  json j;
  j["sizes"] = sizes;
  j["isolated"] = isolated;
  j["largest"] = cm.count() ? cm.sizes[0] : 0;
  return j;
}

json motif_json(const MotifSpec& s) {
  json j;
  j["name"] = s.name;
  j["k"] = s.k;
  j["anchors"] = s.anchors.size();
  j["patterns"] = s.patterns.size();
  return j;
}

SpectralOptions spectral_options(const Config& c) {
  SpectralOptions o;
  o.tol = c.tol;
  o.seed = c.seed;
  return o;
}

// ---------------------------------------------------------------------------

int cmd_motifs_list() {
  for (const auto& name : available_motifs()) {
    const auto s = named_motif(name);
    std::cout << name << "\tk=" << s.k << "\tanchors=" << s.anchors.size()
              << "\tpatterns=" << s.patterns.size() << (s.undirected ? "\tundirected" : "")
              << (s.signed_pattern ? "\tsigned" : "") << '\n';
  }
  return 0;
}

int cmd_build_wm(const Config& c) {
  check_common(c);
  const auto dir = prepare_out(c, true);
  const auto g = load_graph(c);
  const auto spec = load_motif(c);
  const auto inst = motif_instances(g, spec, {c.threads});
  const auto w = motif_adjacency_from_instances(g.node_count(), inst);
  const auto split = split_edges(g);

  write_file(dir / "wm.txt", [&](std::ostream& o) { write_coordinates(o, w); });
  write_file(dir / "labels.tsv", [&](std::ostream& o) { write_label_map(o, g); });

  json r;
  r["motif"] = motif_json(spec);
  r["nodes"] = g.node_count();
  r["edges"] = g.edge_count();
  r["unidirectional_edges"] = split.unidirectional.size();
  r["bidirectional_pairs"] = split.bidirectional.size();
  r["instances"] = inst.size();
  r["wm_pairs"] = w.nnz() / 2;
  r["wm_total_weight"] = w.total_volume() / 2.0;
  r["active_nodes"] = active_nodes(w).size();
  r["components"] = component_summary(connected_components(w));
  emit(r, dir, "summary.json");
  return 0;
}

int cmd_cluster(const Config& c) {
  check_common(c);
  if (c.method != "sweep" && c.method != "recursive" && c.method != "embed-kmeans")
    throw UsageError("--method must be sweep, recursive or embed-kmeans");
  if (c.k < 1) throw UsageError("--k must be at least 1");
  if (c.method == "recursive" && c.k < 2) throw UsageError("recursive bipartition needs --k >= 2");
  if (c.kmeans_iters < 1) throw UsageError("--kmeans-iters must be at least 1");
  const auto dir = prepare_out(c, true);
  const auto g = load_graph(c);
  const auto spec = load_motif(c);
  const auto inst = motif_instances(g, spec, {c.threads});
  const auto w = motif_adjacency_from_instances(g.node_count(), inst);
  const auto opt = spectral_options(c);

  json r;
  r["motif"] = motif_json(spec);
  r["method"] = c.method;
  r["nodes"] = g.node_count();
  r["instances"] = inst.size();
  const auto cm = connected_components(w);
  r["components"] = component_summary(cm);

  Partition part;
  if (c.method == "sweep") {
    const auto cs = sweep_largest_component(w, opt);
    // cluster 0 is the sweep set, 1 the rest of its component
    part.assignment.assign(g.node_count(), -1);
    part.k = 2;
    for (NodeId u : cs.component) part.assignment[u] = 1;
    for (NodeId u : cs.best_set) part.assignment[u] = 0;

    r["component_size"] = cs.component.size();
    r["lambda2"] = cs.fiedler.lambda2;
    r["lower_bound"] = cs.fiedler.lambda2 / 2.0;
    r["eigen_residual"] = cs.fiedler.residual;
    r["best_phi"] = cs.sweep.best_phi;
    r["best_prefix"] = cs.sweep.best_prefix;
    r["motif_conductance"] = motif_conductance_exact(inst, g.node_count(), cs.best_set);
    r["cluster_size"] = cs.best_set.size();
    r["cluster"] = labels_of(g, cs.best_set);
    write_file(dir / "profile.csv", [&](std::ostream& o) { write_profile(o, cs.sweep); });
    write_file(dir / "best_set.txt", [&](std::ostream& o) { write_node_list(o, g, cs.best_set); });
  } else if (c.method == "recursive") {
    std::vector<std::string> warnings;
    part = recursive_bipartition(w, c.k, opt, &warnings);
    r["k"] = c.k;
    r["warnings"] = warnings;
  } else {
    const auto res = embed_kmeans_detailed(w, c.k, c.kmeans_iters, c.seed, opt);
    part = res.partition;
    r["k"] = c.k;
    r["kmeans_iters"] = c.kmeans_iters;
    r["inertia"] = res.inertia;
    r["eigenvalues"] = res.embedding.eigenvalues;
    if (c.k > 1)
      write_file(dir / "embedding.tsv", [&](std::ostream& o) { write_embedding(o, g, res.nodes, res.embedding); });
  }
  json sizes = json::array();
  for (const auto& cl : part.clusters()) sizes.push_back(cl.size());
  r["cluster_sizes"] = sizes;
  write_file(dir / "partition.tsv", [&](std::ostream& o) { write_partition(o, g, part); });
  emit(r, dir, "report.json");
  return 0;
}

int cmd_certify(const Config& c) {
  check_common(c);
  const auto dir = prepare_out(c, false);
  const auto g = load_graph(c);
  const auto spec = load_motif(c);
  CertifyOptions co;
  co.max_n = c.max_n;
  co.allow_lower_only = c.lower_only;
  co.spectral = spectral_options(c);
  CheegerReport rep;
  try {
    rep = cheeger_certify(g, spec, co);
  } catch (const CapabilityError& e) {
    throw CapabilityError(std::string(e.what()) + " (pass --lower-only or raise --max-n)");
  }
  json r;
  r["motif"] = motif_json(spec);
  r["component_size"] = rep.component.size();
  r["lambda2"] = rep.lambda2;
  r["lower_bound"] = rep.lower_bound;
  r["phi_alg"] = rep.phi_alg;
  r["sweep_set"] = labels_of(g, rep.sweep_set);
  r["sweep_above_bound"] = rep.sweep_above_bound;
  r["lower_only"] = rep.lower_only;
  if (rep.phi_star) {
    r["phi_star"] = *rep.phi_star;
    r["upper_bound"] = 4.0 * std::sqrt(*rep.phi_star);
    r["witness_set"] = labels_of(g, rep.witness_set);
    r["upper_ok"] = *rep.upper_ok;
    r["lower_ok"] = *rep.lower_ok;
  }
  emit(r, dir, "certificate.json");
  return 0;
}

int cmd_score(const Config& c) {
  const auto dir = prepare_out(c, false);
  auto pin = open_input(c.pred, "--pred");
  auto tin = open_input(c.truth, "--truth");
  const auto pred = read_partition(pin);
  const auto truth = read_partition(tin);
  const auto q = score_labeled(pred, truth);
  json r;
  r["n"] = q.n;
  r["ari"] = q.ari;
  r["f1"] = q.f1;
  r["nmi"] = q.nmi;
  r["purity"] = q.purity;
  if (!c.instances.empty()) {
    auto iin = open_input(c.instances, "--instances");
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> cls;
    for (std::size_t i = 0; i < pred.nodes.size(); ++i) {
      ids.emplace(pred.nodes[i], static_cast<NodeId>(i));
      cls.push_back(pred.classes[i]);
    }
    const auto inst = read_labeled_instances(iin, ids);
    std::map<std::string, int> cid;
    std::vector<int> raw(ids.size(), -1);
    for (std::size_t i = 0; i < cls.size(); ++i)
      raw[i] = cid.emplace(cls[i], static_cast<int>(cid.size())).first->second;
    const auto coh = coherence_accuracy(canonical_partition(raw), inst);
    json j;
    j["coherent"] = coh.coherent;
    j["total"] = coh.total;
    j["coherent_fraction"] = coh.coherent_fraction;
    j["rand_index"] = coh.rand_index;
    j["accuracy"] = coh.accuracy;
    r["coherence"] = j;
  }
  emit(r, dir, "scores.json");
  return 0;
}

void add_graph_options(CLI::App* sub, Config& c) {
  sub->add_option("--input,-i", c.input, "edge list: `src dst [sign] [weight]` per line");
  sub->add_option("--motif,-m", c.motif, "motif name (see `motifs list`) or pattern file")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for eigensolver start and k-means")->capture_default_str();
  sub->add_option("--tol", c.tol, "eigen residual tolerance")->capture_default_str();
  sub->add_option("--threads", c.threads, "thread budget (default: $MOTIFCLUST_THREADS or 1)");
  sub->add_flag("--signed", c.signed_edges, "third column holds an edge sign");
  sub->add_flag("--weighted", c.weighted, "last column holds an edge weight");
  sub->add_flag("--undirected", c.undirected, "each line adds both directions");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motif-based spectral clustering"};
  app.require_subcommand(1);
  Config c;
  c.threads = default_threads();

  auto* motifs = app.add_subcommand("motifs", "inspect the motif library");
  auto* list = motifs->add_subcommand("list", "print the built-in motifs");
  motifs->require_subcommand(1);

  auto* build = app.add_subcommand("build-wm", "write the motif adjacency matrix and a summary");
  add_graph_options(build, c);
  build->add_option("--out,-o", c.out, "output directory");

  auto* cluster = app.add_subcommand("cluster", "cluster the motif adjacency matrix");
  add_graph_options(cluster, c);
  cluster->add_option("--out,-o", c.out, "output directory");
  cluster->add_option("--method", c.method, "sweep, recursive or embed-kmeans")->capture_default_str();
  cluster->add_option("--k", c.k, "number of clusters (recursive, embed-kmeans)")->capture_default_str();
  cluster->add_option("--kmeans-iters", c.kmeans_iters, "k-means restarts")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "check the sweep against the exact optimum");
  add_graph_options(certify, c);
  certify->add_option("--out,-o", c.out, "output directory");
  certify->add_option("--max-n", c.max_n, "largest component searched exhaustively")->capture_default_str();
  certify->add_flag("--lower-only", c.lower_only, "report only the spectral lower bound when too large");

  auto* score = app.add_subcommand("score", "compare a partition with a reference");
  score->add_option("--pred", c.pred, "partition TSV")->required();
  score->add_option("--truth", c.truth, "reference partition TSV")->required();
  score->add_option("--instances", c.instances, "motif instances with function labels");
  score->add_option("--out,-o", c.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) return cmd_motifs_list();
    if (build->parsed()) return cmd_build_wm(c);
    if (cluster->parsed()) return cmd_cluster(c);
    if (certify->parsed()) return cmd_certify(c);
    if (score->parsed()) return cmd_score(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: eigensolver did not converge: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
