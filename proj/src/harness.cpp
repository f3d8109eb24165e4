#include "hypertree/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hypertree/generators.hpp"
#include "hypertree/io.hpp"

namespace hypertree {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
  static const std::vector<std::string> hosts{"binomial", "complete", "hab", "extremal", "file"};
  static const std::vector<std::string> trees{"random", "path", "star", "file"};
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  if (std::find(hosts.begin(), hosts.end(), host.kind) == hosts.end())
    throw std::invalid_argument("unknown host kind '" + host.kind + "'");
  if (std::find(trees.begin(), trees.end(), tree.kind) == trees.end())
    throw std::invalid_argument("unknown tree kind '" + tree.kind + "'");
  if (host.k < 2) throw std::invalid_argument("k must be at least 2");
  if (host.kind == "binomial" && !(host.p >= 0.0 && host.p <= 1.0))
    throw std::invalid_argument("binomial hosts need p in [0, 1]");
  if (host.kind == "hab" && (host.a == 0 || host.b == 0)) throw std::invalid_argument("hab hosts need --a and --b");
  if (host.kind == "file" && host.path.empty()) throw std::invalid_argument("file hosts need a path");
  if (tree.kind == "file" && tree.path.empty()) throw std::invalid_argument("file trees need a path");
  if (host.kind == "extremal" && tree.kind == "file") throw std::invalid_argument("extremal hosts need a generated tree");
  if (tree.count == 0) throw std::invalid_argument("tree count must be positive");
  if (tree.kind == "random" && tree.delta < 2) throw std::invalid_argument("random trees need delta >= 2");
  params.validate(host.k);
}

std::string default_out_dir() {
  const char* env = std::getenv("HYPERTREE_OUT_DIR");
  return env && *env ? env : "hypertree-out";
}

namespace {

KTree make_tree(const ExperimentConfig& cfg, std::size_t n, std::uint64_t seed) {
  const int k = cfg.host.k;
  const auto& ts = cfg.tree;
  if (ts.kind == "file") return load_tree(ts.path);
  if (n < static_cast<std::size_t>(k)) throw std::invalid_argument("tree order below k");
  std::vector<std::vector<Vertex>> es;
  if (ts.kind == "path") {
    for (Vertex s = 0; s + k <= n; ++s) {
      std::vector<Vertex> e;
      for (int i = 0; i < k; ++i) e.push_back(s + static_cast<Vertex>(i));
      es.push_back(e);
    }
    return KTree::from_ordered_edges(k, es);
  }
  if (ts.kind == "star") {
    // Every edge contains the first k-1 vertices.
    for (Vertex v = static_cast<Vertex>(k - 1); v < n; ++v) {
      std::vector<Vertex> e;
      for (int i = 0; i + 1 < k; ++i) e.push_back(static_cast<Vertex>(i));
      e.push_back(v);
      es.push_back(e);
    }
    return KTree::from_ordered_edges(k, es);
  }
  return gen_random_ktree(k, n, ts.delta, seed);
}

}  // namespace

TrialInstance make_instance(const ExperimentConfig& cfg, std::uint64_t seed, std::size_t tree_index) {
  const auto& hs = cfg.host;
  TrialInstance in;
  const std::uint64_t host_seed = derive_seed(seed, 0);
  const std::uint64_t tree_seed = derive_seed(seed, 1 + tree_index);
  std::size_t n = hs.n;
  if (hs.kind == "hab") n = hs.a + hs.b;
  if (hs.kind == "file") {
    in.host = load_host(hs.path);
    n = in.host.n();
  }
  const std::size_t tn = cfg.tree.n ? cfg.tree.n : n;
  in.tree = make_tree(cfg, tn, tree_seed);
  if (hs.kind == "binomial") {
    for (int attempt = 0;; ++attempt) {
      in.host = gen_binomial(hs.k, n, hs.p, derive_seed(host_seed, static_cast<std::uint64_t>(attempt)));
      if (static_cast<double>(min_codegree(in.host)) >= hs.min_codegree_frac * static_cast<double>(n)) break;
      if (attempt + 1 >= hs.max_resamples)
        throw SearchFailure("no binomial host reached min codegree " +
                            std::to_string(hs.min_codegree_frac * static_cast<double>(n)));
    }
  } else if (hs.kind == "complete") {
    in.host = gen_binomial(hs.k, n, 1.0, host_seed);
  } else if (hs.kind == "hab") {
    VertexSet a, b;
    for (Vertex v = 0; v < n; ++v) (v < hs.a ? a : b).push_back(v);
    in.host = gen_hab(hs.k, a, b);
  } else if (hs.kind == "extremal") {
    in.host = extremal_instance(in.tree).host;
  }
  return in;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialRecord> out;
  std::size_t trial = 0;
  for (std::uint64_t seed : cfg.seeds) {
    for (std::size_t j = 0; j < cfg.tree.count; ++j, ++trial) {
      TrialInstance in = make_instance(cfg, seed, j);
      PipelineParams p = cfg.params;
      p.seed = derive_seed(seed, 1000 + j);
      TrialRecord rec;
      rec.trial = trial;
      rec.seed = seed;
      rec.k = in.host.k();
      rec.n = in.host.n();
      rec.delta1 = in.tree.max_degree();
      rec.host_kind = cfg.host.kind;
      rec.min_codegree = min_codegree(in.host);
      rec.method = to_string(cfg.method);
      SpanningResult r = embed_spanning(in.host, in.tree, p, cfg.method);
      rec.success = r.found();
      rec.stage = r.report.stage;
      if (r.report.fallback != "none") rec.stage += "+" + r.report.fallback;
      rec.time_ms = r.report.time_ms;
      rec.retries = r.report.retries;
      rec.status = to_string(r.status);
      if (!cfg.out_dir.empty()) {
        fs::path dir = fs::path(cfg.out_dir) / ("seed-" + std::to_string(seed)) / ("trial-" + std::to_string(trial));
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
        std::ofstream rep(dir / "report.json");
        if (!rep) throw std::runtime_error("cannot write " + (dir / "report.json").string());
        rep << report_json(r) << '\n';
        if (r.found()) save_embedding((dir / "embedding.txt").string(), in.tree, r.phi);
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::string csv_header() { return "trial,seed,k,n,delta1,host_kind,min_codegree,method,success,stage,time_ms,retries"; }

std::string csv_row(const TrialRecord& r) {
  std::ostringstream s;
  s << r.trial << ',' << r.seed << ',' << r.k << ',' << r.n << ',' << r.delta1 << ',' << r.host_kind << ','
    << r.min_codegree << ',' << r.method << ',' << (r.success ? "true" : "false") << ',' << r.stage << ','
    << std::fixed << std::setprecision(1) << r.time_ms << ',' << r.retries;
  return s.str();
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

}  // namespace hypertree
