#include "hypertree/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hypertree/decomposition.hpp"
#include "hypertree/generators.hpp"
#include "hypertree/harness.hpp"
#include "hypertree/io.hpp"
#include "hypertree/layering.hpp"

namespace hypertree {

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream in(s);
  std::string item;
  auto num = [&](const std::string& x) {
    if (x.empty() || !std::all_of(x.begin(), x.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad seed '" + x + "'");
    return static_cast<std::uint64_t>(std::stoull(x));
  };
  while (std::getline(in, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(num(item));
      continue;
    }
    std::uint64_t lo = num(item.substr(0, dash)), hi = num(item.substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("empty seed range '" + item + "'");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("no seeds given");
  return out;
}

namespace {

// Negative outcome: reported on stderr, exit 1.
class Negative : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_params(CLI::App* c, PipelineParams& p) {
  c->add_option("--gamma", p.gamma, "largeness / reservoir fraction")->capture_default_str();
  c->add_option("--mu", p.mu, "reservoir slack")->capture_default_str();
  c->add_option("--theta", p.theta, "extensibility fraction")->capture_default_str();
  c->add_option("--ell", p.ell, "connection length (0: minimum)")->capture_default_str();
  c->add_option("--beta", p.beta, "decomposition part size")->capture_default_str();
  c->add_option("--d", p.d, "decomposition depth (0: ell)")->capture_default_str();
  c->add_option("--alpha", p.alpha, "absorber subtree fraction")->capture_default_str();
  c->add_option("--nu", p.nu, "absorbing family fraction")->capture_default_str();
  c->add_option("--retry-cap", p.retry_cap, "pipeline attempts")->capture_default_str();
  c->add_option("--separation", p.separation, "X-tuple separation (0: 2 Delta k (ell + 3k))")->capture_default_str();
  c->add_option("--density", p.density, "block density lower bound")->capture_default_str();
  c->add_option("--eps", p.eps, "block density slack")->capture_default_str();
  c->add_option("--timeout-ms", p.timeout_ms, "time limit")->capture_default_str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

int run_gen_host(const std::string& kind, int k, std::size_t n, double p, std::size_t a, std::size_t b,
                 std::uint64_t seed, const std::string& tree, const std::string& out) {
  Hypergraph h;
  if (kind == "binomial" || kind == "complete") {
    if (n == 0) throw std::invalid_argument("--n is required");
    h = gen_binomial(k, n, kind == "complete" ? 1.0 : p, seed);
  } else if (kind == "hab") {
    VertexSet av, bv;
    for (Vertex v = 0; v < a + b; ++v) (v < a ? av : bv).push_back(v);
    h = gen_hab(k, av, bv);
  } else if (kind == "extremal") {
    if (tree.empty()) throw std::invalid_argument("--tree is required for extremal hosts");
    ExtremalInstance ex = extremal_instance(load_tree(tree));
    h = ex.host;
    std::cout << "a(T) = " << ex.a_t << ", f(T) = " << ex.f_t << '\n';
  } else {
    throw std::invalid_argument("unknown host kind '" + kind + "'");
  }
  save_host(out, h);
  std::cout << "host: k = " << h.k() << ", n = " << h.n() << ", edges = " << h.num_edges()
            << ", min codegree = " << min_codegree(h) << '\n';
  return 0;
}

int run_embed(const std::string& host, const std::string& tree, const std::string& method, PipelineParams p,
              const std::string& map, const std::string& report) {
  Hypergraph h = load_host(host);
  KTree t = load_tree(tree);
  SpanningResult r = embed_spanning(h, t, p, parse_method(method));
  if (!report.empty()) open_out(report) << report_json(r) << '\n';
  if (r.found() && !map.empty()) save_embedding(map, t, r.phi);
  std::cout << to_string(r.status) << " (stage " << r.report.stage << ", fallback " << r.report.fallback << ", "
            << static_cast<long>(r.report.time_ms) << " ms)\n";
  if (r.found() && map.empty()) write_embedding(std::cout, t, r.phi);
  return r.found() ? 0 : 1;
}

int run_check(const std::string& what, const std::string& host, const std::string& tree, const std::string& map) {
  if (what == "embedding") {
    if (host.empty() || tree.empty() || map.empty())
      throw std::invalid_argument("--host, --tree and --map are required");
    Hypergraph h = load_host(host);
    KTree t = load_tree(tree);
    Embedding phi = load_embedding(map);
    EmbeddingCheck c = validate_embedding(h, t, phi);
    if (!c.ok()) throw Negative("fail: " + c.detail);
    std::cout << "pass\n";
    return 0;
  }
  if (what == "tree") {
    if (tree.empty()) throw std::invalid_argument("--tree is required");
    KTree t = load_tree(tree);
    Layering l = flatten(t, t.root());
    LayeringCheck lc = validate_layering(t, t.root(), l);
    if (!lc.ok()) throw Negative("fail: layering " + lc.detail);
    std::cout << "pass: k = " << t.k() << ", n = " << t.n() << ", Delta_1 = " << t.max_degree() << ", " << l.size()
              << " layers\n";
    return 0;
  }
  if (what == "host") {
    if (host.empty()) throw std::invalid_argument("--host is required");
    Hypergraph h = load_host(host);
    std::cout << "pass: k = " << h.k() << ", n = " << h.n() << ", edges = " << h.num_edges()
              << ", min codegree = " << min_codegree(h) << '\n';
    return 0;
  }
  throw std::invalid_argument("--what must be embedding, tree or host");
}

int run_decompose(const std::string& tree, double beta, int d, std::size_t delta, const std::string& out) {
  KTree t = load_tree(tree);
  LayeredTree lt = flatten_rooted(t, t.root());
  Decomposition dec;
  try {
    dec = decompose_beta_d(lt, beta, d, delta);
  } catch (const std::invalid_argument& e) {
    throw Negative(std::string("precondition: ") + e.what());
  }
  DecompositionCheck c = validate_decomposition(lt, dec);
  nlohmann::json j;
  j["beta"] = dec.beta;
  j["d"] = dec.d;
  j["delta"] = dec.delta;
  j["valid"] = c.ok();
  j["parts"] = nlohmann::json::array();
  for (const auto& part : dec.parts)
    j["parts"].push_back({{"root", part.root}, {"edges", part.edges.size()}, {"vertices", part.vertices}});
  if (!out.empty()) open_out(out) << j.dump(2) << '\n';
  std::cout << dec.parts.size() << " parts, clauses " << (c.ok() ? "pass" : "fail") << '\n';
  if (!c.ok()) throw Negative("clause " + std::to_string(c.clause) + ": " + c.detail);
  return 0;
}

int run_experiment_cmd(ExperimentConfig cfg, const std::string& method, const std::string& seeds,
                       const std::string& csv) {
  cfg.method = parse_method(method);
  cfg.seeds = parse_seeds(seeds);
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  std::vector<TrialRecord> rows = run_experiment(cfg);
  const std::string path = csv.empty() ? (std::filesystem::path(cfg.out_dir) / "results.csv").string() : csv;
  {
    std::ofstream f = open_out(path);
    write_csv(f, rows);
  }
  std::size_t ok = 0;
  std::vector<double> times;
  for (const auto& r : rows) {
    ok += r.success ? 1 : 0;
    times.push_back(r.time_ms);
  }
  std::sort(times.begin(), times.end());
  std::cout << "success " << ok << "/" << rows.size() << ", median " << static_cast<long>(times[times.size() / 2])
            << " ms, csv " << path << '\n';
  return 0;
}

}  // namespace

int cli_dispatch(int argc, char** argv) {
  CLI::App app{"Spanning tight k-tree embedder"};
  app.require_subcommand(1);

  std::string kind = "binomial", out, tree, host, map, report, what = "embedding", method = "hybrid", seeds, csv;
  int k = 3, d = 1;
  std::size_t n = 0, a = 0, b = 0, delta = 3, ddelta = 0;
  double p = 0.9, beta = 0.1;
  std::uint64_t seed = 0;
  PipelineParams params;
  ExperimentConfig cfg;

  auto* gh = app.add_subcommand("gen-host", "generate a host hypergraph");
  gh->add_option("--kind", kind, "binomial | complete | hab | extremal")->capture_default_str();
  gh->add_option("--k", k)->capture_default_str();
  gh->add_option("--n", n);
  gh->add_option("--p", p)->capture_default_str();
  gh->add_option("--a", a, "|A| for hab");
  gh->add_option("--b", b, "|B| for hab");
  gh->add_option("--seed", seed)->capture_default_str();
  gh->add_option("--tree", tree, "tree file for extremal");
  gh->add_option("-o,--out", out)->required();

  auto* gt = app.add_subcommand("gen-tree", "generate a tight k-tree");
  std::string tkind = "random";
  gt->add_option("--kind", tkind, "random | path | star")->capture_default_str();
  gt->add_option("--k", k)->capture_default_str();
  gt->add_option("--n", n)->required();
  gt->add_option("--delta", delta, "vertex degree cap for random trees")->capture_default_str();
  gt->add_option("--seed", seed)->capture_default_str();
  gt->add_option("-o,--out", out)->required();

  auto* em = app.add_subcommand("embed", "embed a spanning tree into a host");
  em->add_option("--host", host)->required();
  em->add_option("--tree", tree)->required();
  em->add_option("--method", method, "pipeline | brute | hybrid")->capture_default_str();
  em->add_option("--seed", params.seed)->capture_default_str();
  em->add_option("-o,--map", map, "embedding output");
  em->add_option("--report", report, "JSON run report");
  add_params(em, params);

  auto* ck = app.add_subcommand("check", "validate a file");
  ck->add_option("--what", what, "embedding | tree | host")->capture_default_str();
  ck->add_option("--host", host);
  ck->add_option("--tree", tree);
  ck->add_option("--map", map);

  auto* dc = app.add_subcommand("decompose", "(beta, d)-decomposition of a tree");
  dc->add_option("--tree", tree)->required();
  dc->add_option("--beta", beta)->capture_default_str();
  dc->add_option("--d", d)->capture_default_str();
  dc->add_option("--delta", ddelta, "degree bound (0: max(2, Delta_1))")->capture_default_str();
  dc->add_option("-o,--out", out, "JSON output");

  auto* ex = app.add_subcommand("experiment", "run a seeded sweep and write CSV");
  ex->add_option("--host-kind", cfg.host.kind, "binomial | complete | hab | extremal | file")->capture_default_str();
  ex->add_option("--k", cfg.host.k)->capture_default_str();
  ex->add_option("--n", cfg.host.n)->capture_default_str();
  ex->add_option("--p", cfg.host.p)->capture_default_str();
  ex->add_option("--a", cfg.host.a);
  ex->add_option("--b", cfg.host.b);
  ex->add_option("--min-codegree-frac", cfg.host.min_codegree_frac, "resample binomial hosts below this")
      ->capture_default_str();
  ex->add_option("--host-file", cfg.host.path);
  ex->add_option("--tree-kind", cfg.tree.kind, "random | path | star | file")->capture_default_str();
  ex->add_option("--tree-n", cfg.tree.n, "0: host order")->capture_default_str();
  ex->add_option("--delta", cfg.tree.delta)->capture_default_str();
  ex->add_option("--trees", cfg.tree.count, "trees per seed")->capture_default_str();
  ex->add_option("--tree-file", cfg.tree.path);
  ex->add_option("--method", method)->capture_default_str();
  ex->add_option("--seeds", seeds, "e.g. 0-99 or 1,5,7")->required();
  ex->add_option("--out-dir", cfg.out_dir, "default: $HYPERTREE_OUT_DIR or hypertree-out");
  ex->add_option("--csv", csv, "default: <out-dir>/results.csv");
  add_params(ex, cfg.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (gh->parsed()) return run_gen_host(kind, k, n, p, a, b, seed, tree, out);
    if (gt->parsed()) {
      ExperimentConfig tc;
      tc.host.k = k;
      tc.tree.kind = tkind;
      tc.tree.delta = delta;
      tc.tree.n = n;
      tc.seeds = {seed};
      tc.host.kind = "complete";
      tc.host.n = n;
      if (tkind != "random" && tkind != "path" && tkind != "star")
        throw std::invalid_argument("unknown tree kind '" + tkind + "'");
      KTree t = make_instance(tc, seed, 0).tree;
      save_tree(out, t);
      std::cout << "tree: k = " << t.k() << ", n = " << t.n() << ", Delta_1 = " << t.max_degree() << '\n';
      return 0;
    }
    if (em->parsed()) return run_embed(host, tree, method, params, map, report);
    if (ck->parsed()) return run_check(what, host, tree, map);
    if (dc->parsed()) return run_decompose(tree, beta, d, ddelta, out);
    if (ex->parsed()) return run_experiment_cmd(cfg, method, seeds, csv);
  } catch (const Negative& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const SearchFailure& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace hypertree
