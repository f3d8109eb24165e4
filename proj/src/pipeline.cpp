#include "hypertree/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include <json.hpp>

#include "hypertree/absorbing.hpp"
#include "hypertree/decomposition.hpp"
#include "hypertree/density.hpp"
#include "hypertree/layering.hpp"
#include "hypertree/partite.hpp"
#include "hypertree/reservoir.hpp"
#include "hypertree/xfamily.hpp"

namespace hypertree {

std::string to_string(Method m) {
  switch (m) {
    case Method::pipeline: return "pipeline";
    case Method::brute: return "brute";
    case Method::hybrid: return "hybrid";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "pipeline") return Method::pipeline;
  if (s == "brute") return Method::brute;
  if (s == "hybrid") return Method::hybrid;
  throw std::invalid_argument("unknown method '" + s + "' (pipeline | brute | hybrid)");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// A failure that a fresh seed cannot fix.
class Fatal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool retryable(const std::exception& e) {
  return dynamic_cast<const SearchFailure*>(&e) || dynamic_cast<const BudgetExceeded*>(&e);
}

struct Induced {
  Hypergraph h;
  std::vector<Vertex> back;
};

// h[keep], relabelled to 0..|keep|-1.
Induced induced(const Hypergraph& h, const VertexMask& keep) {
  Induced out;
  std::vector<Vertex> fwd(h.n(), kNoVertex);
  for (Vertex v = 0; v < h.n(); ++v)
    if (keep.test(v)) {
      fwd[v] = static_cast<Vertex>(out.back.size());
      out.back.push_back(v);
    }
  std::vector<std::vector<Vertex>> edges;
  for (const auto& e : h.edges()) {
    std::vector<Vertex> m;
    for (Vertex v : e) {
      if (fwd[v] == kNoVertex) break;
      m.push_back(fwd[v]);
    }
    if (m.size() == e.size()) edges.push_back(std::move(m));
  }
  out.h = Hypergraph::build(h.k(), out.back.size(), std::move(edges));
  return out;
}

// Host data shared by all attempts.
struct Cache {
  bool large_checked = false;
  std::optional<Hypergraph> extensible;
};

class PipelineRun {
 public:
  PipelineRun(const Hypergraph& h, const KTree& t, const PipelineParams& p, std::uint64_t seed, const Deadline& dl,
              Cache& cache, SpanningReport& rep, int attempt)
      : h_(h), t_(t), p_(p), seed_(seed), dl_(dl), cache_(cache), rep_(rep), attempt_(attempt), k_(h.k()) {}

  Embedding run();

 private:
  template <class F>
  void stage(const std::string& name, F&& body) {
    if (dl_.expired()) throw SearchFailure("pipeline deadline expired before " + name);
    StageRecord rec{name, 0.0, false, attempt_, {}};
    const auto t0 = Clock::now();
    try {
      rec.detail = body();
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.ms = ms_since(t0);
      rec.detail = e.what();
      rep_.stages.push_back(rec);
      rep_.stage = name;
      rep_.failure = e.what();
      throw;
    }
    rec.ms = ms_since(t0);
    rep_.stages.push_back(rec);
  }

  const Hypergraph& h_;
  const KTree& t_;
  const PipelineParams& p_;
  std::uint64_t seed_;
  Deadline dl_;
  Cache& cache_;
  SpanningReport& rep_;
  int attempt_;
  int k_;
};

Embedding PipelineRun::run() {
  const std::size_t n = h_.n();
  const auto kk = static_cast<std::size_t>(k_);
  const std::size_t ell = p_.ell_for(k_);
  const std::size_t delta = std::max<std::size_t>(1, t_.max_degree());

  stage("largeness", [&] {
    const auto need = static_cast<std::size_t>(std::ceil(p_.gamma * static_cast<double>(n)));
    if (!cache_.large_checked) {
      LargenessResult lr = largeness_check(h_, need);
      if (!lr.pass)
        throw Fatal("host is not " + std::to_string(need) + "-large: " + to_string(lr.worst_f) + ", " +
                    to_string(lr.worst_g) + " share " + std::to_string(lr.worst));
      cache_.large_checked = true;
    }
    return std::to_string(need) + "-large";
  });

  LayeredTree lt;
  stage("flatten", [&] {
    const Tuple r = t_.root();
    lt = flatten_rooted(t_, r);
    LayeringCheck lc = validate_layering(lt.tree, r, lt.layering);
    if (!lc.ok()) throw std::logic_error("flatten produced an invalid layering: " + lc.detail);
    return std::to_string(lt.layering.size()) + " layers";
  });
  SubtreeIndex idx(lt);

  // Absorber subtree T' = T_{r'} and the rest T* (rooted at r').
  LayeredTree tsub;
  Tuple rprime;
  KTree tstar;
  stage("absorber-subtree", [&] {
    const double lo = p_.alpha * static_cast<double>(n) / static_cast<double>(delta);
    const double hi = p_.alpha * static_cast<double>(n);
    const VertexSet root = lt.layering.root();
    VertexSet best;
    int best_rank = 0;
    for (const auto& x : lt.tree.shadow()) {
      if (x == root || !is_layered(lt.layering, x)) continue;
      const auto size = static_cast<double>(idx.subtree_size(x));
      const int rank = layer_rank(lt.layering, x);
      if (size >= lo && size <= hi && rank > best_rank) {
        best = x;
        best_rank = rank;
      }
    }
    if (best.empty())
      throw Fatal("no layered tuple with between " + std::to_string(lo) + " and " + std::to_string(hi) +
                  " edges below it");
    InducedSubtree ins = induced_subtree(idx, best);
    if (ins.edgeless) throw Fatal("absorber subtree is edgeless");
    tsub = std::move(ins.sub);
    rprime = tsub.layering.root_by_layer();

    std::vector<std::size_t> below = idx.subtree_edges(best);
    std::set<std::size_t> in_sub(below.begin(), below.end());
    const VertexSet sub_vertices = tsub.tree.vertices();
    std::vector<std::vector<Vertex>> rest;
    for (std::size_t i = 0; i < lt.tree.num_edges(); ++i) {
      if (in_sub.count(i)) continue;
      for (Vertex v : lt.tree.edges()[i])
        if (contains(sub_vertices, v) && !contains(best, v))
          throw std::logic_error("absorber subtree meets the rest outside its root");
      rest.push_back(lt.tree.edges()[i]);
    }
    if (rest.empty()) throw Fatal("absorber subtree spans the tree");
    tstar = KTree::from_edges(k_, std::move(rest)).rooted_at(rprime);
    return "r'=" + to_string(best) + " rank " + std::to_string(best_rank) + ", " +
           std::to_string(tsub.tree.num_edges()) + " edges";
  });

  XTupleFamily fam;
  const std::size_t sep = p_.separation_for(k_, delta);
  stage("x-family", [&] {
    fam = find_separated_xfamily(tsub.tree, sep);
    return "|B|=" + std::to_string(fam.tuples.size()) + " separation " + std::to_string(sep);
  });

  std::vector<AbsorbingTuple> absorbers;
  stage("absorbers", [&] {
    if (fam.tuples.empty()) return std::string("no X-tuples, family empty");
    AbsorbingFamily af = select_absorbing_family(h_, fam.x, p_.nu, derive_seed(seed_, 1));
    absorbers = std::move(af.tuples);
    if (absorbers.size() > fam.tuples.size()) absorbers.resize(fam.tuples.size());
    return "|A|=" + std::to_string(absorbers.size()) + " min coverage " + std::to_string(af.min_coverage);
  });

  VertexSet e0;
  Tuple f0;
  stage("root-edge", [&] {
    if (!cache_.extensible)
      cache_.extensible = h_.filter_edges([&](const VertexSet& e) { return is_extensible(h_, e, p_.theta); });
    VertexMask taken(n);
    for (const auto& a : absorbers)
      for (Vertex v : a.vertices()) taken.set(v);
    for (const auto& e : cache_.extensible->edges()) {
      if (std::none_of(e.begin(), e.end(), [&](Vertex v) { return taken.test(v); })) {
        e0 = e;
        break;
      }
    }
    if (e0.empty()) throw Fatal("no theta-extensible edge avoids the absorbers");
    f0.assign(e0.begin(), e0.end() - 1);
    return "e0=" + to_string(e0);
  });

  Embedding phi;
  stage("cover", [&] {
    CoverOptions co;
    co.delta = delta;
    co.ell = ell;
    co.separation = sep;
    co.deadline = dl_;
    co.seed = derive_seed(seed_, 2);
    phi = cover_embedding(h_, absorbers, tsub.tree, fam, rprime, f0, co).phi;
    return std::to_string(phi.size()) + " vertices";
  });

  // Residual host minus f0, which stays pinned as the image of r'.
  VertexMask free(n, true);
  for (Vertex v : tsub.tree.vertex_order()) free.reset(phi[v]);

  Reservoir res;
  stage("reservoir", [&] {
    Induced ind = induced(h_, free);
    ReservoirOptions ro;
    ro.strict = false;
    ro.retry_cap = 5;
    ro.family_budget = 200'000;
    ro.edge_budget = 20'000;
    Reservoir local = sample_reservoir(ind.h, p_.gamma, p_.mu, 2, derive_seed(seed_, 3), ro);
    res.report = local.report;
    res.mask = VertexMask(n);
    for (Vertex v : local.vertices) {
      res.vertices.push_back(ind.back[v]);
      res.mask.set(ind.back[v]);
    }
    return "|R|=" + std::to_string(res.vertices.size()) + (local.report.pass() ? " verified" : " best-effort");
  });

  std::vector<VertexSet> parts(kk);
  stage("partition", [&] {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (free.test(v) && !res.mask.test(v)) rest.push_back(v);
    if (rest.size() < kk) throw Fatal("fewer than k vertices outside the reservoir");
    Rng rng(derive_seed(seed_, 4));
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; i < rest.size(); ++i) parts[i % kk].push_back(rest[i]);
    for (auto& part : parts) std::sort(part.begin(), part.end());
    DensityReport dr =
        density_check(h_, UniformlyDense{p_.eps, p_.density, parts}, DensityMode::sampled(100, derive_seed(seed_, 5)));
    if (!dr.pass) throw SearchFailure("partition is not uniformly dense (slack " + std::to_string(dr.worst_slack) + ")");
    return "part sizes " + std::to_string(parts.front().size()) + ".." + std::to_string(parts.back().size());
  });

  // The last m vertices of T* are left for absorption.
  const std::size_t m = std::min(absorbers.size(), tstar.n() - kk);
  const std::size_t kept = tstar.n() - m;
  KTree t0;
  LayeredTree lt0;
  stage("prefix", [&] {
    std::vector<Vertex> order(tstar.vertex_order().begin(), tstar.vertex_order().begin() + kept);
    std::vector<std::vector<Vertex>> edges(tstar.edges().begin(), tstar.edges().begin() + (kept - kk + 1));
    t0 = KTree::from_ordering(k_, std::move(order), std::move(edges));
    lt0 = flatten_rooted(t0, rprime);
    return "m=" + std::to_string(m);
  });

  Decomposition dec;
  stage("decomposition", [&] {
    try {
      dec = decompose_beta_d(lt0, p_.beta, p_.d_for(k_));
    } catch (const std::invalid_argument& e) {
      throw Fatal(e.what());
    }
    DecompositionCheck dc = validate_decomposition(lt0, dec);
    if (!dc.ok()) throw std::logic_error("decomposition clause " + std::to_string(dc.clause) + ": " + dc.detail);
    return std::to_string(dec.parts.size()) + " parts";
  });

  stage("embed-parts", [&] {
    VertexMask used(n);
    for (Vertex v : tsub.tree.vertex_order()) used.set(phi[v]);
    std::vector<std::size_t> per_part(kk, 0);
    std::vector<int> part_of(n, -1);
    for (std::size_t i = 0; i < kk; ++i)
      for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
    const VertexSet rprime_set = make_set(rprime);
    for (const auto& part : dec.parts) {
      Tuple rord = part.root;
      std::sort(rord.begin(), rord.end(),
                [&](Vertex a, Vertex b) { return lt0.layering.layer_of(a) < lt0.layering.layer_of(b); });
      KTree pt = KTree::from_edges(k_, {part.edges.begin(), part.edges.end()});
      LayeredTree ltp = flatten_rooted(pt, rord);
      const Tuple r = ltp.layering.root_by_layer();
      for (Vertex v : r)
        if (!phi.has(v)) throw std::logic_error("part root " + to_string(part.root) + " is not embedded yet");
      const Tuple f = phi.image(r);
      VertexSet e;
      if (part.root == rprime_set) {
        e = e0;
      } else {
        for (std::size_t ei : lt0.tree.edges_containing(part.root)) {
          const auto& te = lt0.tree.edges()[ei];
          if (!std::all_of(te.begin(), te.end(), [&](Vertex v) { return phi.has(v); })) continue;
          VertexSet img = make_set(phi.image(te));
          if (cache_.extensible->has_edge(img)) {
            e = img;
            break;
          }
        }
        if (e.empty()) throw SearchFailure("no extensible edge at part root " + to_string(part.root));
      }
      SubtreeOptions so;
      so.extensible = &*cache_.extensible;
      so.forbidden = &used;
      so.deadline = dl_;
      SubtreeResult sr = embed_subtree(h_, res.mask, parts, ltp, r, e, f, p_, so);
      for (Vertex v : pt.vertex_order()) {
        if (phi.has(v)) continue;
        const Vertex c = sr.phi[v];
        phi.set(v, c);
        used.set(c);
        if (res.mask.test(c)) ++rep_.reservoir_used;
        if (part_of[c] >= 0) ++per_part[part_of[c]];
      }
    }
    auto [lo, hi] = std::minmax_element(per_part.begin(), per_part.end());
    rep_.part_imbalance = *hi - *lo;
    return std::to_string(dec.parts.size()) + " parts embedded, imbalance " + std::to_string(rep_.part_imbalance);
  });

  stage("absorb", [&] {
    if (m == 0) return std::string("nothing to absorb");
    std::vector<Vertex> order = tsub.tree.vertex_order();
    order.insert(order.end(), tstar.vertex_order().begin() + (kk - 1), tstar.vertex_order().end());
    std::vector<std::vector<Vertex>> edges(tsub.tree.edges().begin(), tsub.tree.edges().end());
    edges.insert(edges.end(), tstar.edges().begin(), tstar.edges().end());
    KTree full = KTree::from_ordering(k_, std::move(order), std::move(edges));
    AbsorbResult ar = absorb_complete(h_, full, phi, fam.x, absorbers);
    phi = std::move(ar.phi);
    rep_.swaps = ar.swaps;
    return std::to_string(ar.swaps) + " swaps";
  });

  stage("validate", [&] {
    EmbeddingCheck c = validate_embedding(h_, t_, phi);
    if (!c.ok()) throw std::logic_error("pipeline output fails validation: " + c.detail);
    return std::string("ok");
  });
  return phi;
}

}  // namespace

SpanningResult embed_spanning(const Hypergraph& h, const KTree& t, const PipelineParams& params, Method method) {
  if (t.k() != h.k()) throw std::invalid_argument("host and tree have different uniformity");
  if (t.n() != h.n())
    throw std::invalid_argument("tree has " + std::to_string(t.n()) + " vertices, host " + std::to_string(h.n()));
  params.validate(h.k());

  const auto start = Clock::now();
  const Deadline total = Deadline::after_ms(params.timeout_ms);
  SpanningResult out;
  out.report.method = method;

  if (method != Method::brute) {
    const Deadline dl = method == Method::hybrid ? total.min(Deadline::after_ms(params.timeout_ms / 2)) : total;
    Cache cache;
    for (int attempt = 0; attempt < params.retry_cap; ++attempt) {
      out.report.retries = attempt;
      try {
        PipelineRun run(h, t, params, derive_seed(params.seed, static_cast<std::uint64_t>(attempt)), dl, cache,
                        out.report, attempt);
        out.phi = run.run();
        out.status = SearchStatus::found;
        out.report.stage = "complete";
        out.report.failure.clear();
        break;
      } catch (const std::exception& e) {
        if (out.report.failure.empty()) out.report.failure = e.what();
        if (!retryable(e) || dl.expired()) break;
      }
    }
  }

  if (!out.found() && method == Method::hybrid) {
    SearchProblem p;
    p.host = &h;
    p.tree = &t;
    const Deadline half = total.min(Deadline::after_ms(total.remaining_ms() / 2));
    SearchResult r = restart_search(p, derive_seed(params.seed, 0xfa11), half);
    out.report.fallback = "restart";
    out.report.fallback_nodes = r.nodes;
    out.status = r.status;
    if (r.status == SearchStatus::found) out.phi = std::move(r.phi);
  }
  if ((!out.found() && out.status != SearchStatus::absent && method == Method::hybrid) || method == Method::brute) {
    SearchResult r = brute_force_embed(h, t, total);
    if (method == Method::hybrid) out.report.fallback = "brute";
    out.report.fallback_nodes += r.nodes;
    out.status = r.status;
    if (r.status == SearchStatus::found) out.phi = std::move(r.phi);
  }

  if (out.found()) {
    EmbeddingCheck c = validate_embedding(h, t, out.phi);
    if (!c.ok()) throw std::logic_error("embedder produced an invalid embedding: " + c.detail);
  } else {
    out.phi = Embedding();
  }
  out.report.time_ms = ms_since(start);
  return out;
}

std::string report_json(const SpanningResult& r) {
  nlohmann::json j;
  j["method"] = to_string(r.report.method);
  j["status"] = to_string(r.status);
  j["success"] = r.found();
  j["stage"] = r.report.stage;
  j["failure"] = r.report.failure;
  j["fallback"] = r.report.fallback;
  j["fallback_nodes"] = r.report.fallback_nodes;
  j["retries"] = r.report.retries;
  j["time_ms"] = r.report.time_ms;
  j["part_imbalance"] = r.report.part_imbalance;
  j["reservoir_used"] = r.report.reservoir_used;
  j["swaps"] = r.report.swaps;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.report.stages)
    stages.push_back({{"name", s.name}, {"attempt", s.attempt}, {"ok", s.ok}, {"ms", s.ms}, {"detail", s.detail}});
  j["stages"] = std::move(stages);
  return j.dump(2);
}

}  // namespace hypertree
