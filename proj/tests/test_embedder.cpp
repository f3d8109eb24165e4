#include <set>

#include <json.hpp>

#include "doctest.h"
#include "hypertree/absorbing.hpp"
#include "hypertree/connect.hpp"
#include "hypertree/generators.hpp"
#include "hypertree/partite.hpp"
#include "hypertree/pipeline.hpp"
#include "hypertree/reservoir.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace hypertree;
using inst::complete;
using inst::tight_path;

namespace {

VertexSet range(Vertex lo, Vertex hi) {
  VertexSet s;
  for (Vertex v = lo; v < hi; ++v) s.push_back(v);
  return s;
}

// Window-by-window check written against has_edge only.
bool walk_ok(const Hypergraph& h, const Walk& w, const Tuple& f, const Tuple& g, std::size_t ell,
             const VertexMask* u) {
  const auto k = static_cast<std::size_t>(h.k());
  const auto& vs = w.vertices;
  if (vs.size() != ell + k - 1) return false;
  for (std::size_t i = 0; i + k <= vs.size(); ++i) {
    Tuple e(vs.begin() + static_cast<long>(i), vs.begin() + static_cast<long>(i + k));
    if (!h.has_edge(e)) return false;
  }
  if (!std::equal(f.begin(), f.end(), vs.begin())) return false;
  if (!std::equal(g.begin(), g.end(), vs.end() - static_cast<long>(k - 1))) return false;
  // Walks may revisit vertices; only the interior positions are constrained.
  for (std::size_t i = k - 1; i + k - 1 < vs.size(); ++i) {
    if (u && !u->test(vs[i])) return false;
    if (std::count(f.begin(), f.end(), vs[i]) || std::count(g.begin(), g.end(), vs[i])) return false;
  }
  return true;
}

Embedding identity_prefix(const KTree& t, std::size_t count) {
  Embedding phi(t.label_bound());
  for (std::size_t i = 0; i < count; ++i) phi.set(t.vertex_order()[i], t.vertex_order()[i]);
  return phi;
}

}  // namespace

TEST_CASE("swap walks") {
  CHECK(swap_walk_length(2) == 5);
  CHECK(swap_walk_length(3) == 7);
  CHECK(swap_walk_length(4) == 17);
  CHECK(min_connect_length(3) == 13);
  for (int k : {2, 3, 4}) {
    Hypergraph h = complete(k, 10);
    Tuple a(static_cast<std::size_t>(k));
    std::iota(a.begin(), a.end(), 0);
    Tuple helpers;
    for (int j = 0; j < k / 2; ++j) helpers.push_back(static_cast<Vertex>(k + j));
    Walk w = build_swap_walk(h, a, helpers);
    CHECK(w.length() == swap_walk_length(k));
    Tuple back(a.rbegin(), a.rend());
    CHECK(Tuple(w.vertices.end() - k, w.vertices.end()) == back);
    CHECK(Tuple(w.vertices.begin(), w.vertices.begin() + k) == a);
  }
  // {0,1,3} missing: 3 is outside N({0,1}).
  std::vector<std::vector<Vertex>> es;
  const Hypergraph k6 = complete(3, 6);
  for (const auto& e : k6.edges())
    if (e != VertexSet{0, 1, 3}) es.push_back(e);
  Hypergraph h = Hypergraph::build(3, 6, es);
  CHECK_THROWS_AS(build_swap_walk(h, {0, 1, 2}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(build_swap_walk(h, {0, 1, 2}, {}), std::invalid_argument);
  CHECK_NOTHROW(build_swap_walk(h, {0, 1, 2}, {4}));
}

TEST_CASE("connect") {
  Hypergraph h = gen_binomial(3, 40, 0.8, 11);
  VertexMask u(40);
  for (Vertex v = 6; v < 40; v += 2) u.set(v);
  ConnectOptions opt;
  opt.cap = 3;
  opt.seed = 5;
  // f, g must be ordered shadow tuples; pick them from edges.
  Tuple f(h.edges().front().begin(), h.edges().front().end() - 1);
  Tuple g;
  for (const auto& e : h.edges())
    if (std::none_of(e.begin(), e.end(), [&](Vertex v) { return contains(make_set(f), v); }) && e[0] % 2 == 1) {
      g.assign(e.begin() + 1, e.end());
      break;
    }
  REQUIRE(g.size() == 2);
  for (std::size_t ell : {13, 16}) {
    auto walks = connect(h, f, g, ell, &u, nullptr, opt);
    CHECK(!walks.empty());
    for (const auto& w : walks) {
      CHECK(walk_ok(h, w, f, g, ell, &u));
      CHECK(connect_walk_ok(h, w, f, g, ell, &u, nullptr));
    }
  }
  CHECK_THROWS_AS(connect(h, f, g, 12, &u, nullptr, opt), std::invalid_argument);
  CHECK_THROWS_AS(connect(h, {f[0], f[0]}, g, 13, &u, nullptr, opt), std::invalid_argument);
}

TEST_CASE("reservoir on a complete host") {
  Hypergraph h = complete(3, 30);
  Reservoir r = sample_reservoir(h, 0.5, 0.2, 1, 3);
  CHECK(r.report.pass());
  CHECK(r.mask.count() == r.vertices.size());
  // In a complete host deg_U(F) = |U - union(F)|, so (ii) reduces to the size bound.
  const double n = 30;
  CHECK(static_cast<double>(r.vertices.size()) >= (0.5 - 0.2) * n);
  CHECK(static_cast<double>(r.vertices.size()) <= (0.5 + 0.2) * n);
  ReservoirReport bad = verify_reservoir(h, VertexMask(30), 0.5, 0.2, 1, {}, 0);
  CHECK(!bad.size_ok);
  CHECK(!bad.pass());
  CHECK_THROWS_AS(sample_reservoir(h, 0.2, 0.3, 1, 0), std::invalid_argument);
}

TEST_CASE("clean_partite") {
  Hypergraph h = gen_binomial(3, 30, 0.7, 4);
  std::vector<VertexSet> parts{range(0, 10), range(10, 20), range(20, 30)};
  const double d = 0.3;
  Hypergraph c = clean_partite(h, parts, d);
  CHECK(c.num_edges() > 0);
  std::set<VertexSet> shadow;
  for (const auto& e : c.edges()) {
    CHECK(h.has_edge(e));
    CHECK(e[0] < 10);
    CHECK(e[1] >= 10);
    CHECK(e[1] < 20);
    CHECK(e[2] >= 20);
    for (std::size_t i = 0; i < 3; ++i) shadow.insert(without(e, e[i]));
  }
  for (const auto& f : shadow) CHECK(static_cast<double>(oracle::codegree(c, f)) >= d * 10 / 3);
  CHECK_THROWS_AS(clean_partite(h, {range(0, 10), range(5, 15), range(20, 30)}, d), std::invalid_argument);
  CHECK_THROWS_AS(clean_partite(h, parts, 0.99), std::invalid_argument);
}

TEST_CASE("extend_greedy follows the mod-k part rule") {
  Hypergraph h = complete(3, 30);
  KTree t = tight_path(3, 12);
  LayeredTree lt = flatten_rooted(t, t.root());
  std::vector<VertexSet> parts{range(12, 18), range(18, 24), range(24, 30)};
  const int cut = 2;
  std::size_t prefix = 0;
  while (prefix < t.n() && lt.layering.layer_of(lt.tree.vertex_order()[prefix]) <= cut + 2) ++prefix;
  // Identity on layers 1..cut, the part rule on cut+1..cut+2.
  Embedding partial(lt.tree.label_bound());
  std::vector<std::size_t> next(3, 0);
  for (std::size_t i = 0; i < prefix; ++i) {
    Vertex v = lt.tree.vertex_order()[i];
    const int layer = lt.layering.layer_of(v);
    if (layer <= cut) {
      partial.set(v, v);
    } else {
      auto q = static_cast<std::size_t>((layer - cut - 1) % 3);
      partial.set(v, parts[q][next[q]++]);
    }
  }
  Embedding phi = extend_greedy(h, parts, lt.tree, lt.layering, cut, partial);
  CHECK(validate_embedding(h, lt.tree, phi).ok());
  CHECK(layer_part_rule_ok(parts, lt.layering, cut, phi));
  for (Vertex v : lt.tree.vertex_order()) {
    const int layer = lt.layering.layer_of(v);
    if (layer <= cut || partial.has(v)) continue;
    CHECK(contains(parts[static_cast<std::size_t>((layer - cut - 1) % 3)], phi[v]));
  }
  Embedding short_partial = identity_prefix(lt.tree, 3);
  CHECK_THROWS_AS(extend_greedy(h, parts, lt.tree, lt.layering, cut, short_partial), std::invalid_argument);
}

TEST_CASE("embed_trunk contract") {
  Hypergraph h = complete(3, 30);
  KTree t = tight_path(3, 12);
  LayeredTree lt = flatten_rooted(t, t.root());
  VertexMask u(30);
  for (Vertex v = 10; v < 30; ++v) u.set(v);
  TrunkSpec spec;
  spec.t = 1;
  spec.ell = 10;
  spec.u = &u;
  spec.f1 = [](const Tuple& img) { return img[0] < 5; };
  spec.f2 = [](const Tuple& img) { return img[1] % 2 == 0; };
  spec.seed = 3;
  Embedding phi = embed_trunk(h, lt.tree, lt.layering, spec);
  CHECK(validate_embedding(h, lt.tree, phi).ok());
  CHECK(check_trunk(h, lt.tree, lt.layering, spec, phi).ok);
  for (Vertex v : lt.tree.vertex_order()) {
    const int layer = lt.layering.layer_of(v);
    if (layer >= 3 && layer <= 9) CHECK(u.test(phi[v]));
  }
  CHECK(phi[lt.layering.layers()[0][0]] < 5);

  KTree empty;
  CHECK(embed_trunk(h, empty, Layering(), spec).size() == 0);

  TrunkSpec impossible = spec;
  impossible.f1 = [](const Tuple&) { return false; };
  impossible.deadline = Deadline::after_ms(2000);
  CHECK_THROWS_AS(embed_trunk(h, lt.tree, lt.layering, impossible), SearchFailure);
}

TEST_CASE("is_e_good") {
  Hypergraph h = complete(3, 8);
  CHECK(is_e_good(h, {0, 1, 2}, {3, 4, 5}));
  std::vector<std::vector<Vertex>> es;
  for (const auto& e : h.edges())
    if (e != VertexSet{3, 4, 5}) es.push_back(e);
  Hypergraph g = Hypergraph::build(3, 8, es);
  CHECK(!is_e_good(g, {0, 1, 2}, {3, 4, 5}));
  CHECK(is_e_good(g, {0, 1, 2}, {3, 4, 6}));
}

TEST_CASE("embed_subtree E1-E4 on a complete host") {
  const std::size_t n = 60;
  Hypergraph h = complete(3, n);
  VertexMask res(n);
  for (Vertex v = 0; v < 30; ++v) res.set(v);
  std::vector<VertexSet> parts{range(30, 39), range(39, 48), range(48, 57)};
  PipelineParams p;
  p.beta = 0.5;
  const VertexSet e{57, 58, 59};
  for (int shape = 0; shape < 3; ++shape) {
    KTree t = shape == 0 ? tight_path(3, 26) : gen_random_ktree(3, 26, shape == 1 ? 3 : 4, 40 + shape);
    LayeredTree lt = flatten_rooted(t, t.root());
    const Tuple r = lt.layering.root_by_layer();
    const Tuple f{59, 57};
    SubtreeOptions opt;
    opt.extensible = &h;
    opt.deadline = Deadline::after_ms(30000);
    SubtreeResult sr = embed_subtree(h, res, parts, lt, r, e, f, p, opt);
    CAPTURE(shape);
    CHECK(validate_embedding(h, lt.tree, sr.phi).ok());
    CHECK(sr.phi[r[0]] == 59);
    CHECK(sr.phi[r[1]] == 57);
    SubtreeCheck sc = check_subtree(h, res, parts, lt, r, f, p.ell_for(3), p.theta, sr.phi);
    CHECK_MESSAGE(sc.ok(), sc.detail);
    // E2 written out: reservoir or f exactly on layers 1..ell.
    for (Vertex v : lt.tree.vertex_order()) {
      const bool low = lt.layering.layer_of(v) <= static_cast<int>(p.ell_for(3));
      const bool in_r = sr.phi[v] < 30 || sr.phi[v] == 59 || sr.phi[v] == 57;
      CHECK(low == in_r);
    }
    CHECK(sr.min_clean_codegree > 0);
  }
  KTree t = tight_path(3, 26);
  LayeredTree lt = flatten_rooted(t, t.root());
  const Tuple r = lt.layering.root_by_layer();
  SubtreeOptions opt;
  opt.extensible = &h;
  CHECK_THROWS_AS(embed_subtree(h, res, parts, lt, r, e, {59, 1}, p, opt), std::invalid_argument);
  CHECK_THROWS_AS(embed_subtree(h, res, {range(0, 12), range(39, 48), range(48, 57)}, lt, r, e, {59, 57}, p, opt),
                  std::invalid_argument);
  PipelineParams small = p;
  small.beta = 0.1;
  CHECK_THROWS_AS(embed_subtree(h, res, parts, lt, r, e, {59, 57}, small, opt), std::invalid_argument);
}

TEST_CASE("find_absorbing_tuples matches enumeration") {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    KTree t = gen_random_ktree(3, 10, 3, seed);
    XTupleFamily fam = find_separated_xfamily(t, 1);
    if (fam.tuples.empty() || fam.x.n() > 4) continue;
    const std::size_t n = 9 + seed % 3;
    Hypergraph h = seed % 2 ? complete(3, n) : gen_binomial(3, n, 0.7, seed);
    for (const Tuple& target : {Tuple{0, 1, 2}, Tuple{3, 1, 5}, Tuple{static_cast<Vertex>(n - 1), 0, 4}}) {
      auto found = find_absorbing_tuples(h, fam.x, target);
      CHECK(found.size() == oracle::absorbing_tuples(h, fam.x, target));
      for (const auto& a : found) CHECK(is_absorbing(h, fam.x, a, target));
      std::set<std::pair<Tuple, Vertex>> distinct;
      for (const auto& a : found) distinct.insert({a.u, a.star});
      CHECK(distinct.size() == found.size());
      ++compared;
    }
    AbsorbingSearchOptions capped;
    capped.cap = 2;
    CHECK(find_absorbing_tuples(h, fam.x, {0, 1, 2}, capped).size() <= 2);
  }
  CHECK(compared >= 12);
  KTree t = gen_random_ktree(3, 10, 3, 1);
  XTupleFamily fam = find_separated_xfamily(t, 1);
  CHECK_THROWS_AS(find_absorbing_tuples(complete(3, 8), fam.x, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("select_absorbing_family") {
  Hypergraph h = gen_binomial(3, 30, 0.9, 2);
  KTree t = gen_random_ktree(3, 12, 3, 6);
  XTupleFamily fam = find_separated_xfamily(t, 1);
  REQUIRE(!fam.tuples.empty());
  AbsorbingFamily af = select_absorbing_family(h, fam.x, 0.2, 9);
  CHECK(!af.tuples.empty());
  CHECK(af.tuples.size() <= 6);
  std::set<Vertex> used;
  std::size_t total = 0;
  for (const auto& a : af.tuples) {
    for (Vertex v : a.vertices()) used.insert(v);
    total += a.vertices().size();
  }
  CHECK(used.size() == total);
  CHECK_THROWS_AS(select_absorbing_family(h, fam.x, 0.0, 9), std::invalid_argument);
}

TEST_CASE("cover_embedding") {
  // No absorbers: a rooted embedding of the whole tree.
  {
    Hypergraph h = gen_binomial(3, 20, 0.9, 3);
    KTree t = gen_random_ktree(3, 12, 3, 2);
    XTupleFamily fam = find_separated_xfamily(t, 200);
    const Tuple f0(h.edges()[5].begin(), h.edges()[5].end() - 1);
    CoverResult cr = cover_embedding(h, {}, t, fam, t.root(), f0);
    CHECK(validate_embedding(h, t, cr.phi).ok());
    CHECK(cr.phi.image(t.root()) == f0);
  }
  // One absorber on a long tight path (k = 2), far enough from the root.
  {
    Hypergraph h = gen_binomial(2, 80, 0.9, 8);
    KTree t = tight_path(2, 70);
    CoverOptions opt;
    opt.delta = 2;
    const std::size_t near = 2 * 2 * (min_connect_length(2) + 6);
    XTupleFamily fam = find_separated_xfamily(t, 2 * near, range(0, 66));
    REQUIRE(!fam.tuples.empty());
    AbsorbingFamily af = select_absorbing_family(h, fam.x, 0.05, 1);
    std::vector<AbsorbingTuple> a(af.tuples.begin(), af.tuples.begin() + 1);
    const Tuple f0{h.edges()[0][0]};
    opt.deadline = Deadline::after_ms(30000);
    CoverResult cr = cover_embedding(h, a, t, fam, t.root(), f0, opt);
    CHECK(validate_embedding(h, t, cr.phi).ok());
    CHECK(cr.phi[t.root()[0]] == f0[0]);
    auto inv = inverse_map(cr.phi, h.n());
    CHECK(x_covered(t, fam.x, inv, a[0]));
  }
  // Two B tuples that are too close.
  {
    Hypergraph h = complete(3, 14);
    KTree t = tight_path(3, 12);
    XTupleFamily fam = find_separated_xfamily(t, 1);
    REQUIRE(fam.tuples.size() >= 2);
    fam.separation = 1000;
    AbsorbingFamily af = select_absorbing_family(h, fam.x, 0.2, 1);
    REQUIRE(af.tuples.size() >= 1);
    CoverOptions opt;
    opt.separation = 1000;
    CHECK_THROWS_AS(cover_embedding(h, {af.tuples[0]}, t, fam, t.root(), {0, 1}, opt), std::invalid_argument);
  }
}

TEST_CASE("absorb_complete") {
  SUBCASE("m = 0 returns phi0") {
    Hypergraph h = complete(3, 8);
    KTree t = tight_path(3, 8);
    Embedding phi0 = identity_prefix(t, 8);
    AbsorbResult r = absorb_complete(h, t, phi0, KTree(), {});
    CHECK(r.phi == phi0);
    CHECK(r.swaps == 0);
  }
  SUBCASE("constructed instances, every step validated") {
    int built = 0;
    for (std::uint64_t seed = 0; seed < 30 && built < 12; ++seed) {
      auto in = inst::absorb_instance(11 + seed % 2, seed, seed % 2 == 0);
      if (!in) continue;
      ++built;
      AbsorbOptions opt;
      opt.validate_steps = true;
      AbsorbResult r = absorb_complete(in->h, in->t, in->phi0, in->x, in->a, opt);
      CHECK(r.swaps == in->m);
      CHECK(validate_embedding(in->h, in->t, r.phi).ok());
    }
    CHECK(built >= 6);
  }
  SUBCASE("exhausted family names the k-tuple") {
    std::optional<inst::AbsorbInstance> in;
    for (std::uint64_t seed = 0; seed < 400 && (!in || in->m < 2); ++seed)
      in = inst::absorb_instance(12 + seed % 5, seed, true);
    REQUIRE((in && in->m >= 2));
    std::vector<AbsorbingTuple> fewer(in->a.begin(), in->a.end() - 1);
    CHECK_THROWS_WITH_AS(absorb_complete(in->h, in->t, in->phi0, in->x, fewer),
                         doctest::Contains("no unused absorbing tuple for"), SearchFailure);
  }
  SUBCASE("bad inputs") {
    auto in = inst::absorb_instance(11, 0, true);
    for (std::uint64_t seed = 1; !in; ++seed) in = inst::absorb_instance(11, seed, true);
    Embedding gap = in->phi0;
    gap.erase(in->t.vertex_order()[4]);
    CHECK_THROWS_AS(absorb_complete(in->h, in->t, gap, in->x, in->a), std::invalid_argument);
    auto twice = in->a;
    twice.push_back(in->a[0]);
    CHECK_THROWS_AS(absorb_complete(in->h, in->t, in->phi0, in->x, twice), std::invalid_argument);
  }
}

TEST_CASE("brute force and restart search") {
  KTree star = KTree::from_ordered_edges(3, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 1, 5}, {0, 1, 6}, {0, 1, 7},
                                             {0, 1, 8}});
  ExtremalInstance ex = extremal_instance(star);
  CHECK(brute_force_embed(ex.host, star).status == SearchStatus::absent);
  Hypergraph h = complete(3, 10);
  KTree t = gen_random_ktree(3, 10, 3, 1);
  SearchResult r = brute_force_embed(h, t);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(validate_embedding(h, t, r.phi).ok());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Hypergraph g = gen_binomial(3, 12, 0.8, seed);
    SearchProblem p;
    p.host = &g;
    p.tree = &t;
    SearchResult a = restart_search(p, seed, Deadline::after_ms(20000));
    SearchResult b = brute_force_embed(g, t, Deadline::after_ms(20000));
    CHECK(a.status == b.status);
    if (a.status == SearchStatus::found) CHECK(validate_embedding(g, t, a.phi).ok());
    CHECK((b.status == SearchStatus::found) == !oracle::all_embeddings(g, t, 1).empty());
  }
}

TEST_CASE("embed_spanning") {
  PipelineParams p;
  p.timeout_ms = 20000;
  SUBCASE("tight Hamilton path in a complete host") {
    Hypergraph h = complete(3, 12);
    KTree t = tight_path(3, 12);
    for (Method m : {Method::hybrid, Method::brute}) {
      SpanningResult r = embed_spanning(h, t, p, m);
      REQUIRE(r.found());
      CHECK(validate_embedding(h, t, r.phi).ok());
    }
  }
  SUBCASE("extremal instance is rejected") {
    KTree star = KTree::from_ordered_edges(3, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 1, 5}, {0, 1, 6},
                                               {0, 1, 7}, {0, 1, 8}});
    ExtremalInstance ex = extremal_instance(star);
    SpanningResult r = embed_spanning(ex.host, star, p, Method::hybrid);
    CHECK(r.status == SearchStatus::absent);
    CHECK(r.phi.size() == 0);
  }
  SUBCASE("dense random hosts") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Hypergraph h = gen_binomial(3, 20, 0.9, seed);
      KTree t = gen_random_ktree(3, 20, 3, seed + 100);
      p.seed = seed;
      SpanningResult r = embed_spanning(h, t, p, Method::hybrid);
      CHECK(r.found());
      if (r.found()) CHECK(validate_embedding(h, t, r.phi).ok());
      CHECK(!r.report.stages.empty());
      auto j = nlohmann::json::parse(report_json(r));
      CHECK(j["stages"].size() == r.report.stages.size());
      CHECK(j["method"] == "hybrid");
      SpanningResult again = embed_spanning(h, t, p, Method::hybrid);
      CHECK(again.report.stage == r.report.stage);
      CHECK(again.report.retries == r.report.retries);
      CHECK(again.phi == r.phi);
    }
  }
  SUBCASE("bad inputs") {
    CHECK_THROWS_AS(embed_spanning(complete(3, 10), tight_path(3, 9), p), std::invalid_argument);
    CHECK_THROWS_AS(embed_spanning(complete(3, 10), tight_path(2, 10), p), std::invalid_argument);
    PipelineParams bad = p;
    bad.gamma = 0;
    CHECK_THROWS_AS(embed_spanning(complete(3, 10), tight_path(3, 10), bad), std::invalid_argument);
    CHECK(parse_method("brute") == Method::brute);
    CHECK_THROWS_AS(parse_method("magic"), std::invalid_argument);
  }
}
