#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hypertree/decomposition.hpp"
#include "hypertree/generators.hpp"
#include "hypertree/io.hpp"
#include "hypertree/pseudopath.hpp"
#include "hypertree/xfamily.hpp"
#include "oracles.hpp"

using namespace hypertree;

namespace {

KTree path3() { return KTree::from_ordered_edges(3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}); }
KTree star3() { return KTree::from_ordered_edges(3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}}); }

KTree tight_path(int k, std::size_t n) {
  std::vector<std::vector<Vertex>> es;
  for (std::size_t i = 0; i + k <= n; ++i) {
    std::vector<Vertex> e;
    for (int j = 0; j < k; ++j) e.push_back(static_cast<Vertex>(i + static_cast<std::size_t>(j)));
    es.push_back(e);
  }
  return KTree::from_ordered_edges(k, es);
}

// Random tree with shuffled labels so that label and position differ.
KTree shuffled_tree(int k, std::size_t n, std::size_t delta, std::uint64_t seed) {
  KTree t = gen_random_ktree(k, n, std::max(delta, static_cast<std::size_t>(k)), seed);
  std::vector<Vertex> relabel(n);
  for (std::size_t i = 0; i < n; ++i) relabel[i] = static_cast<Vertex>(i * 3 + 1);
  Rng rng(seed ^ 0x5555);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Vertex> order;
  for (Vertex v : t.vertex_order()) order.push_back(relabel[v]);
  std::vector<std::vector<Vertex>> edges;
  for (const auto& e : t.edges()) {
    std::vector<Vertex> r;
    for (Vertex v : e) r.push_back(relabel[v]);
    edges.push_back(r);
  }
  return KTree::from_ordering(k, order, edges);
}

}  // namespace

TEST_CASE("build_ktree") {
  KTree one = KTree::from_edges(3, {{4, 7, 9}});
  CHECK(one.num_edges() == 1);
  CHECK(one.n() == 3);
  CHECK(one.anchor(9).empty());

  KTree p = path3();
  CHECK(p.parent(1) == 0);
  CHECK(p.parent(2) == 1);
  CHECK(p.anchor(4) == VertexSet{2, 3});
  CHECK(p.anchor(5) == VertexSet{3, 4});
  CHECK(p.vertex_order() == std::vector<Vertex>{1, 2, 3, 4, 5});

  CHECK_THROWS_AS(KTree::from_edges(3, {{1, 2, 3}, {4, 5, 6}}), std::invalid_argument);
  CHECK_THROWS_AS(KTree::from_edges(3, {{1, 2, 3}, {2, 3, 4}, {2, 3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(KTree::from_edges(3, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(KTree::from_ordered_edges(3, {{1, 2, 3}, {3, 4, 5}}), std::invalid_argument);
  // T2 fails: {1,4} is not in the shadow of the earlier edges.
  CHECK_THROWS_AS(KTree::from_ordered_edges(3, {{1, 2, 3}, {2, 3, 4}, {1, 4, 5}}), std::invalid_argument);
  // Edges in a scrambled order are reordered.
  KTree scrambled = KTree::from_edges(3, {{3, 4, 5}, {1, 2, 3}, {2, 3, 4}});
  CHECK(scrambled.num_edges() == 3);
}

TEST_CASE("unordered edges of random trees round-trip") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    KTree t = shuffled_tree(k, 8 + seed % 30, 3, seed);
    std::vector<std::vector<Vertex>> edges(t.edges().begin(), t.edges().end());
    Rng rng(seed);
    std::shuffle(edges.begin(), edges.end(), rng);
    KTree back = KTree::from_edges(k, edges);
    std::set<VertexSet> a(t.edges().begin(), t.edges().end()), b(back.edges().begin(), back.edges().end());
    REQUIRE(a == b);
    REQUIRE(back.n() == t.n());
  }
}

TEST_CASE("rooted_at") {
  KTree p = path3();
  KTree r = p.rooted_at(std::vector<Vertex>{4, 5});
  CHECK(r.root() == Tuple{4, 5});
  CHECK(r.vertex_order() == std::vector<Vertex>{4, 5, 3, 2, 1});
  CHECK_THROWS_AS(p.rooted_at(std::vector<Vertex>{1, 5}), std::invalid_argument);
}

TEST_CASE("link_graph") {
  KTree l = link_graph(path3(), 3);
  CHECK(l.k() == 2);
  CHECK(l.n() == 4);
  CHECK(l.num_edges() == 3);
  CHECK(l.vertices() == VertexSet{1, 2, 4, 5});
  CHECK(link_graph(path3(), 1).num_edges() == 1);

  KTree s = link_graph(star3(), 1);
  CHECK(s.num_edges() == 3);
  for (const auto& e : s.edges()) CHECK(contains(e, 2));
  CHECK(s.degree(2) == 3);
  CHECK_THROWS_AS(link_graph(path3(), 9), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    KTree t = shuffled_tree(3 + static_cast<int>(seed % 2), 30, 4, seed);
    for (Vertex v : t.vertex_order()) {
      KTree link = link_graph(t, v);
      REQUIRE(link.num_edges() <= t.max_degree());
      REQUIRE(link.n() <= t.max_degree() + static_cast<std::size_t>(t.k()) - 1);
    }
  }
}

TEST_CASE("k_partition") {
  auto single = k_partition(KTree::from_edges(3, {{0, 1, 2}}));
  CHECK(single == std::vector<VertexSet>{{0}, {1}, {2}});
  CHECK(k_partition(path3()) == std::vector<VertexSet>{{1, 4}, {2, 5}, {3}});

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    KTree t = shuffled_tree(k, 40, 3, seed);
    auto classes = k_partition(t);
    // Every edge meets every class once.
    for (const auto& e : t.edges())
      for (const auto& c : classes) REQUIRE(set_intersection(e, c).size() == 1);
    // Another valid ordering gives the same partition up to relabelling.
    const auto& last = t.edges().back();
    KTree other = t.rooted_at(without(last, t.vertex_order().back()));
    auto again = k_partition(other);
    std::set<VertexSet> a(classes.begin(), classes.end()), b(again.begin(), again.end());
    REQUIRE(a == b);
  }
}

TEST_CASE("flatten small cases") {
  Layering l = flatten(tight_path(3, 6), std::vector<Vertex>{0, 1});
  REQUIRE(l.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(l.layers()[i] == VertexSet{static_cast<Vertex>(i)});

  Layering s = flatten(star3(), std::vector<Vertex>{1, 2});
  CHECK(s.layers() == std::vector<VertexSet>{{1}, {2}, {3, 4, 5}});
  CHECK(validate_layering(star3(), std::vector<Vertex>{1, 2}, s).ok());
  CHECK_THROWS_AS(flatten(star3(), std::vector<Vertex>{3, 4}), std::invalid_argument);

  // The case that a literal "move w to L'_k" step gets wrong.
  KTree t = KTree::from_ordered_edges(3, {{0, 1, 2}, {1, 2, 3}});
  Layering cd = flatten(t, std::vector<Vertex>{2, 3});
  CHECK(validate_layering(t, std::vector<Vertex>{2, 3}, cd).ok());
  CHECK(oracle::layering_ok(t, {2, 3}, cd.layers()));
}

TEST_CASE("validate_layering reports clauses") {
  KTree p = tight_path(3, 5);
  std::vector<Vertex> r{0, 1};
  CHECK(validate_layering(p, r, Layering({0, 1}, {{0}, {1}, {2}, {3}, {4}})).ok());
  auto merged = validate_layering(p, r, Layering({0, 1}, {{0}, {1}, {2, 3}, {4}}));
  CHECK(merged.violated == LayeringClause::L3);
  auto root_out = validate_layering(p, r, Layering({0, 1}, {{0}, {2}, {1}, {3}, {4}}));
  CHECK(root_out.violated == LayeringClause::L1);
  auto missing = validate_layering(p, r, Layering({0, 1}, {{0}, {1}, {2}, {3}}));
  CHECK(missing.violated == LayeringClause::partition);
  // L2: vertex 4 in layer 3 without an edge into layer 2.
  KTree star = KTree::from_ordered_edges(2, {{0, 1}, {0, 2}});
  auto l2 = validate_layering(star, std::vector<Vertex>{1}, Layering({1}, {{1}, {0}, {2}}));
  CHECK(l2.ok());
  auto bad_l2 = validate_layering(KTree::from_ordered_edges(2, {{0, 1}, {1, 2}}), std::vector<Vertex>{0},
                                  Layering({0}, {{0}, {1}, {}, {2}}));
  CHECK_FALSE(bad_l2.ok());
}

TEST_CASE("flatten on random trees") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    const std::size_t n = 10 + (seed * 7) % 191;
    KTree t = shuffled_tree(k, n, 2 + seed % 3, seed);
    auto shadow = t.shadow();
    const VertexSet& r = shadow[seed % shadow.size()];
    LayeredTree lt = flatten_rooted(t, r);
    const auto& l = lt.layering;
    REQUIRE(validate_layering(t, r, l).ok());
    REQUIRE(oracle::layering_ok(t, r, l.layers()));
    const double d = static_cast<double>(t.max_degree());
    for (std::size_t i = 0; i < l.size(); ++i) {
      REQUIRE(static_cast<double>(l.layers()[i].size()) <= std::pow(d, static_cast<double>(i)));
      if (i + 1 < l.size()) REQUIRE(l.layers()[i + 1].size() <= t.max_degree() * l.layers()[i].size());
    }
    // Layers congruent mod k lie in one class.
    auto classes = k_partition(t);
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = i + static_cast<std::size_t>(k); j < l.size(); j += static_cast<std::size_t>(k)) {
        auto cls = [&](Vertex v) {
          for (std::size_t c = 0; c < classes.size(); ++c)
            if (contains(classes[c], v)) return c;
          return classes.size();
        };
        REQUIRE(cls(l.layers()[i][0]) == cls(l.layers()[j][0]));
      }
  }
}

TEST_CASE("pseudopath small cases") {
  KTree p = tight_path(3, 6);
  auto whole = pseudopath_between(p, VertexSet{0, 1}, VertexSet{4, 5});
  CHECK(whole.length() == 4);
  CHECK(whole.edges.front() == VertexSet{0, 1, 2});
  CHECK(whole.edges.back() == VertexSet{3, 4, 5});

  auto s = pseudopath_between(star3(), VertexSet{1, 3}, VertexSet{1, 4});
  CHECK(s.edges == std::vector<VertexSet>{{1, 2, 3}, {1, 2, 4}});
  CHECK(oracle::all_pseudopaths(star3(), {1, 3}, {1, 4}).size() == 1);
  CHECK(distance(star3(), VertexSet{1, 3}, VertexSet{1, 4}) == 2);
  CHECK(distance(star3(), VertexSet{1, 3}, VertexSet{2, 3}) == 1);
  CHECK_THROWS_AS(pseudopath_between(star3(), VertexSet{1, 3}, VertexSet{1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(pseudopath_between(star3(), VertexSet{3, 4}, VertexSet{1, 3}), std::invalid_argument);

  CHECK(lies_on_pseudopath(whole, VertexSet{2, 3}));
  CHECK(lies_on_pseudopath(whole, VertexSet{0, 1}));
  CHECK(lies_on_pseudopath(whole, VertexSet{0, 2}));
  CHECK_FALSE(lies_on_pseudopath(whole, VertexSet{1, 3}));
  CHECK_FALSE(lies_on_pseudopath(whole, VertexSet{0, 3}));
}

TEST_CASE("pseudopaths match exhaustive enumeration") {
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    KTree t = shuffled_tree(k, 6 + seed % 6, 3, seed);
    auto shadow = t.shadow();
    for (std::size_t i = 0; i < shadow.size(); ++i)
      for (std::size_t j = 0; j < shadow.size(); ++j) {
        if (i == j) continue;
        auto all = oracle::all_pseudopaths(t, shadow[i], shadow[j]);
        REQUIRE(all.size() == 1);
        auto p = pseudopath_between(t, shadow[i], shadow[j]);
        REQUIRE(std::set<VertexSet>(p.edges.begin(), p.edges.end()) == *all.begin());
        REQUIRE(is_pseudopath(k, p.edges, shadow[i], shadow[j]));
        REQUIRE(p.length() == distance_by_bfs(t, shadow[i], shadow[j]));
        REQUIRE(p.length() == distance(t, shadow[j], shadow[i]));
        bool unit = set_intersection(shadow[i], shadow[j]).size() + 2 == static_cast<std::size_t>(k) &&
                    t.edge_index(set_union(shadow[i], shadow[j])) >= 0;
        REQUIRE((p.length() == 1) == unit);
        ++pairs;
      }
  }
  CHECK(pairs > 1000);
}

TEST_CASE("layered pseudopaths") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    KTree t = shuffled_tree(3, 40, 3, seed);
    auto shadow = t.shadow();
    const auto& a = shadow[seed % shadow.size()];
    const auto& b = shadow[(seed * 7 + 3) % shadow.size()];
    if (a == b) continue;
    auto p = pseudopath_between(t, a, b);
    Layering l = flatten(p.tree, p.f);
    REQUIRE(validate_layering(p.tree, p.f, l).ok());
    for (const auto& layer : l.layers()) REQUIRE(layer.size() <= 3 * p.tree.max_degree());
    auto first_layer = [&](const VertexSet& e) {
      int m = 1 << 30;
      for (Vertex v : e) m = std::min(m, l.layer_of(v));
      return m;
    };
    for (std::size_t j = 0; j + 1 < p.edges.size(); ++j) {
      int step = first_layer(p.edges[j + 1]) - first_layer(p.edges[j]);
      REQUIRE((step == 0 || step == 1));
    }
  }
}

TEST_CASE("induced subtrees and cuts") {
  KTree p = tight_path(3, 5);
  LayeredTree lt = flatten_rooted(p, VertexSet{0, 1});
  auto whole = induced_subtree(lt, VertexSet{0, 1});
  CHECK(std::set<VertexSet>(whole.sub.tree.edges().begin(), whole.sub.tree.edges().end()) ==
        std::set<VertexSet>(p.edges().begin(), p.edges().end()));
  auto tx = induced_subtree(lt, VertexSet{1, 2});
  CHECK(tx.sub.tree.edges() == std::vector<VertexSet>{{1, 2, 3}, {2, 3, 4}});
  CHECK(tx.rank == 2);
  auto leaf = induced_subtree(lt, VertexSet{3, 4});
  CHECK(leaf.edgeless);
  CHECK_THROWS_AS(induced_subtree(lt, VertexSet{0, 2}), std::invalid_argument);

  Cut c = cut_first_layer(lt);
  CHECK(c.first == std::vector<std::size_t>{0});
  CHECK(c.roots == std::vector<VertexSet>{{1, 2}});
  CHECK(c.ok());

  LayeredTree st = flatten_rooted(star3(), VertexSet{1, 2});
  Cut sc = cut_first_layer(st);
  CHECK(sc.first.size() == 3);
  CHECK(sc.roots == std::vector<VertexSet>{{2, 3}, {2, 4}, {2, 5}});
  for (const auto& s : sc.roots) CHECK(induced_subtree(st, s).edgeless);

  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    KTree t = shuffled_tree(k, 20 + seed % 80, 4, seed);
    LayeredTree l = flatten_rooted(t, t.shadow()[seed % t.shadow().size()]);
    SubtreeIndex idx(l);
    auto sh = l.tree.shadow();
    for (const auto& x : sh) {
      if (!is_layered(l.layering, x)) continue;
      Cut cx = cut_first_layer(idx, x);
      REQUIRE(cx.ok());
      REQUIRE(cx.first.size() <= t.max_degree());
      auto sub = induced_subtree(idx, x);
      REQUIRE(sub.edgeless == (idx.subtree_size(x) == 0));
      if (!sub.edgeless) {
        REQUIRE(sub.sub.tree.num_edges() == idx.subtree_size(x));
        REQUIRE(validate_layering(sub.sub.tree, l.layering.root_by_layer().size() ? sub.root : sub.root,
                                  Layering(sub.root, sub.sub.layering.layers()))
                    .violated != LayeringClause::partition);
      }
    }
  }
}

TEST_CASE("decompose_beta_d") {
  KTree p = tight_path(3, 30);
  LayeredTree lt = flatten_rooted(p, VertexSet{0, 1});
  auto one = decompose_beta_d(lt, 0.99, 1, 3);
  CHECK(one.parts.size() == 2);
  CHECK(validate_decomposition(lt, one).ok());
  CHECK_THROWS_AS(decompose_beta_d(lt, 0.1, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(decompose_beta_d(lt, 0.5, 1, 2), std::invalid_argument);

  KTree t = gen_random_ktree(3, 200, 3, 7);
  LayeredTree l = flatten_rooted(t, t.root());
  auto dec = decompose_beta_d(l, 0.3, 2, 3);
  auto check = validate_decomposition(l, dec);
  CHECK(check.ok());
  CHECK(dec.parts.size() <= 2 * 9 / 0.3);

  // Clause 5: a later part that reuses an earlier vertex.
  Decomposition overlap = dec;
  REQUIRE(overlap.parts.size() >= 2);
  overlap.parts[1].edges.push_back(overlap.parts[0].edges.front());
  CHECK_FALSE(validate_decomposition(l, overlap).ok());

  // Clause 6: lift d so every later root sits too shallow.
  Decomposition shallow = dec;
  shallow.d = 1000;
  shallow.beta = 0.999;
  auto c6 = validate_decomposition(l, shallow);
  CHECK(c6.clause == 6);

  Decomposition wrong_root = dec;
  std::swap(wrong_root.parts[0], wrong_root.parts[1]);
  CHECK(validate_decomposition(l, wrong_root).clause == 4);
}

TEST_CASE("decompositions of random trees") {
  std::size_t done = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    const std::size_t delta = std::max<std::size_t>(3, static_cast<std::size_t>(k));
    const int d = 1 + static_cast<int>(seed % 3);
    const double beta = 0.2 + 0.1 * static_cast<double>(seed % 4);
    KTree t = shuffled_tree(k, 200, delta, seed);
    const double dd = static_cast<double>(delta);
    if (static_cast<double>(t.num_edges()) < 2 * std::pow(dd, d) / beta) continue;
    LayeredTree l = flatten_rooted(t, t.shadow()[seed % t.shadow().size()]);
    auto dec = decompose_beta_d(l, beta, d, delta);
    auto c = validate_decomposition(l, dec);
    REQUIRE(c.ok());
    for (const auto& p : dec.parts)
      REQUIRE(static_cast<double>(p.edges.size()) >= beta * static_cast<double>(t.num_edges()) / (2 * std::pow(dd, d)));
    REQUIRE(static_cast<double>(dec.parts.size()) <= 2 * std::pow(dd, d) / beta);
    ++done;
  }
  CHECK(done > 300);
}

TEST_CASE("canonical forms") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    KTree a = shuffled_tree(k, 6, 3, seed);
    KTree b = shuffled_tree(k, 6, 3, seed + 1000);
    REQUIRE((canonical_form(a).code == canonical_form(b).code) == oracle::isomorphic(a, b));
    KTree ca = canonical_tree(a);
    REQUIRE(oracle::isomorphic(a, ca));
    REQUIRE(canonical_form(ca).code == canonical_form(a).code);
  }
}

TEST_CASE("enumerate_small_ktrees") {
  CHECK(enumerate_small_ktrees(2, 3).size() == 2);
  CHECK(enumerate_small_ktrees(3, 3).size() == 1);
  CHECK_THROWS_AS(enumerate_small_ktrees(3, 9, 10), BudgetExceeded);

  auto trees = enumerate_small_ktrees(2, 7);
  // Unlabelled trees on 2..7 vertices: 1, 1, 2, 3, 6, 11.
  std::map<std::size_t, std::size_t> count;
  std::map<std::size_t, double> labelled;
  for (const auto& t : trees) {
    ++count[t.n()];
    double fact = 1;
    for (std::size_t i = 2; i <= t.n(); ++i) fact *= static_cast<double>(i);
    labelled[t.n()] += fact / static_cast<double>(oracle::automorphisms(t));
  }
  CHECK(count == std::map<std::size_t, std::size_t>{{2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 6}, {7, 11}});
  for (int m = 2; m <= 7; ++m) {
    REQUIRE(labelled[static_cast<std::size_t>(m)] == doctest::Approx(std::pow(m, m - 2)));
    REQUIRE(static_cast<double>(oracle::labelled_trees(m)) == doctest::Approx(std::pow(m, m - 2)));
  }
  CHECK(static_cast<double>(trees.size()) <= std::pow(7.0, 14));

  auto three = enumerate_small_ktrees(3, 7);
  for (std::size_t i = 0; i < three.size(); ++i)
    for (std::size_t j = i + 1; j < three.size(); ++j)
      if (three[i].n() == three[j].n()) REQUIRE_FALSE(oracle::isomorphic(three[i], three[j]));
  CHECK(three.size() == 1 + 1 + 2 + 5 + 12);
}

TEST_CASE("separated X-tuple families") {
  KTree p = tight_path(3, 60);
  auto fam = find_separated_xfamily(p, 4);
  CHECK(fam.x.k() == 2);
  CHECK(fam.x.n() == 4);
  CHECK(fam.class_size == 56);
  for (const auto& b : fam.tuples) CHECK(is_xtuple(p, fam.x, b));
  for (std::size_t i = 0; i < fam.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < fam.tuples.size(); ++j)
      REQUIRE(tuple_distance(p, fam.tuples[i], fam.tuples[j]) >= 4);
  CHECK(fam.tuples.size() >= 60 / 8);

  // Leaves of the star share the anchor, so only one survives.
  auto leaves = find_separated_xfamily(star3(), 2);
  CHECK(leaves.x.n() == 2);
  CHECK(leaves.class_size == 3);
  CHECK(leaves.tuples.size() == 1);
  CHECK(tuple_distance(star3(), XTuple{{1, 2}, 3}, XTuple{{1, 2}, 4}) == 0);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    KTree t = shuffled_tree(3, 80, 3, seed);
    auto f = find_separated_xfamily(t, 3);
    REQUIRE(!f.tuples.empty());
    for (const auto& b : f.tuples) REQUIRE(is_xtuple(t, f.x, b));
    for (std::size_t i = 0; i < f.tuples.size(); ++i)
      for (std::size_t j = i + 1; j < f.tuples.size(); ++j) REQUIRE(tuple_distance(t, f.tuples[i], f.tuples[j]) >= 3);
    // Maximality: every dropped member is too close to a kept one.
    for (Vertex w : t.vertex_order()) {
      auto b = xtuple_at(t, f.code, w);
      if (!b) continue;
      std::size_t closest = SIZE_MAX;
      for (const auto& kept : f.tuples) closest = std::min(closest, tuple_distance(t, *b, kept));
      REQUIRE((closest < 3 || std::any_of(f.tuples.begin(), f.tuples.end(), [&](const XTuple& x) { return x.star == w; })));
    }
  }
}

TEST_CASE("tree files") {
  KTree t = shuffled_tree(3, 12, 3, 4);
  std::stringstream ss;
  write_tree(ss, t);
  KTree back = read_tree(ss);
  CHECK(back == t);
  std::istringstream bad("3 4\n0 1 2 3\n0 1 2\n0 1 3\n0 2 3\n");
  CHECK_THROWS_AS(read_tree(bad), ParseError);
  std::istringstream broken("3 4\n0 1 2 3\n0 1 2\n1 4 3\n");
  CHECK_THROWS_AS(read_tree(broken), ParseError);
}
