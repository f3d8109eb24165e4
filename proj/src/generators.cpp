#include "hypertree/generators.hpp"

#include <set>

namespace hypertree {

std::vector<int> hab_residues(int k) {
  std::vector<int> out;
  for (int i = 0; i <= k; ++i)
    if (i % 2 != (k / 2) % 2) out.push_back(i);
  return out;
}

Hypergraph gen_hab(int k, const VertexSet& a_in, const VertexSet& b_in) {
  VertexSet a = make_set(a_in), b = make_set(b_in);
  if (!set_intersection(a, b).empty()) throw std::invalid_argument("A and B overlap");
  VertexSet all = set_union(a, b);
  const std::size_t n = all.size();
  if (n < static_cast<std::size_t>(k)) throw std::invalid_argument("|A u B| must be at least k");
  if (all.back() + 1 != n) throw std::invalid_argument("A and B must cover [0, n)");
  VertexMask in_a = VertexMask::of(n, a);
  auto res = hab_residues(k);
  std::vector<char> allowed(static_cast<std::size_t>(k) + 1, 0);
  for (int i : res) allowed[static_cast<std::size_t>(i)] = 1;
  std::vector<std::vector<Vertex>> edges;
  std::vector<Vertex> comb(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = static_cast<Vertex>(i);
  do {
    std::size_t hits = 0;
    for (Vertex v : comb) hits += in_a.test(v);
    if (allowed[hits]) edges.push_back(comb);
  } while (next_combination(comb, n));
  Hypergraph h = Hypergraph::build(k, n, std::move(edges));
  const std::size_t lo = std::min(a.size(), b.size());
  if (lo + 1 > static_cast<std::size_t>(k) && min_codegree(h) < lo + 1 - static_cast<std::size_t>(k))
    throw std::logic_error("H(A, B) codegree bound violated");
  return h;
}

ExtremalInstance extremal_instance(const KTree& t) {
  auto classes = k_partition(t);
  const std::size_t n = t.n();
  std::set<std::size_t> sums;
  const std::size_t k = classes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) s += classes[i].size();
    sums.insert(s);
  }
  ExtremalInstance inst;
  inst.forbidden.assign(sums.begin(), sums.end());
  std::size_t a = n / 2;
  while (a > 0 && sums.count(a)) --a;
  // 0 is the empty union, so every a <= n/2 is blocked.
  if (sums.count(a)) throw std::invalid_argument("no admissible a(T): every size up to n/2 is a union of classes");
  inst.a_t = a;
  inst.f_t = n / 2 - a + static_cast<std::size_t>(t.k()) - 1;
  for (Vertex v = 0; v < n; ++v) (v < a ? inst.a : inst.b).push_back(v);
  inst.host = gen_hab(t.k(), inst.a, inst.b);
  return inst;
}

Hypergraph gen_binomial(int k, std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  Rng rng(seed);
  std::bernoulli_distribution keep(p);
  std::vector<std::vector<Vertex>> edges;
  std::vector<Vertex> comb(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = static_cast<Vertex>(i);
  if (n >= static_cast<std::size_t>(k)) {
    do
      if (keep(rng)) edges.push_back(comb);
    while (next_combination(comb, n));
  }
  return Hypergraph::build(k, n, std::move(edges));
}

KTree gen_random_ktree(int k, std::size_t n, std::size_t delta, std::uint64_t seed, int restarts) {
  if (k < 1 || n < static_cast<std::size_t>(k)) throw std::invalid_argument("need 1 <= k <= n");
  if (delta < 2 && n > static_cast<std::size_t>(k)) throw std::invalid_argument("delta must be at least 2");
  Rng rng(seed);
  const auto ku = static_cast<std::size_t>(k);
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<Vertex> order(ku);
    for (std::size_t i = 0; i < ku; ++i) order[i] = static_cast<Vertex>(i);
    std::vector<std::vector<Vertex>> edges{order};
    std::vector<std::size_t> degree(n, 0);
    for (Vertex v : order) degree[v] = 1;
    std::vector<VertexSet> shadow;
    std::set<VertexSet> seen;
    auto add_facets = [&](const VertexSet& e) {
      for (Vertex v : e) {
        VertexSet f = without(e, v);
        if (seen.insert(f).second) shadow.push_back(std::move(f));
      }
    };
    add_facets(order);
    bool stuck = false;
    std::vector<std::size_t> eligible;
    for (std::size_t next = ku; next < n; ++next) {
      eligible.clear();
      for (std::size_t i = 0; i < shadow.size(); ++i) {
        bool ok = true;
        for (Vertex v : shadow[i]) ok = ok && degree[v] < delta;
        if (ok) eligible.push_back(i);
      }
      if (eligible.empty()) {
        stuck = true;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
      const VertexSet f = shadow[eligible[pick(rng)]];
      const auto v = static_cast<Vertex>(next);
      VertexSet e = with(f, v);
      for (Vertex u : e) ++degree[u];
      order.push_back(v);
      edges.push_back(e);
      add_facets(e);
    }
    if (!stuck) return KTree::from_ordering(k, std::move(order), std::move(edges));
  }
  throw SearchFailure("random k-tree growth kept getting stuck under the degree cap");
}

}  // namespace hypertree
