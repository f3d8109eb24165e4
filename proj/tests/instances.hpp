#pragma once

// Hand-built instances shared by the embedder tests and the acceptance run.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "hypertree/absorbing.hpp"
#include "hypertree/generators.hpp"
#include "hypertree/xfamily.hpp"

namespace inst {

using namespace hypertree;

inline KTree tight_path(int k, std::size_t n) {
  std::vector<std::vector<Vertex>> es;
  for (Vertex s = 0; s + k <= n; ++s) {
    std::vector<Vertex> e(static_cast<std::size_t>(k));
    std::iota(e.begin(), e.end(), s);
    es.push_back(e);
  }
  return KTree::from_ordered_edges(k, es);
}

inline Hypergraph complete(int k, std::size_t n) {
  std::vector<std::vector<Vertex>> es;
  std::vector<Vertex> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  do es.push_back(c);
  while (next_combination(c, n));
  return Hypergraph::build(k, n, es);
}

// phi0 embeds the first n - m vertices of t, A carries m separated X-tuples
// of t lying in that prefix, and the host contains phi0(T_0), every k-set
// through a leftover vertex or a centre image, and (unless complete) each
// other k-set with probability 1/2. Every queried target then has all of A
// absorbing it.
struct AbsorbInstance {
  Hypergraph h;
  KTree t;
  KTree x;
  Embedding phi0;
  std::vector<AbsorbingTuple> a;
  std::size_t m = 0;
};

inline std::optional<AbsorbInstance> absorb_instance(std::size_t n, std::uint64_t seed, bool complete_host) {
  const int k = 3;
  AbsorbInstance in;
  in.t = gen_random_ktree(k, n, 3, seed);
  XTupleFamily fam = find_separated_xfamily(in.t, 2);
  if (fam.tuples.empty()) return std::nullopt;
  const auto& order = in.t.vertex_order();
  std::vector<XTuple> use;
  for (std::size_t m = std::min<std::size_t>(3, fam.tuples.size()); m >= 1 && use.empty(); --m) {
    std::vector<XTuple> ok;
    for (const auto& b : fam.tuples) {
      bool inside = in.t.position(b.star) < n - m;
      for (Vertex v : b.v) inside = inside && in.t.position(v) < n - m;
      if (inside) ok.push_back(b);
    }
    if (ok.size() >= m) use.assign(ok.begin(), ok.begin() + static_cast<long>(m));
  }
  if (use.empty()) return std::nullopt;
  in.m = use.size();
  in.x = fam.x;

  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::vector<Vertex> psi(n);
  std::iota(psi.begin(), psi.end(), 0);
  std::shuffle(psi.begin(), psi.end(), rng);
  in.phi0 = Embedding(in.t.label_bound());
  for (std::size_t i = 0; i + in.m < n; ++i) in.phi0.set(order[i], psi[order[i]]);
  std::vector<char> special(n, 0);
  for (std::size_t i = n - in.m; i < n; ++i) special[psi[order[i]]] = 1;
  for (const auto& b : use) {
    AbsorbingTuple a;
    for (Vertex v : b.v) a.u.push_back(psi[v]);
    a.star = psi[b.star];
    special[a.star] = 1;
    in.a.push_back(a);
  }

  std::vector<std::vector<Vertex>> es;
  std::vector<Vertex> c{0, 1, 2};
  std::bernoulli_distribution coin(0.5);
  do {
    bool keep = complete_host || special[c[0]] || special[c[1]] || special[c[2]] || coin(rng);
    if (keep) es.push_back(c);
  } while (next_combination(c, n));
  for (const auto& e : in.t.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in.phi0.has(v); })) {
      auto img = in.phi0.image(e);
      std::sort(img.begin(), img.end());
      es.push_back(img);
    }
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  in.h = Hypergraph::build(k, n, es);
  return in;
}

}  // namespace inst
