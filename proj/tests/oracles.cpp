#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace oracle {

std::size_t codegree(const Hypergraph& h, const VertexSet& f) {
  std::size_t c = 0;
  for (const auto& e : h.edges()) c += std::includes(e.begin(), e.end(), f.begin(), f.end());
  return c;
}

std::size_t joint_degree(const Hypergraph& h, const std::vector<VertexSet>& family, const std::vector<char>* within) {
  std::size_t c = 0;
  for (Vertex v = 0; v < h.n(); ++v) {
    if (within && !(*within)[v]) continue;
    bool all = true;
    for (const auto& f : family) {
      if (std::find(f.begin(), f.end(), v) != f.end()) {
        all = false;
        break;
      }
      std::vector<Vertex> e(f.begin(), f.end());
      e.push_back(v);
      all = all && h.has_edge(e);
    }
    c += all;
  }
  return c;
}

std::size_t k22_count(const Hypergraph& h, const VertexSet& e, const std::vector<char>* within) {
  const std::size_t k = e.size();
  std::vector<Vertex> partner(k);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        std::vector<Vertex> s(k);
        for (std::size_t j = 0; j < k; ++j) s[j] = ((mask >> j) & 1U) ? partner[j] : e[j];
        if (!h.has_edge(s)) return;
      }
      ++count;
      return;
    }
    for (Vertex v = 0; v < h.n(); ++v) {
      if (std::find(e.begin(), e.end(), v) != e.end()) continue;
      if (std::find(partner.begin(), partner.begin() + static_cast<long>(i), v) != partner.begin() + static_cast<long>(i))
        continue;
      if (within && !(*within)[v]) continue;
      partner[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

std::set<std::set<VertexSet>> all_pseudopaths(const KTree& t, const VertexSet& f, const VertexSet& g) {
  std::set<std::set<VertexSet>> out;
  const auto& edges = t.edges();
  auto holds = [](const VertexSet& e, const VertexSet& s) { return std::includes(e.begin(), e.end(), s.begin(), s.end()); };
  std::vector<VertexSet> seq;
  std::function<void()> rec = [&]() {
    const VertexSet& last = seq.back();
    if (holds(last, g)) {
      out.insert(std::set<VertexSet>(seq.begin(), seq.end()));
      return;
    }
    std::set<Vertex> seen;
    for (const auto& e : seq) seen.insert(e.begin(), e.end());
    for (const auto& e : edges) {
      if (std::find(seq.begin(), seq.end(), e) != seq.end()) continue;
      if (holds(e, f)) continue;
      std::vector<Vertex> fresh;
      for (Vertex v : e)
        if (!seen.count(v)) fresh.push_back(v);
      if (fresh.size() != 1) continue;
      VertexSet anchor;
      for (Vertex v : e)
        if (v != fresh[0]) anchor.push_back(v);
      // The first earlier edge holding the anchor has to be the last one.
      std::size_t parent = seq.size();
      for (std::size_t j = 0; j < seq.size() && parent == seq.size(); ++j)
        if (holds(seq[j], anchor)) parent = j;
      if (parent + 1 != seq.size()) continue;
      seq.push_back(e);
      rec();
      seq.pop_back();
    }
  };
  for (const auto& e : edges) {
    if (!holds(e, f)) continue;
    seq = {e};
    if (holds(e, g)) {
      out.insert({e});
      continue;
    }
    rec();
  }
  return out;
}

bool layering_ok(const KTree& t, const VertexSet& r, const std::vector<VertexSet>& layers) {
  std::map<Vertex, std::size_t> at;
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (Vertex v : layers[i]) {
      if (at.count(v)) return false;
      at[v] = i;
    }
  if (at.size() != t.n()) return false;
  const std::size_t k = static_cast<std::size_t>(t.k());
  if (layers.empty() || layers[0].size() != 1) return false;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (i >= layers.size()) return false;
    std::size_t c = 0;
    for (Vertex v : r) c += at.count(v) && at[v] == i;
    if (c != 1) return false;
  }
  for (std::size_t i = 1; i < layers.size(); ++i)
    for (Vertex v : layers[i]) {
      bool ok = false;
      for (const auto& e : t.edges()) {
        if (std::find(e.begin(), e.end(), v) == e.end()) continue;
        for (Vertex w : e) ok = ok || at[w] + 1 == i;
      }
      if (!ok) return false;
    }
  for (const auto& e : t.edges()) {
    std::vector<std::size_t> ls;
    for (Vertex v : e) ls.push_back(at[v]);
    std::sort(ls.begin(), ls.end());
    for (std::size_t j = 0; j < ls.size(); ++j)
      if (ls[j] != ls[0] + j) return false;
  }
  return true;
}

namespace {

bool maps_onto(const KTree& a, const KTree& b, const std::vector<Vertex>& va, const std::vector<Vertex>& perm) {
  std::map<Vertex, Vertex> f;
  for (std::size_t i = 0; i < va.size(); ++i) f[va[i]] = perm[i];
  std::set<VertexSet> img;
  for (const auto& e : a.edges()) {
    VertexSet s;
    for (Vertex v : e) s.push_back(f[v]);
    std::sort(s.begin(), s.end());
    img.insert(s);
  }
  return img == std::set<VertexSet>(b.edges().begin(), b.edges().end());
}

}  // namespace

bool isomorphic(const KTree& a, const KTree& b) {
  if (a.k() != b.k() || a.n() != b.n() || a.num_edges() != b.num_edges()) return false;
  std::vector<Vertex> va = a.vertex_order(), vb = b.vertex_order();
  std::sort(vb.begin(), vb.end());
  do
    if (maps_onto(a, b, va, vb)) return true;
  while (std::next_permutation(vb.begin(), vb.end()));
  return false;
}

std::size_t automorphisms(const KTree& t) {
  std::vector<Vertex> va = t.vertex_order(), vb = va;
  std::sort(vb.begin(), vb.end());
  std::size_t c = 0;
  do c += maps_onto(t, t, va, vb);
  while (std::next_permutation(vb.begin(), vb.end()));
  return c;
}

std::size_t labelled_trees(int m) {
  if (m == 1) return 1;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  std::vector<char> pick(pairs.size(), 0);
  std::fill(pick.end() - (m - 1), pick.end(), 1);
  std::size_t count = 0;
  do {
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    bool acyclic = true;
    for (std::size_t i = 0; i < pairs.size() && acyclic; ++i) {
      if (!pick[i]) continue;
      int x = find(pairs[i].first), y = find(pairs[i].second);
      if (x == y) acyclic = false;
      parent[static_cast<std::size_t>(x)] = y;
    }
    count += acyclic;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return count;
}

std::vector<std::vector<Vertex>> all_embeddings(const Hypergraph& h, const KTree& t, std::size_t limit) {
  std::vector<std::vector<Vertex>> out;
  const auto& order = t.vertex_order();
  std::vector<Vertex> phi(t.label_bound(), hypertree::kNoVertex);
  std::vector<char> used(h.n(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == order.size()) {
      out.push_back(phi);
      return;
    }
    Vertex v = order[i];
    for (Vertex u = 0; u < h.n(); ++u) {
      if (used[u]) continue;
      phi[v] = u;
      bool ok = true;
      for (const auto& e : t.edges()) {
        if (std::find(e.begin(), e.end(), v) == e.end()) continue;
        std::vector<Vertex> img;
        for (Vertex w : e) img.push_back(phi[w]);
        if (std::find(img.begin(), img.end(), hypertree::kNoVertex) != img.end()) continue;
        ok = ok && h.has_edge(img);
      }
      if (ok) {
        used[u] = 1;
        rec(i + 1);
        used[u] = 0;
      }
      phi[v] = hypertree::kNoVertex;
    }
  };
  rec(0);
  return out;
}

std::size_t absorbing_tuples(const Hypergraph& h, const KTree& x, const std::vector<Vertex>& target) {
  const std::size_t hh = x.n();
  const std::size_t k = target.size();
  std::vector<Vertex> u(hh + 1);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == hh + 1) {
      Vertex star = u[hh];
      std::vector<Vertex> a(target.begin(), target.end() - 1);
      a.push_back(star);
      if (star == target[k - 1] || !h.has_edge(a)) return;
      for (const auto& e : x.edges()) {
        std::vector<Vertex> s1, s2;
        for (Vertex xi : e) s1.push_back(u[xi]);
        s2 = s1;
        s1.push_back(target[k - 1]);
        s2.push_back(star);
        if (!h.has_edge(s1) || !h.has_edge(s2)) return;
      }
      ++count;
      return;
    }
    for (Vertex v = 0; v < h.n(); ++v) {
      if (std::find(u.begin(), u.begin() + static_cast<long>(i), v) != u.begin() + static_cast<long>(i)) continue;
      u[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace oracle
