#include "hypertree/pseudopath.hpp"

#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace hypertree {

namespace {

void check_endpoints(const KTree& t, const VertexSet& f, const VertexSet& g) {
  if (!t.in_shadow(f)) throw std::invalid_argument("tuple " + to_string(f) + " is not in the shadow");
  if (!t.in_shadow(g)) throw std::invalid_argument("tuple " + to_string(g) + " is not in the shadow");
  if (f == g) throw std::invalid_argument("pseudopath endpoints must differ");
}

}  // namespace

Pseudopath pseudopath_between(const KTree& t, std::span<const Vertex> f_in, std::span<const Vertex> g_in) {
  Pseudopath p;
  p.f = make_set({f_in.begin(), f_in.end()});
  p.g = make_set({g_in.begin(), g_in.end()});
  check_endpoints(t, p.f, p.g);
  VertexSet cf = p.f, cg = p.g;
  std::vector<VertexSet> front, back;
  std::optional<VertexSet> middle;
  const auto& order = t.vertex_order();
  const auto k = static_cast<std::size_t>(t.k());
  for (std::size_t i = order.size(); i-- > k;) {
    Vertex v = order[i];
    const VertexSet& e = t.edges()[i - k + 1];
    bool in_f = contains(cf, v), in_g = contains(cg, v);
    if (!in_f && !in_g) continue;
    if (in_f && in_g) {
      middle = e;
      break;
    }
    if (in_f) {
      front.push_back(e);
      cf = without(e, v);
    } else {
      back.push_back(e);
      cg = without(e, v);
    }
    if (cf == cg) break;
  }
  if (!middle && cf != cg) middle = t.edges()[0];
  p.edges = std::move(front);
  if (middle) p.edges.push_back(*middle);
  p.edges.insert(p.edges.end(), back.rbegin(), back.rend());
  std::vector<std::vector<Vertex>> es(p.edges.begin(), p.edges.end());
  // Start the vertex order with f so that its ids lead the first edge.
  std::vector<Vertex> vorder = p.f;
  for (const auto& e : p.edges)
    for (Vertex v : e)
      if (std::find(vorder.begin(), vorder.end(), v) == vorder.end()) vorder.push_back(v);
  p.tree = KTree::from_ordering(t.k(), std::move(vorder), std::move(es));
  return p;
}

std::size_t distance(const KTree& t, std::span<const Vertex> f, std::span<const Vertex> g) {
  return pseudopath_between(t, f, g).length();
}

std::vector<std::vector<std::size_t>> edge_adjacency(const KTree& t) {
  std::map<VertexSet, std::vector<std::size_t>> by_facet;
  for (std::size_t i = 0; i < t.num_edges(); ++i) {
    const VertexSet& e = t.edges()[i];
    for (Vertex v : e) by_facet[without(e, v)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> adj(t.num_edges());
  for (const auto& [facet, es] : by_facet)
    for (std::size_t a : es)
      for (std::size_t b : es)
        if (a != b) adj[a].push_back(b);
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

std::vector<std::size_t> edge_distances(const std::vector<std::vector<std::size_t>>& adjacency,
                                        const std::vector<std::size_t>& sources) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(adjacency.size(), inf);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources)
    if (dist[s] == inf) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b : adjacency[a])
      if (dist[b] == inf) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
  }
  return dist;
}

std::size_t distance_by_bfs(const KTree& t, std::span<const Vertex> f_in, std::span<const Vertex> g_in) {
  VertexSet f = make_set({f_in.begin(), f_in.end()}), g = make_set({g_in.begin(), g_in.end()});
  check_endpoints(t, f, g);
  auto dist = edge_distances(edge_adjacency(t), t.edges_containing(f));
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t e : t.edges_containing(g)) best = std::min(best, dist[e]);
  return best + 1;
}

bool lies_on_pseudopath(const Pseudopath& p, std::span<const Vertex> x_in) {
  VertexSet x = make_set({x_in.begin(), x_in.end()});
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    if (is_subset(x, p.edges[i])) hits.push_back(i);
  if (hits.size() == 2) return true;
  if (hits.size() != 1) return false;
  const int k = static_cast<int>(p.edges.front().size());
  std::vector<VertexSet> rev(p.edges.rbegin(), p.edges.rend());
  return is_pseudopath(k, p.edges, x, p.g) || is_pseudopath(k, rev, x, p.f);
}

bool is_pseudopath(int k, const std::vector<VertexSet>& edges, std::span<const Vertex> f_in,
                   std::span<const Vertex> g_in) {
  VertexSet f = make_set({f_in.begin(), f_in.end()}), g = make_set({g_in.begin(), g_in.end()});
  if (edges.empty()) return false;
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const VertexSet& e = edges[i];
    if (e.size() != static_cast<std::size_t>(k)) return false;
    if (is_subset(f, e) != (i == 0)) return false;
    if (is_subset(g, e) != (i + 1 == edges.size())) return false;
    if (i == 0) {
      seen.insert(e.begin(), e.end());
      continue;
    }
    std::vector<Vertex> fresh;
    for (Vertex v : e)
      if (!seen.count(v)) fresh.push_back(v);
    if (fresh.size() != 1) return false;
    VertexSet anchor = without(e, fresh[0]);
    // The parent is the first earlier edge holding the anchor; it must be
    // the immediately preceding edge.
    std::size_t parent = i;
    for (std::size_t j = 0; j < i && parent == i; ++j)
      if (is_subset(anchor, edges[j])) parent = j;
    if (parent + 1 != i) return false;
    seen.insert(fresh[0]);
  }
  return true;
}

}  // namespace hypertree
