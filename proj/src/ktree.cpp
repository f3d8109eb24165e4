#include "hypertree/ktree.hpp"

#include <set>

namespace hypertree {

namespace {

std::vector<VertexSet> normalise(int k, std::vector<std::vector<Vertex>> edges) {
  std::vector<VertexSet> out;
  out.reserve(edges.size());
  for (auto& e : edges) {
    VertexSet s = make_set(e);
    if (s.size() != e.size() || s.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("edge " + to_string(e) + " is not a set of " + std::to_string(k) + " ids");
    out.push_back(std::move(s));
  }
  return out;
}

void check_count(int k, std::size_t n, std::size_t m) {
  if (k < 1) throw std::invalid_argument("uniformity must be positive");
  if (n < static_cast<std::size_t>(k)) throw std::invalid_argument("a k-tree needs at least k vertices");
  if (m != n - static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("a k-tree on " + std::to_string(n) + " vertices has " +
                                std::to_string(n - static_cast<std::size_t>(k) + 1) + " edges, got " +
                                std::to_string(m));
}

template <class F>
void for_each_facet(const VertexSet& e, F&& f) {
  VertexSet facet(e.size() - 1);
  for (std::size_t skip = 0; skip < e.size(); ++skip) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != skip) facet[j++] = e[i];
    f(facet, e[skip]);
  }
}

// Grows a valid ordering from `first`, picking at every step the pending edge
// with the smallest index that adds exactly one new vertex.
bool grow(int k, const std::vector<VertexSet>& edges, std::size_t first, std::vector<Vertex> prefix,
          std::vector<Vertex>& order_out, std::vector<std::vector<Vertex>>& edges_out) {
  std::set<Vertex> seen(prefix.begin(), prefix.end());
  std::set<VertexSet> covered;
  std::vector<char> used(edges.size(), 0);
  used[first] = 1;
  for (Vertex v : edges[first])
    if (!seen.count(v)) prefix.push_back(v);
  seen.insert(edges[first].begin(), edges[first].end());
  for_each_facet(edges[first], [&](const VertexSet& f, Vertex) { covered.insert(f); });
  order_out = std::move(prefix);
  edges_out = {edges[first]};
  for (std::size_t step = 1; step < edges.size(); ++step) {
    bool found = false;
    for (std::size_t i = 0; i < edges.size() && !found; ++i) {
      if (used[i]) continue;
      Vertex fresh = kNoVertex;
      int count = 0;
      for (Vertex v : edges[i])
        if (!seen.count(v)) {
          fresh = v;
          ++count;
        }
      if (count != 1 || !covered.count(without(edges[i], fresh))) continue;
      used[i] = 1;
      seen.insert(fresh);
      order_out.push_back(fresh);
      edges_out.push_back(edges[i]);
      for_each_facet(edges[i], [&](const VertexSet& f, Vertex) { covered.insert(f); });
      found = true;
    }
    if (!found) return false;
  }
  (void)k;
  return true;
}

}  // namespace

KTree KTree::from_ordering(int k, std::vector<Vertex> vertex_order, std::vector<std::vector<Vertex>> edges) {
  check_count(k, vertex_order.size(), edges.size());
  KTree t;
  t.k_ = k;
  t.order_ = std::move(vertex_order);
  t.edges_ = normalise(k, std::move(edges));
  Vertex top = *std::max_element(t.order_.begin(), t.order_.end());
  t.pos_.assign(static_cast<std::size_t>(top) + 1, -1);
  for (std::size_t i = 0; i < t.order_.size(); ++i) {
    if (t.pos_[t.order_[i]] >= 0) throw std::invalid_argument("vertex order repeats " + std::to_string(t.order_[i]));
    t.pos_[t.order_[i]] = static_cast<long>(i);
  }
  const auto ku = static_cast<std::size_t>(k);
  if (make_set({t.order_.begin(), t.order_.begin() + k}) != t.edges_[0])
    throw std::invalid_argument("first edge must consist of the first k vertices");
  for (std::size_t i = 1; i < t.edges_.size(); ++i) {
    const VertexSet& e = t.edges_[i];
    Vertex v = t.order_[i + ku - 1];
    for (Vertex u : e) {
      if (u >= t.pos_.size() || t.pos_[u] < 0)
        throw std::invalid_argument("edge " + to_string(e) + " uses a vertex missing from the order");
      if (u != v && static_cast<std::size_t>(t.pos_[u]) > i + ku - 1)
        throw std::invalid_argument("edge " + std::to_string(i + 1) + " " + to_string(e) +
                                    " adds more than one new vertex (T1)");
    }
    if (!contains(e, v))
      throw std::invalid_argument("edge " + std::to_string(i + 1) + " " + to_string(e) + " does not introduce vertex " +
                                  std::to_string(v) + " (T1)");
  }
  t.index();
  return t;
}

KTree KTree::from_ordered_edges(int k, std::vector<std::vector<Vertex>> edges) {
  if (edges.empty()) throw std::invalid_argument("a k-tree has at least one edge");
  auto sets = normalise(k, edges);
  std::vector<Vertex> order(sets[0].begin(), sets[0].end());
  std::set<Vertex> seen(order.begin(), order.end());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<Vertex> fresh;
    for (Vertex v : sets[i])
      if (!seen.count(v)) fresh.push_back(v);
    if (fresh.size() != 1)
      throw std::invalid_argument("edge " + std::to_string(i + 1) + " " + to_string(sets[i]) +
                                  " must add exactly one new vertex (T1)");
    order.push_back(fresh[0]);
    seen.insert(fresh[0]);
  }
  return from_ordering(k, std::move(order), std::move(edges));
}

KTree KTree::from_edges(int k, std::vector<std::vector<Vertex>> edges) {
  auto sets = normalise(k, std::move(edges));
  std::set<Vertex> all;
  for (const auto& e : sets) all.insert(e.begin(), e.end());
  check_count(k, all.size(), sets.size());
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end()) throw std::invalid_argument("duplicate edge");
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> ordered;
  for (std::size_t first = 0; first < sets.size(); ++first)
    if (grow(k, sets, first, {}, order, ordered)) return from_ordering(k, std::move(order), std::move(ordered));
  throw std::invalid_argument("edges do not form a k-tree (no valid ordering exists)");
}

KTree KTree::rooted_at(std::span<const Vertex> r) const {
  VertexSet rs = make_set({r.begin(), r.end()});
  if (rs.size() != r.size() || rs.size() + 1 != static_cast<std::size_t>(k_) || !in_shadow(rs))
    throw std::invalid_argument("root " + to_string(r) + " is not in the shadow");
  auto first = edges_containing(rs);
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> ordered;
  if (!grow(k_, edges_, first.front(), {r.begin(), r.end()}, order, ordered))
    throw std::logic_error("re-rooting failed on a valid k-tree");
  return from_ordering(k_, std::move(order), std::move(ordered));
}

void KTree::index() {
  const std::size_t m = edges_.size();
  const auto ku = static_cast<std::size_t>(k_);
  parent_.assign(m, -1);
  children_.assign(m, {});
  anchor_.assign(pos_.size(), {});
  incident_.assign(pos_.size(), {});
  edge_ids_.clear();
  std::map<VertexSet, std::size_t> first_container;
  for (std::size_t i = 0; i < m; ++i) {
    const VertexSet& e = edges_[i];
    if (!edge_ids_.emplace(e, static_cast<long>(i)).second) throw std::invalid_argument("duplicate edge " + to_string(e));
    for (Vertex v : e) incident_[v].push_back(i);
    if (i > 0) {
      Vertex v = order_[i + ku - 1];
      VertexSet a = without(e, v);
      auto it = first_container.find(a);
      if (it == first_container.end())
        throw std::invalid_argument("edge " + std::to_string(i + 1) + " " + to_string(e) +
                                    ": no earlier edge contains its anchor (T2)");
      parent_[i] = static_cast<long>(it->second);
      children_[it->second].push_back(i);
      anchor_[v] = std::move(a);
    }
    for_each_facet(e, [&](const VertexSet& f, Vertex) { first_container.emplace(f, i); });
  }
}

std::size_t KTree::introducing_edge(Vertex v) const {
  std::size_t p = position(v);
  const auto ku = static_cast<std::size_t>(k_);
  return p < ku ? 0 : p - ku + 1;
}

VertexSet KTree::rooted_anchor(Vertex v) const {
  if (position(v) + 1 == static_cast<std::size_t>(k_)) return make_set(root());
  return anchor_[v];
}

std::size_t KTree::max_degree() const {
  std::size_t d = 0;
  for (const auto& inc : incident_) d = std::max(d, inc.size());
  return d;
}

long KTree::edge_index(std::span<const Vertex> set) const {
  auto it = edge_ids_.find(make_set({set.begin(), set.end()}));
  return it == edge_ids_.end() ? -1 : it->second;
}

std::vector<VertexSet> KTree::shadow() const {
  std::set<VertexSet> out;
  for (const auto& e : edges_) for_each_facet(e, [&](const VertexSet& f, Vertex) { out.insert(f); });
  return {out.begin(), out.end()};
}

std::vector<std::size_t> KTree::edges_containing(std::span<const Vertex> f) const {
  std::vector<std::size_t> out;
  if (f.empty()) {
    for (std::size_t i = 0; i < edges_.size(); ++i) out.push_back(i);
    return out;
  }
  VertexSet s = make_set({f.begin(), f.end()});
  if (!has_vertex(s[0])) return out;
  for (std::size_t i : incident_[s[0]])
    if (is_subset(s, edges_[i])) out.push_back(i);
  return out;
}

bool KTree::in_shadow(std::span<const Vertex> f) const {
  if (f.size() + 1 != static_cast<std::size_t>(k_)) return false;
  for (Vertex v : f)
    if (!has_vertex(v)) return false;
  return !edges_containing(f).empty();
}

KTree link_graph(const KTree& t, Vertex v) {
  if (t.k() < 2) throw std::invalid_argument("link graphs need k >= 2");
  if (!t.has_vertex(v) || t.degree(v) == 0) throw std::invalid_argument("vertex " + std::to_string(v) + " has degree 0");
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i : t.incident_edges(v)) edges.push_back(without(t.edges()[i], v));
  return KTree::from_ordered_edges(t.k() - 1, std::move(edges));
}

std::vector<VertexSet> k_partition(const KTree& t) {
  const auto k = static_cast<std::size_t>(t.k());
  std::vector<int> cls(t.label_bound(), -1);
  std::vector<VertexSet> out(k);
  const auto& order = t.vertex_order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    if (i < k) {
      cls[v] = static_cast<int>(i);
    } else {
      std::vector<char> present(k, 0);
      for (Vertex a : t.anchor(v)) present[static_cast<std::size_t>(cls[a])] = 1;
      cls[v] = static_cast<int>(std::find(present.begin(), present.end(), 0) - present.begin());
    }
    out[static_cast<std::size_t>(cls[v])].push_back(v);
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

bool operator==(const KTree& a, const KTree& b) {
  return a.k() == b.k() && a.vertex_order() == b.vertex_order() && a.edges() == b.edges();
}

}  // namespace hypertree
