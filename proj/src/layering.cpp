#include "hypertree/layering.hpp"

#include <set>

namespace hypertree {

Layering::Layering(VertexSet root, std::vector<VertexSet> layers) : root_(std::move(root)), layers_(std::move(layers)) {
  Vertex top = 0;
  for (const auto& l : layers_)
    for (Vertex v : l) top = std::max(top, v);
  index_.assign(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t i = 0; i < layers_.size(); ++i)
    for (Vertex v : layers_[i]) index_[v] = static_cast<int>(i + 1);
}

Tuple Layering::root_by_layer() const {
  Tuple r(root_.begin(), root_.end());
  std::sort(r.begin(), r.end(), [&](Vertex a, Vertex b) { return layer_of(a) < layer_of(b); });
  return r;
}

LayeredTree flatten_rooted(const KTree& t, std::span<const Vertex> r) {
  if (t.k() < 2) throw std::invalid_argument("layerings need k >= 2");
  VertexSet rs = make_set({r.begin(), r.end()});
  if (!t.in_shadow(rs)) throw std::invalid_argument("root " + to_string(r) + " is not in the shadow");
  Tuple ordered(rs.begin(), rs.end());
  std::sort(ordered.begin(), ordered.end(), [&](Vertex a, Vertex b) { return t.position(a) < t.position(b); });
  KTree rooted = t.rooted_at(ordered);
  const auto k = static_cast<std::size_t>(t.k());
  std::vector<int> layer(rooted.label_bound(), 0);
  std::vector<VertexSet> layers;
  auto place = [&](Vertex v, int l) {
    layer[v] = l;
    if (layers.size() < static_cast<std::size_t>(l)) layers.resize(static_cast<std::size_t>(l));
    layers[static_cast<std::size_t>(l - 1)].push_back(v);
  };
  const auto& order = rooted.vertex_order();
  for (std::size_t i = 0; i + 1 < k; ++i) place(order[i], static_cast<int>(i + 1));
  for (std::size_t i = k - 1; i < order.size(); ++i) {
    Vertex v = order[i];
    std::vector<int> ls;
    for (Vertex a : rooted.rooted_anchor(v)) ls.push_back(layer[a]);
    std::sort(ls.begin(), ls.end());
    int lo = ls.front(), hi = ls.back();
    if (hi - lo == static_cast<int>(k) - 2) {
      place(v, hi + 1);
    } else {
      int gap = lo + 1;
      for (std::size_t j = 1; j < ls.size() && ls[j] == gap; ++j) ++gap;
      place(v, gap);
    }
  }
  for (auto& l : layers) std::sort(l.begin(), l.end());
  return LayeredTree{std::move(rooted), Layering(rs, std::move(layers))};
}

Layering flatten(const KTree& t, std::span<const Vertex> r) { return flatten_rooted(t, r).layering; }

LayeringCheck validate_layering(const KTree& t, std::span<const Vertex> r, const Layering& l) {
  LayeringCheck c;
  auto fail = [&](LayeringClause cl, std::string d) {
    c.violated = cl;
    c.detail = std::move(d);
    return c;
  };
  const auto k = static_cast<std::size_t>(t.k());
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < l.layers().size(); ++i) {
    if (l.layers()[i].empty()) return fail(LayeringClause::partition, "layer " + std::to_string(i + 1) + " is empty");
    for (Vertex v : l.layers()[i]) {
      if (!t.has_vertex(v)) return fail(LayeringClause::partition, "vertex " + std::to_string(v) + " not in tree");
      if (!seen.insert(v).second) return fail(LayeringClause::partition, "vertex " + std::to_string(v) + " repeated");
    }
  }
  if (seen.size() != t.n()) return fail(LayeringClause::partition, "layers do not cover the tree");

  VertexSet rs = make_set({r.begin(), r.end()});
  if (rs.size() + 1 != k) return fail(LayeringClause::L1, "root has the wrong size");
  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::size_t hits = 0;
    if (i < l.layers().size())
      for (Vertex v : l.layers()[i]) hits += contains(rs, v);
    if (hits != 1) return fail(LayeringClause::L1, "root meets layer " + std::to_string(i + 1) + " " + std::to_string(hits) + " times");
  }
  if (l.layers()[0].size() != 1) return fail(LayeringClause::L1, "first layer is not a singleton");

  for (std::size_t i = 1; i < l.layers().size(); ++i) {
    for (Vertex v : l.layers()[i]) {
      bool ok = false;
      for (std::size_t e : t.incident_edges(v)) {
        for (Vertex w : t.edges()[e]) ok = ok || l.layer_of(w) == static_cast<int>(i);
        if (ok) break;
      }
      if (!ok)
        return fail(LayeringClause::L2, "vertex " + std::to_string(v) + " in layer " + std::to_string(i + 1) +
                                            " has no edge into layer " + std::to_string(i));
    }
  }

  for (const auto& e : t.edges()) {
    std::vector<int> ls;
    for (Vertex v : e) ls.push_back(l.layer_of(v));
    std::sort(ls.begin(), ls.end());
    for (std::size_t j = 1; j < ls.size(); ++j)
      if (ls[j] != ls[j - 1] + 1) return fail(LayeringClause::L3, "edge " + to_string(e) + " does not meet consecutive layers");
  }
  return c;
}

bool is_layered(const Layering& l, std::span<const Vertex> x) { return layer_rank(l, x) > 0; }

int layer_rank(const Layering& l, std::span<const Vertex> x) {
  std::vector<int> ls;
  for (Vertex v : x) {
    int i = l.layer_of(v);
    if (i == 0) return 0;
    ls.push_back(i);
  }
  if (ls.empty()) return 0;
  std::sort(ls.begin(), ls.end());
  for (std::size_t j = 1; j < ls.size(); ++j)
    if (ls[j] != ls[j - 1] + 1) return 0;
  return ls.front();
}

SubtreeIndex::SubtreeIndex(const LayeredTree& lt) : lt_(&lt) {
  const KTree& t = lt.tree;
  const std::size_t m = t.num_edges();
  const VertexSet root = make_set(t.root());
  anchored_[root].push_back(0);
  for (std::size_t i = 1; i < m; ++i) anchored_[t.anchor(t.new_vertex(i))].push_back(i);
  // Edges anchored at the root are siblings of e_1 in T_r, not its children.
  kids_.assign(m, {});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c : t.children(i))
      if (i != 0 || t.anchor(t.new_vertex(c)) != root) kids_[i].push_back(c);
  descendants_.assign(m, 1);
  for (std::size_t i = m; i-- > 0;)
    for (std::size_t c : kids_[i]) descendants_[i] += descendants_[c];
}

std::vector<std::size_t> SubtreeIndex::subtree_edges(std::span<const Vertex> x) const {
  std::vector<std::size_t> out;
  auto it = anchored_.find(make_set({x.begin(), x.end()}));
  if (it == anchored_.end()) return out;
  std::vector<std::size_t> stack(it->second.begin(), it->second.end());
  while (!stack.empty()) {
    std::size_t e = stack.back();
    stack.pop_back();
    out.push_back(e);
    for (std::size_t c : kids_[e]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SubtreeIndex::subtree_size(std::span<const Vertex> x) const {
  auto it = anchored_.find(make_set({x.begin(), x.end()}));
  if (it == anchored_.end()) return 0;
  std::size_t s = 0;
  for (std::size_t e : it->second) s += descendants_[e];
  return s;
}

Vertex SubtreeIndex::top_vertex(std::span<const Vertex> x) const {
  const Layering& l = lt_->layering;
  return *std::min_element(x.begin(), x.end(), [&](Vertex a, Vertex b) { return l.layer_of(a) < l.layer_of(b); });
}

InducedSubtree induced_subtree(const SubtreeIndex& idx, std::span<const Vertex> x) {
  const LayeredTree& lt = idx.layered();
  InducedSubtree out;
  out.root = make_set({x.begin(), x.end()});
  out.rank = layer_rank(lt.layering, out.root);
  if (out.rank == 0 || out.root.size() + 1 != static_cast<std::size_t>(lt.tree.k()))
    throw std::invalid_argument("tuple " + to_string(x) + " is not layered");
  auto edges = idx.subtree_edges(out.root);
  Tuple order = out.root;
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return lt.layering.layer_of(a) < lt.layering.layer_of(b); });
  const int base = out.rank;
  std::vector<VertexSet> layers;
  auto place = [&](Vertex v) {
    auto l = static_cast<std::size_t>(lt.layering.layer_of(v) - base);
    if (layers.size() <= l) layers.resize(l + 1);
    layers[l].push_back(v);
  };
  for (Vertex v : order) place(v);
  if (edges.empty()) {
    out.edgeless = true;
    out.sub.layering = Layering(out.root, std::move(layers));
    return out;
  }
  std::vector<std::vector<Vertex>> es;
  for (std::size_t e : edges) {
    es.push_back(lt.tree.edges()[e]);
    Vertex v = e == 0 ? lt.tree.vertex_order()[static_cast<std::size_t>(lt.tree.k() - 1)] : lt.tree.new_vertex(e);
    order.push_back(v);
    place(v);
  }
  for (auto& l : layers) std::sort(l.begin(), l.end());
  out.sub.tree = KTree::from_ordering(lt.tree.k(), std::move(order), std::move(es));
  out.sub.layering = Layering(out.root, std::move(layers));
  return out;
}

InducedSubtree induced_subtree(const LayeredTree& lt, std::span<const Vertex> x) {
  SubtreeIndex idx(lt);
  return induced_subtree(idx, x);
}

Cut cut_first_layer(const SubtreeIndex& idx, std::span<const Vertex> x) {
  const LayeredTree& lt = idx.layered();
  Cut c;
  VertexSet xs = make_set({x.begin(), x.end()});
  int rank = layer_rank(lt.layering, xs);
  if (rank == 0) throw std::invalid_argument("tuple " + to_string(x) + " is not layered");
  Vertex u = idx.top_vertex(xs);
  auto all = idx.subtree_edges(xs);
  for (std::size_t e : all)
    if (contains(lt.tree.edges()[e], u)) {
      c.first.push_back(e);
      c.roots.push_back(without(lt.tree.edges()[e], u));
    }
  std::vector<std::size_t> covered = c.first;
  for (const auto& s : c.roots) {
    c.ranks_ok = c.ranks_ok && layer_rank(lt.layering, s) == rank + 1;
    auto sub = idx.subtree_edges(s);
    covered.insert(covered.end(), sub.begin(), sub.end());
  }
  std::sort(covered.begin(), covered.end());
  c.partition_ok = covered == all;
  std::set<VertexSet> distinct(c.roots.begin(), c.roots.end());
  c.count_ok = distinct.size() == c.roots.size() && c.first.size() <= lt.tree.max_degree();
  return c;
}

Cut cut_first_layer(const LayeredTree& lt) {
  SubtreeIndex idx(lt);
  return cut_first_layer(idx, lt.layering.root());
}

}  // namespace hypertree
