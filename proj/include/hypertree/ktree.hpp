#pragma once

#include <map>
#include <vector>

#include "hypertree/types.hpp"

namespace hypertree {

// Tight k-tree with a stored valid ordering.
//
// Vertex ids are arbitrary distinct labels; per-vertex tables are indexed by
// label and sized to the largest label. Edges are stored sorted, in valid
// order. k = 1 is allowed so that link graphs of 2-trees are representable.
class KTree {
 public:
  KTree() = default;

  // Validates T1/T2 for the given vertex and edge order.
  static KTree from_ordering(int k, std::vector<Vertex> vertex_order, std::vector<std::vector<Vertex>> edges);
  // Edges in claimed valid order; e_1 contributes its ids in increasing order.
  static KTree from_ordered_edges(int k, std::vector<std::vector<Vertex>> edges);
  // Searches for a valid ordering of an unordered edge set.
  static KTree from_edges(int k, std::vector<std::vector<Vertex>> edges);

  // Valid ordering of the same edges whose first k-1 vertices are r, in the
  // given order. Throws if r is not in the shadow.
  KTree rooted_at(std::span<const Vertex> r) const;

  int k() const { return k_; }
  std::size_t n() const { return order_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Vertex>& vertex_order() const { return order_; }
  const std::vector<VertexSet>& edges() const { return edges_; }
  VertexSet vertices() const { return make_set(order_); }

  bool has_vertex(Vertex v) const { return v < pos_.size() && pos_[v] >= 0; }
  std::size_t position(Vertex v) const { return static_cast<std::size_t>(pos_.at(v)); }
  std::size_t label_bound() const { return pos_.size(); }

  // -1 for the first edge.
  long parent(std::size_t edge) const { return parent_[edge]; }
  const std::vector<std::size_t>& children(std::size_t edge) const { return children_[edge]; }
  // Vertex introduced by an edge; kNoVertex for e_1.
  Vertex new_vertex(std::size_t edge) const { return edge == 0 ? kNoVertex : order_[edge + k_ - 1]; }
  // Edge that introduced v (0 for the first k vertices).
  std::size_t introducing_edge(Vertex v) const;
  // Anchor of v; empty for the first k vertices.
  const VertexSet& anchor(Vertex v) const { return anchor_[v]; }
  // First k-1 vertices of the ordering, in order.
  Tuple root() const { return Tuple(order_.begin(), order_.begin() + (k_ - 1)); }
  // Anchor, except that v_k is anchored at the root.
  VertexSet rooted_anchor(Vertex v) const;

  const std::vector<std::size_t>& incident_edges(Vertex v) const { return incident_[v]; }
  std::size_t degree(Vertex v) const { return incident_[v].size(); }
  std::size_t max_degree() const;

  // Index of the edge equal to the set, or -1.
  long edge_index(std::span<const Vertex> set) const;
  // All distinct (k-1)-subsets of edges, sorted.
  std::vector<VertexSet> shadow() const;
  bool in_shadow(std::span<const Vertex> f) const;
  // Edge indices containing the (k-1)-set f.
  std::vector<std::size_t> edges_containing(std::span<const Vertex> f) const;

 private:
  void index();

  int k_ = 0;
  std::vector<Vertex> order_;
  std::vector<VertexSet> edges_;
  std::vector<long> pos_;
  std::vector<long> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<VertexSet> anchor_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<VertexSet, long> edge_ids_;
};

// Link of v: the (k-1)-tree of edges e - v over edges e containing v, in the
// order inherited from T.
KTree link_graph(const KTree& t, Vertex v);

// The unique k-partition; class i holds the class of v_{i+1}.
std::vector<VertexSet> k_partition(const KTree& t);

bool operator==(const KTree& a, const KTree& b);

}  // namespace hypertree
