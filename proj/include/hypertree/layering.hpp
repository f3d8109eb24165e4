#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypertree/ktree.hpp"

namespace hypertree {

// Ordered partition L_1..L_m of a rooted k-tree's vertices.
class Layering {
 public:
  Layering() = default;
  Layering(VertexSet root, std::vector<VertexSet> layers);

  const VertexSet& root() const { return root_; }
  const std::vector<VertexSet>& layers() const { return layers_; }
  std::size_t size() const { return layers_.size(); }
  // 1-based layer index; 0 when v is not covered.
  int layer_of(Vertex v) const { return v < index_.size() ? index_[v] : 0; }
  // Root vertices ordered by layer.
  Tuple root_by_layer() const;

 private:
  VertexSet root_;
  std::vector<VertexSet> layers_;
  std::vector<int> index_;
};

// A tree stored in a root-first valid ordering together with a layering.
struct LayeredTree {
  KTree tree;
  Layering layering;
};

// Layering of (T, r). T is re-rooted so that r comes first (ordered by T's
// vertex order) and every later vertex is placed from its anchor's layers:
// into the gap when the anchor skips one layer, otherwise directly after it.
LayeredTree flatten_rooted(const KTree& t, std::span<const Vertex> r);
Layering flatten(const KTree& t, std::span<const Vertex> r);

enum class LayeringClause { none, partition, L1, L2, L3 };

struct LayeringCheck {
  LayeringClause violated = LayeringClause::none;
  std::string detail;
  bool ok() const { return violated == LayeringClause::none; }
};

LayeringCheck validate_layering(const KTree& t, std::span<const Vertex> r, const Layering& l);

// x meets k-1 consecutive layers, once each.
bool is_layered(const Layering& l, std::span<const Vertex> x);
// Index of the first layer met by x (1-based); 0 when x is not layered.
int layer_rank(const Layering& l, std::span<const Vertex> x);

// Parent/child structure of a layered tree used for induced subtrees.
class SubtreeIndex {
 public:
  explicit SubtreeIndex(const LayeredTree& lt);

  const LayeredTree& layered() const { return *lt_; }
  // Edge indices (into the layered tree's edge list) of T_x, increasing.
  std::vector<std::size_t> subtree_edges(std::span<const Vertex> x) const;
  std::size_t subtree_size(std::span<const Vertex> x) const;
  // Vertex of x in the lowest layer.
  Vertex top_vertex(std::span<const Vertex> x) const;

 private:
  const LayeredTree* lt_;
  std::map<VertexSet, std::vector<std::size_t>> anchored_;
  std::vector<std::vector<std::size_t>> kids_;
  std::vector<std::size_t> descendants_;
};

struct InducedSubtree {
  // Rooted at x with the inherited layering; tree is empty when edgeless.
  LayeredTree sub;
  bool edgeless = false;
  VertexSet root;
  // Rank of x in the parent layering.
  int rank = 0;
};

// Throws std::invalid_argument when x is not layered.
InducedSubtree induced_subtree(const LayeredTree& lt, std::span<const Vertex> x);
InducedSubtree induced_subtree(const SubtreeIndex& idx, std::span<const Vertex> x);

struct Cut {
  // Edge indices meeting the first layer of T_x.
  std::vector<std::size_t> first;
  // e minus the first-layer vertex, one per edge of `first`.
  std::vector<VertexSet> roots;
  bool ranks_ok = true;
  bool count_ok = true;
  bool partition_ok = true;
  bool ok() const { return ranks_ok && count_ok && partition_ok; }
};

// Cut of T_x (x = root of the layered tree by default) along its first layer.
Cut cut_first_layer(const LayeredTree& lt);
Cut cut_first_layer(const SubtreeIndex& idx, std::span<const Vertex> x);

}  // namespace hypertree
