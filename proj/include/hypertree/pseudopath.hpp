#pragma once

#include <vector>

#include "hypertree/ktree.hpp"

namespace hypertree {

// The unique (f, g)-pseudopath of a k-tree, edges listed from the f end.
struct Pseudopath {
  VertexSet f, g;
  std::vector<VertexSet> edges;
  // The edges as a k-tree in the same order.
  KTree tree;

  std::size_t length() const { return edges.size(); }
};

// Follows the inductive construction: peel vertices from the end of T's
// valid ordering, collecting the last edge whenever the peeled vertex lies in
// exactly one of the current endpoints. Throws std::invalid_argument when f or
// g is not in the shadow or f == g.
Pseudopath pseudopath_between(const KTree& t, std::span<const Vertex> f, std::span<const Vertex> g);

std::size_t distance(const KTree& t, std::span<const Vertex> f, std::span<const Vertex> g);

// Distance from shortest paths between edges sharing k-1 vertices. Used as a
// cross-check of pseudopath_between and for multi-source queries.
std::size_t distance_by_bfs(const KTree& t, std::span<const Vertex> f, std::span<const Vertex> g);

// x is contained in exactly two edges of p, or p is an (x, y)-pseudopath for
// some y.
bool lies_on_pseudopath(const Pseudopath& p, std::span<const Vertex> x);

// Checks that the edge list is a pseudopath from f to g: a valid ordering in
// which every edge but the last has the next one as its only child, with f
// only in the first edge and g only in the last.
bool is_pseudopath(int k, const std::vector<VertexSet>& edges, std::span<const Vertex> f,
                   std::span<const Vertex> g);

// Edge-adjacency of a k-tree: two edges are adjacent when they share k-1
// vertices. adjacency[i] is sorted.
std::vector<std::vector<std::size_t>> edge_adjacency(const KTree& t);

// Multi-source BFS over edge_adjacency; dist[i] = hops from the nearest
// source, or SIZE_MAX when unreachable.
std::vector<std::size_t> edge_distances(const std::vector<std::vector<std::size_t>>& adjacency,
                                        const std::vector<std::size_t>& sources);

}  // namespace hypertree
