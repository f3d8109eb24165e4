#pragma once

// Independent brute-force reference implementations used by the tests.
// Nothing here shares code paths with the library beyond the plain
// containers (Hypergraph::has_edge and KTree accessors).

#include <cstdint>
#include <set>
#include <vector>

#include "hypertree/hypergraph.hpp"
#include "hypertree/ktree.hpp"

namespace oracle {

using hypertree::Hypergraph;
using hypertree::KTree;
using hypertree::Vertex;
using hypertree::VertexSet;

// Edges containing f, by scanning the edge list.
std::size_t codegree(const Hypergraph& h, const VertexSet& f);
std::size_t joint_degree(const Hypergraph& h, const std::vector<VertexSet>& family, const std::vector<char>* within);
// Injective partner maps e_i -> x_i' with all 2^k cross sets edges.
std::size_t k22_count(const Hypergraph& h, const VertexSet& e, const std::vector<char>* within);

// Every (f, g)-pseudopath of T as an edge set, by depth-first search over
// edge sequences.
std::set<std::set<VertexSet>> all_pseudopaths(const KTree& t, const VertexSet& f, const VertexSet& g);

// L1-L3 written directly from the definition.
bool layering_ok(const KTree& t, const VertexSet& r, const std::vector<VertexSet>& layers);

// Isomorphism and automorphism count by trying all bijections.
bool isomorphic(const KTree& a, const KTree& b);
std::size_t automorphisms(const KTree& t);

// Labelled trees (k = 2) on m vertices, by testing every (m-1)-edge subset.
std::size_t labelled_trees(int m);

// All embeddings of T into H (vertex maps indexed by T's labels), by plain
// backtracking over T's vertex order. Stops after `limit` results.
std::vector<std::vector<Vertex>> all_embeddings(const Hypergraph& h, const KTree& t, std::size_t limit = SIZE_MAX);

// Ordered absorbing tuples (u_1..u_h, u*) for target (v_1..v_k), testing
// every tuple of distinct vertices against the definition.
std::size_t absorbing_tuples(const Hypergraph& h, const KTree& x, const std::vector<Vertex>& target);

}  // namespace oracle
