#pragma once

#include <cstdint>

#include "hypertree/hypergraph.hpp"
#include "hypertree/ktree.hpp"

namespace hypertree {

// Residues i in {0..k} with i != floor(k/2) mod 2.
std::vector<int> hab_residues(int k);

// H(A, B) on A u B = [0, n): the k-sets meeting A in a residue from
// hab_residues(k). Throws when A and B overlap or do not cover [0, n).
Hypergraph gen_hab(int k, const VertexSet& a, const VertexSet& b);

struct ExtremalInstance {
  Hypergraph host;
  VertexSet a, b;
  std::size_t a_t = 0;
  std::size_t f_t = 0;
  // Sizes of unions of partition classes, sorted and deduplicated.
  std::vector<std::size_t> forbidden;
};

// a(T) is the largest a <= n/2 that is not the size of a union of classes
// of the k-partition; A = {0..a-1}, B = the rest.
ExtremalInstance extremal_instance(const KTree& t);

// Every k-subset of [0, n) independently with probability p, in lex order.
Hypergraph gen_binomial(int k, std::size_t n, double p, std::uint64_t seed);

// Random growth from the edge {0..k-1}: the next vertex is attached to a
// shadow set chosen uniformly among those whose vertices all have degree
// below delta. Restarts when no set qualifies; throws SearchFailure after
// `restarts` attempts. Vertex i is the i-th vertex of the valid ordering.
KTree gen_random_ktree(int k, std::size_t n, std::size_t delta, std::uint64_t seed, int restarts = 64);

}  // namespace hypertree
