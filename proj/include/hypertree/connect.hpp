#pragma once

#include <cstdint>
#include <vector>

#include "hypertree/hypergraph.hpp"
#include "hypertree/search.hpp"

namespace hypertree {

// (2k+1) floor(k/2) + 2k, the least admissible connection length.
std::size_t min_connect_length(int k);
// Length of the composed swap walk: 2k floor(k/2) + 1 (see swap_walk).
std::size_t swap_walk_length(int k);

// Walk from (a_1..a_k) to (a_k..a_1): the swap of a_j and a_{k-j+1} for
// j = 1..floor(k/2), each through helper u_j in
// N(a - a_j) and N(a - a_{k-j+1}). A single swap is the 3k-vertex walk
//   b, b with b_j -> u and b_{k-j+1} -> b_j, b with b_j and b_{k-j+1} swapped;
// consecutive swaps share their k-vertex end and start.
// Throws std::invalid_argument when a is not an edge, the helper count is
// not floor(k/2), or a helper misses a neighbourhood.
Walk build_swap_walk(const Hypergraph& h, const Tuple& a, const Tuple& helpers);

struct ConnectOptions {
  // Number of distinct walks wanted.
  std::size_t cap = 1;
  // Randomised constructions tried before giving up.
  std::size_t attempts = 400;
  Deadline deadline;
  std::uint64_t seed = 0;
};

// Walks of length exactly ell from f to g whose interior lies in u (all
// vertices when null) and avoids `avoid`, f and g. Construction: greedy tight
// path P1 from reversed g, bridge a_1 in N(f) and N(f''), ladder a_2..a_k,
// swap walk on (a_1..a_k), then the concatenation P2 P4 P3 reverse(P1); P1
// has length ell - 2k + 1 - 2k floor(k/2). Vertex choices are random per
// attempt; an attempt that gets stuck is discarded. Returns up to cap
// distinct walks, possibly none. Throws std::invalid_argument when ell is
// below min_connect_length(k) or f, g are not ordered shadow tuples.
std::vector<Walk> connect(const Hypergraph& h, const Tuple& f, const Tuple& g, std::size_t ell,
                          const VertexMask* u, const VertexMask* avoid, const ConnectOptions& opt = {});

// Walk checks used by tests and callers: walk_inspect, exact length, ends,
// interior inside u and outside avoid/f/g.
bool connect_walk_ok(const Hypergraph& h, const Walk& w, const Tuple& f, const Tuple& g, std::size_t ell,
                     const VertexMask* u, const VertexMask* avoid, std::string* why = nullptr);

}  // namespace hypertree
