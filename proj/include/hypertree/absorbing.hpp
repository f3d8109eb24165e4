#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypertree/embedding.hpp"
#include "hypertree/pseudopath.hpp"
#include "hypertree/search.hpp"
#include "hypertree/xfamily.hpp"

namespace hypertree {

// (u_1..u_h, u*); u[i] is the image of the i-th vertex of X, so the witness
// copy of X is x_i -> u[i].
struct AbsorbingTuple {
  Tuple u;
  Vertex star = kNoVertex;

  VertexSet vertices() const;
  bool operator==(const AbsorbingTuple& o) const = default;
};

// Clauses (A) and (B) for target (v_1..v_k), with X's labels 0..h-1.
bool is_absorbing(const Hypergraph& h, const KTree& x, const AbsorbingTuple& a, const Tuple& target);

struct AbsorbingSearchOptions {
  std::size_t cap = SIZE_MAX;
  // Random candidate order; lex order when unset.
  std::optional<std::uint64_t> shuffle_seed;
  // Host vertices the tuple may not use.
  const VertexMask* forbidden = nullptr;
  Deadline deadline;
};

// Absorbing tuples for target: u* over N(v_1..v_{k-1}) - v_k, then X's valid
// ordering inside the common link of v_k and u*. Stops at cap.
std::vector<AbsorbingTuple> find_absorbing_tuples(const Hypergraph& h, const KTree& x, const Tuple& target,
                                                  const AbsorbingSearchOptions& opt = {});

struct AbsorbingFamily {
  std::vector<AbsorbingTuple> tuples;
  // min over the checked targets of |Lambda_X(target) & A|.
  std::size_t min_coverage = 0;
  Tuple worst_target;
  std::size_t targets_checked = 0;
};

struct FamilyOptions {
  // Random targets used both to draw tuples and to measure coverage.
  std::size_t draws = 2000;
  std::size_t coverage_targets = 200;
  const VertexMask* forbidden = nullptr;
};

// Randomised greedy: draw a target, take one absorbing tuple for it disjoint
// from those kept, until floor(alpha n) are kept or the draws run out.
// Throws std::invalid_argument unless alpha > 0, SearchFailure when nothing
// is kept.
AbsorbingFamily select_absorbing_family(const Hypergraph& h, const KTree& x, double alpha, std::uint64_t seed,
                                        const FamilyOptions& opt = {});

// Covered iff the preimage of the tuple under phi is an X-tuple of t.
bool x_covered(const KTree& t, const KTree& x, const std::vector<Vertex>& inverse, const AbsorbingTuple& a);
// Inverse of phi as a host-indexed table (kNoVertex when unused).
std::vector<Vertex> inverse_map(const Embedding& phi, std::size_t n);

struct PinnedOptions {
  Deadline deadline;
  std::uint64_t seed = 0;
  // Host vertices unpinned tree vertices may not use.
  const VertexMask* forbidden = nullptr;
  // Orderings of P.f and P.g matched against x and y; sorted when empty.
  Tuple f_order, g_order;
  // Further pins.
  Embedding extra;
};

// Embedding of the pseudopath with phi(f) = x and phi(f') = y component-wise,
// by pinned restarting search over the path's valid ordering. Throws
// std::invalid_argument when x and y overlap or the sizes are wrong, and
// SearchFailure on timeout or when no embedding exists.
Embedding embed_pseudopath(const Hypergraph& h, const Pseudopath& p, const Tuple& x, const Tuple& y,
                           const PinnedOptions& opt = {});

struct CoverOptions {
  // Delta for the distance bounds; max vertex degree of the tree when 0.
  std::size_t delta = 0;
  std::size_t ell = 0;
  // Required separation; 2 Delta k (ell + 3k) when 0.
  std::size_t separation = 0;
  Deadline deadline;
  std::uint64_t seed = 0;
};

struct CoverResult {
  Embedding phi;
  // The X-tuples of the tree that carry A, in A's order.
  std::vector<XTuple> carriers;
};

// Embedding of t with phi(r) = f0 in which A_i is the image of B_i, the
// i-th tuple of B (sorted by distance from r) at distance at least
// Delta k (ell + 3k) from r; pseudopaths from the embedded part to each B_i
// are embedded in turn and the rest is completed by pinned search.
CoverResult cover_embedding(const Hypergraph& h, const std::vector<AbsorbingTuple>& a, const KTree& t,
                            const XTupleFamily& b, const Tuple& r, const Tuple& f0, const CoverOptions& opt = {});

struct AbsorbOptions {
  // Run validate_partial after every swap.
  bool validate_steps = false;
};

struct AbsorbResult {
  Embedding phi;
  std::size_t swaps = 0;
};

// Completes phi0, an embedding of the first n' vertices of t's valid
// ordering, by absorbing the remaining host vertices in increasing order:
// the tree vertex v_{n'+i+1} takes u* of an unused absorbing tuple for
// (phi(anchor), x_{i+1}) and the previous preimage of u* moves to x_{i+1}.
// Throws std::invalid_argument on a bad phi0 or family, SearchFailure
// naming the k-tuple when no unused tuple absorbs it.
AbsorbResult absorb_complete(const Hypergraph& h, const KTree& t, const Embedding& phi0, const KTree& x,
                             const std::vector<AbsorbingTuple>& a, const AbsorbOptions& opt = {});

}  // namespace hypertree
