#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypertree/embedding.hpp"
#include "hypertree/layering.hpp"
#include "hypertree/params.hpp"
#include "hypertree/search.hpp"

namespace hypertree {

// Edges of h with exactly one vertex in each part.
Hypergraph partite_subgraph(const Hypergraph& h, const std::vector<VertexSet>& parts);

// Smallest codegree over the shadow; 0 for an edgeless graph.
std::size_t min_shadow_codegree(const Hypergraph& h);

// Deletes every edge through a shadow set of codegree below d m / k (m the
// largest part) until none is left, starting from the partite edges of h.
// Throws std::invalid_argument when the parts are not k disjoint sets or the
// partite edge count is below d m^k, and SearchFailure when the fixed point
// is empty.
Hypergraph clean_partite(const Hypergraph& h, const std::vector<VertexSet>& parts, double d);

struct ExtendOptions {
  // Host vertices that may not be used.
  const VertexMask* forbidden = nullptr;
  // Run a pinned search when the greedy step gets stuck.
  bool fallback_search = false;
  Deadline deadline;
  std::uint64_t seed = 0;
};

// Extends `partial`, which must map a prefix of t's vertex order containing
// every vertex of layers 1..ell_cut+k-1, to all of t. Vertices are taken in
// valid order; layer ell_cut+i goes to parts[(i-1) mod k], choosing the
// least unused neighbour of the anchor image in hp. Throws
// std::invalid_argument on a bad partial map and SearchFailure naming the
// stuck anchor image when the greedy (and the fallback, if enabled) fails.
Embedding extend_greedy(const Hypergraph& hp, const std::vector<VertexSet>& parts, const KTree& t, const Layering& l,
                        int ell_cut, const Embedding& partial, const ExtendOptions& opt = {});

// phi(L_{ell_cut+i}) inside parts[(i-1) mod k] for every mapped vertex past
// layer ell_cut.
bool layer_part_rule_ok(const std::vector<VertexSet>& parts, const Layering& l, int ell_cut, const Embedding& phi);

// Tuple predicate; the image is ordered by layer.
using TuplePredicate = std::function<bool(const Tuple& image)>;

struct TrunkSpec {
  // First layer t and width ell of the interval [t, t+ell].
  int t = 1;
  int ell = 0;
  // Middle layers t+k-1..t+ell-k+1 must land here (all vertices when null).
  const VertexMask* u = nullptr;
  // Shadow tuples of the first k-1 and last k-1 layers of the interval;
  // unchecked when empty.
  TuplePredicate f1, f2;
  Embedding pinned;
  // Per-label restrictions, intersected with u for the middle layers.
  std::vector<const VertexMask*> allowed;
  const VertexMask* forbidden = nullptr;
  // Extra condition on every placement, as in SearchProblem::accept.
  std::function<bool(Vertex v, Vertex c, const std::vector<Vertex>& phi)> accept;
  Deadline deadline;
  std::uint64_t seed = 0;
  std::size_t first_budget = 2000;
  int restarts = 10;
};

// Embedding of ti with the F_1 / F_2 / U clauses of the trunk contract,
// found by randomised restarting backtracking over ti's valid ordering.
// Returns an empty embedding for an empty tree. Throws SearchFailure when no
// assignment is found in time.
Embedding embed_trunk(const Hypergraph& h, const KTree& ti, const Layering& l, const TrunkSpec& spec);

struct TrunkCheck {
  bool ok = true;
  std::string detail;
};
TrunkCheck check_trunk(const Hypergraph& h, const KTree& ti, const Layering& l, const TrunkSpec& spec,
                       const Embedding& phi);

struct SubtreeResult {
  Embedding phi;
  // sigma[i] = part receiving class i (layers ell+i, ell+i+k, ...), 0-based.
  std::vector<int> sigma;
  std::size_t cleaned_edges = 0;
  std::size_t min_clean_codegree = 0;
};

struct SubtreeOptions {
  // Host restricted to theta-extensible edges; computed when null.
  const Hypergraph* extensible = nullptr;
  // Host vertices already taken by earlier parts.
  const VertexMask* forbidden = nullptr;
  // Require the layer 2..k tuples to be e-good (F_1 of the trunk step).
  bool require_e_good = true;
  // Enforce |V(T)| <= beta n.
  bool enforce_size = true;
  Deadline deadline;
};

// Embeds the layered tree lt with root ordering r onto the ordering f of a
// (k-1)-subset of the theta-extensible edge e, using f, the reservoir and the
// parts: cleaning of the extensible partite edges, trunk
// (layers 1..ell+k-1 and whatever precedes them in valid order) through the
// reservoir, greedy crown. Throws std::invalid_argument on violated
// preconditions and SearchFailure when a stage fails.
SubtreeResult embed_subtree(const Hypergraph& h, const VertexMask& reservoir, const std::vector<VertexSet>& parts,
                            const LayeredTree& lt, const Tuple& r, const VertexSet& e, const Tuple& f,
                            const PipelineParams& params, const SubtreeOptions& opt = {});

struct SubtreeCheck {
  // 0 when E1-E4 and validity hold; 1-4 for the first failed clause, 5 for
  // an invalid embedding.
  int clause = 0;
  std::string detail;
  bool ok() const { return clause == 0; }
};

SubtreeCheck check_subtree(const Hypergraph& h, const VertexMask& reservoir, const std::vector<VertexSet>& parts,
                           const LayeredTree& lt, const Tuple& r, const Tuple& f, std::size_t ell, double theta,
                           const Embedding& phi);

// (x'_1..x'_k) with x'_i partnered to the i-th smallest vertex of e: the 2^k
// cross sets are edges.
bool is_e_good(const Hypergraph& h, const VertexSet& e, const Tuple& partners);

}  // namespace hypertree
