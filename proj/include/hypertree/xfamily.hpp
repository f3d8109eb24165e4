#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypertree/ktree.hpp"

namespace hypertree {

// Isomorphism invariant of a small k-tree: the least sorted edge list over
// all valid orderings, vertices relabelled by position.
struct CanonicalForm {
  std::vector<std::uint8_t> code;
  // A valid vertex ordering achieving the code.
  std::vector<Vertex> order;
};

// Throws BudgetExceeded after `budget` search nodes.
CanonicalForm canonical_form(const KTree& t, std::size_t budget = 5'000'000);

// The tree relabelled 0..h-1 along the canonical ordering.
KTree canonical_tree(const KTree& t, std::size_t budget = 5'000'000);

// All k-trees on k..h vertices up to isomorphism, each in canonical
// labelling, ordered by vertex count and then by code.
std::vector<KTree> enumerate_small_ktrees(int k, int h, std::size_t budget = 2'000'000);

// (v_1, ..., v_h, v*) with x_i -> v_i an isomorphism from X onto T(v*).
struct XTuple {
  Tuple v;
  Vertex star = kNoVertex;
};

struct XTupleFamily {
  // (k-1)-tree on labels 0..h-1 with valid ordering 0, 1, ..., h-1.
  KTree x;
  std::vector<std::uint8_t> code;
  std::vector<XTuple> tuples;
  std::size_t separation = 0;
  // Vertices whose link is isomorphic to X.
  std::size_t class_size = 0;
  std::size_t classes = 0;
  // n / (h^(h(k-1)) (Delta + k)^(sep + 1)) with h = Delta + k - 1, the pigeonhole
  // lower bound; reported for comparison only.
  double bound = 0.0;
};

// Most frequent link class (ties: smaller code), then a greedy maximal
// `separation`-separated subfamily in increasing centre order. Centres in
// `excluded` are skipped. Needs k >= 2.
XTupleFamily find_separated_xfamily(const KTree& t, std::size_t separation,
                                    const std::vector<Vertex>& excluded = {});

// The X-tuple of T with centre w relative to the canonical labelling of
// T(w); empty when T(w) is not isomorphic to X.
std::optional<XTuple> xtuple_at(const KTree& t, const std::vector<std::uint8_t>& code, Vertex w);

bool is_xtuple(const KTree& t, const KTree& x, const XTuple& tuple);

// min d_T(f, g) over f in the shadow of T[a], g in the shadow of T[b]; 0 when
// the shadows share a set.
std::size_t tuple_distance(const KTree& t, const XTuple& a, const XTuple& b);

}  // namespace hypertree
