#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypertree/types.hpp"

namespace hypertree {

// Immutable k-uniform hypergraph on vertex ids [0, n).
//
// Edges are stored sorted; every (k-1)-subset of an edge is indexed to its
// sorted list of completing vertices and to a bitset of the same.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Throws std::invalid_argument on wrong arity, ids out of range or
  // duplicate edges.
  static Hypergraph build(int k, std::size_t n, std::vector<std::vector<Vertex>> edges);

  int k() const { return k_; }
  std::size_t n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  // Lexicographically sorted.
  const std::vector<VertexSet>& edges() const { return edges_; }

  // ids in any order; false for wrong size or repeated ids.
  bool has_edge(std::span<const Vertex> ids) const;

  // Completing vertices of a (k-1)-set given in any order; empty when the
  // set is not in the shadow.
  std::span<const Vertex> neighbours(std::span<const Vertex> f) const;
  std::size_t codegree(std::span<const Vertex> f) const { return neighbours(f).size(); }
  // nullptr when f is not in the shadow.
  const std::uint64_t* neighbour_bits(std::span<const Vertex> f) const;
  std::size_t words() const { return words_; }

  bool in_shadow(std::span<const Vertex> f) const { return shadow_index(f) >= 0; }
  // Sorted list of all (k-1)-sets contained in some edge.
  const std::vector<VertexSet>& shadow() const { return shadow_; }
  std::span<const Vertex> shadow_neighbours(std::size_t i) const { return nbrs_[i]; }
  const std::uint64_t* shadow_bits(std::size_t i) const { return bits_.data() + i * words_; }
  // Index into shadow() or -1.
  long shadow_index(std::span<const Vertex> f) const;

  std::size_t vertex_degree(Vertex v) const { return degree_[v]; }

  // Same vertex set, only the edges accepted by keep.
  template <class Pred>
  Hypergraph filter_edges(Pred&& keep) const {
    std::vector<std::vector<Vertex>> kept;
    for (const auto& e : edges_)
      if (keep(e)) kept.push_back(e);
    return build(k_, n_, std::move(kept));
  }

 private:
  std::uint64_t key(std::span<const Vertex> sorted) const;
  // Sorts ids into buf; returns false on repeated ids.
  bool sorted_copy(std::span<const Vertex> ids, Vertex* buf) const;

  int k_ = 0;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<VertexSet> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::unordered_map<std::uint64_t, std::uint32_t> shadow_ids_;
  std::vector<VertexSet> shadow_;
  std::vector<std::vector<Vertex>> nbrs_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> degree_;
};

struct CodegreeProfile {
  std::size_t min_codegree = 0;
  VertexSet argmin;
  // Every (k-1)-subset of V(H) in lex order with its degree.
  std::vector<std::pair<VertexSet, std::size_t>> degrees;
};

CodegreeProfile codegree_profile(const Hypergraph& h);
// Same minimum as codegree_profile without materialising the profile.
std::size_t min_codegree(const Hypergraph& h);

// Number of v (in `within` when given) with f + v an edge for every f in F.
std::size_t joint_degree(const Hypergraph& h, const std::vector<VertexSet>& family,
                         const VertexMask* within = nullptr);

struct LargenessResult {
  bool pass = true;
  std::size_t worst = 0;
  VertexSet worst_f, worst_g;
};

// Checks that every two distinct shadow sets have at least `ell` common
// neighbours (inside `within` when given).
LargenessResult largeness_check(const Hypergraph& h, std::size_t ell,
                                const VertexMask* within = nullptr);

// Number of K(2) copies containing e: choices of one partner per vertex of e
// with all 2^k cross edges present. Partners come from `within` when given.
std::size_t k22_count(const Hypergraph& h, std::span<const Vertex> e,
                      const VertexMask* within = nullptr);

// Calls f(partners) for every partner assignment counted by k22_count;
// partners[i] is the partner of the i-th smallest vertex of e.
void for_each_k22(const Hypergraph& h, std::span<const Vertex> e, const VertexMask* within,
                  const std::function<void(std::span<const Vertex>)>& f);

double extensibility_threshold(const Hypergraph& h, double theta);
std::vector<VertexSet> extensible_edges(const Hypergraph& h, double theta);
bool is_extensible(const Hypergraph& h, std::span<const Vertex> e, double theta);

struct Walk {
  std::vector<Vertex> vertices;
  int k = 0;

  std::size_t length() const { return vertices.size() + 1 - static_cast<std::size_t>(k); }
  Tuple start() const { return Tuple(vertices.begin(), vertices.begin() + (k - 1)); }
  Tuple end() const { return Tuple(vertices.end() - (k - 1), vertices.end()); }
  // Vertex set of the walk minus the start and end sets.
  VertexSet interior() const;
};

// Throws std::invalid_argument when the sequence is shorter than k or some
// window is not an edge.
Walk walk_inspect(const Hypergraph& h, std::vector<Vertex> vertices);

}  // namespace hypertree
