#pragma once

#include <string>
#include <vector>

#include "hypertree/hypergraph.hpp"
#include "hypertree/ktree.hpp"

namespace hypertree {

// Partial vertex map from tree labels to host vertices.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::size_t label_bound) : map_(label_bound, kNoVertex) {}

  std::size_t label_bound() const { return map_.size(); }
  bool has(Vertex v) const { return v < map_.size() && map_[v] != kNoVertex; }
  Vertex operator[](Vertex v) const { return v < map_.size() ? map_[v] : kNoVertex; }
  void set(Vertex v, Vertex image) {
    if (v >= map_.size()) map_.resize(static_cast<std::size_t>(v) + 1, kNoVertex);
    map_[v] = image;
  }
  void erase(Vertex v) {
    if (v < map_.size()) map_[v] = kNoVertex;
  }
  std::size_t size() const;
  const std::vector<Vertex>& raw() const { return map_; }
  // Images of the given tree vertices, in order.
  Tuple image(std::span<const Vertex> vs) const;

  bool operator==(const Embedding& o) const = default;

 private:
  std::vector<Vertex> map_;
};

struct EmbeddingCheck {
  enum class Failure { none, missing, out_of_range, not_injective, non_edge };
  Failure failure = Failure::none;
  // The tree edge (or vertex) at fault.
  VertexSet witness;
  std::string detail;
  bool ok() const { return failure == Failure::none; }
};

// Injectivity and edge preservation of phi on all of T.
EmbeddingCheck validate_embedding(const Hypergraph& h, const KTree& t, const Embedding& phi);

// Same checks restricted to the mapped vertices and the edges they span.
EmbeddingCheck validate_partial(const Hypergraph& h, const KTree& t, const Embedding& phi);

}  // namespace hypertree
