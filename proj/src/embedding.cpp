#include "hypertree/embedding.hpp"

namespace hypertree {

std::size_t Embedding::size() const {
  return static_cast<std::size_t>(std::count_if(map_.begin(), map_.end(), [](Vertex v) { return v != kNoVertex; }));
}

Tuple Embedding::image(std::span<const Vertex> vs) const {
  Tuple out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back((*this)[v]);
  return out;
}

namespace {

EmbeddingCheck check(const Hypergraph& h, const KTree& t, const Embedding& phi, bool partial) {
  EmbeddingCheck c;
  std::vector<Vertex> owner(h.n(), kNoVertex);
  for (Vertex v : t.vertex_order()) {
    if (!phi.has(v)) {
      if (partial) continue;
      c.failure = EmbeddingCheck::Failure::missing;
      c.witness = {v};
      c.detail = "tree vertex " + std::to_string(v) + " is unmapped";
      return c;
    }
    Vertex u = phi[v];
    if (u >= h.n()) {
      c.failure = EmbeddingCheck::Failure::out_of_range;
      c.witness = {v};
      c.detail = "tree vertex " + std::to_string(v) + " maps to " + std::to_string(u) + ", outside the host";
      return c;
    }
    if (owner[u] != kNoVertex) {
      c.failure = EmbeddingCheck::Failure::not_injective;
      c.witness = make_set({owner[u], v});
      c.detail = "tree vertices " + std::to_string(owner[u]) + " and " + std::to_string(v) + " share image " +
                 std::to_string(u);
      return c;
    }
    owner[u] = v;
  }
  for (const auto& e : t.edges()) {
    bool mapped = true;
    for (Vertex v : e) mapped = mapped && phi.has(v);
    if (!mapped) continue;
    Tuple img = phi.image(e);
    if (!h.has_edge(img)) {
      c.failure = EmbeddingCheck::Failure::non_edge;
      c.witness = e;
      c.detail = "edge " + to_string(e) + " maps to non-edge " + to_string(make_set(img));
      return c;
    }
  }
  return c;
}

}  // namespace

EmbeddingCheck validate_embedding(const Hypergraph& h, const KTree& t, const Embedding& phi) {
  return check(h, t, phi, false);
}

EmbeddingCheck validate_partial(const Hypergraph& h, const KTree& t, const Embedding& phi) {
  return check(h, t, phi, true);
}

}  // namespace hypertree
