#include "hypertree/decomposition.hpp"

#include <cmath>
#include <set>

namespace hypertree {

namespace {

class PartBuilder {
 public:
  PartBuilder(const SubtreeIndex& idx, std::vector<char>& taken) : idx_(idx), taken_(taken) {}

  void add_edge(std::size_t e) {
    if (taken_[e]) throw std::logic_error("edge assigned to two parts");
    taken_[e] = 1;
    edges_.push_back(e);
  }
  void add_subtree(std::span<const Vertex> s) {
    for (std::size_t e : idx_.subtree_edges(s)) add_edge(e);
  }
  // Adds the first-layer edges of T_s and returns the cut roots.
  std::vector<VertexSet> cut(std::span<const Vertex> s) {
    Cut c = cut_first_layer(idx_, s);
    for (std::size_t e : c.first) add_edge(e);
    return c.roots;
  }
  std::size_t size() const { return edges_.size(); }

  DecompositionPart finish(VertexSet root) {
    const KTree& t = idx_.layered().tree;
    DecompositionPart p;
    p.root = std::move(root);
    std::sort(edges_.begin(), edges_.end());
    p.edge_ids = edges_;
    std::vector<Vertex> vs(p.root.begin(), p.root.end());
    for (std::size_t e : edges_) {
      p.edges.push_back(t.edges()[e]);
      vs.insert(vs.end(), t.edges()[e].begin(), t.edges()[e].end());
    }
    p.vertices = make_set(std::move(vs));
    return p;
  }

 private:
  const SubtreeIndex& idx_;
  std::vector<char>& taken_;
  std::vector<std::size_t> edges_;
};

}  // namespace

Decomposition decompose_beta_d(const LayeredTree& lt, double beta, int d, std::size_t delta) {
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  const KTree& t = lt.tree;
  if (delta == 0) delta = std::max<std::size_t>(2, t.max_degree());
  if (t.max_degree() > delta) throw std::invalid_argument("tree degree exceeds delta");
  const double edges = static_cast<double>(t.num_edges());
  const double delta_d = std::pow(static_cast<double>(delta), d);
  if (edges < 2 * delta_d / beta)
    throw std::invalid_argument("decomposition needs at least 2 delta^d / beta = " + std::to_string(2 * delta_d / beta) +
                                " edges, tree has " + std::to_string(t.num_edges()));
  const double small = beta * edges / (2 * delta_d);
  const double big = beta * edges;

  SubtreeIndex idx(lt);
  std::vector<char> taken(t.num_edges(), 0);
  Decomposition dec{{}, beta, d, delta};
  std::set<VertexSet> pending{lt.layering.root()};
  auto size_of = [&](const VertexSet& s) { return static_cast<double>(idx.subtree_size(s)); };

  while (!pending.empty()) {
    VertexSet x = *pending.begin();
    pending.erase(pending.begin());
    PartBuilder part(idx, taken);
    if (size_of(x) <= big) {
      part.add_subtree(x);
      dec.parts.push_back(part.finish(x));
      continue;
    }
    std::vector<VertexSet> level{x};
    for (int i = 1; i < d; ++i) {
      std::vector<VertexSet> next;
      for (const auto& s : level) {
        auto roots = part.cut(s);
        next.insert(next.end(), roots.begin(), roots.end());
      }
      level = std::move(next);
    }
    std::set<VertexSet> z;
    for (const auto& s : level) {
      if (size_of(s) < small)
        part.add_subtree(s);
      else
        z.insert(s);
    }
    while (static_cast<double>(part.size()) < big / 2) {
      if (z.empty()) throw std::logic_error("decomposition ran out of roots");
      VertexSet zz = *z.begin();
      // A cut can add up to beta t / Delta^(d-1) edges, which overshoots beta t
      // when d = 1. Once the part is large enough, leave zz pending instead.
      if (static_cast<double>(part.size()) >= small) {
        Cut c = cut_first_layer(idx, zz);
        double add = static_cast<double>(c.first.size());
        for (const auto& s : c.roots)
          if (size_of(s) < small) add += size_of(s);
        if (static_cast<double>(part.size()) + add > big) break;
      }
      z.erase(z.begin());
      for (auto& s : part.cut(zz)) {
        if (size_of(s) < small)
          part.add_subtree(s);
        else
          z.insert(std::move(s));
      }
    }
    dec.parts.push_back(part.finish(x));
    pending.insert(z.begin(), z.end());
  }
  return dec;
}

DecompositionCheck validate_decomposition(const LayeredTree& lt, const Decomposition& dec) {
  DecompositionCheck c;
  auto fail = [&](int clause, std::string detail) {
    c.clause = clause;
    c.detail = std::move(detail);
    return c;
  };
  const KTree& t = lt.tree;
  const double m = static_cast<double>(dec.parts.size());
  const double delta_d = std::pow(static_cast<double>(dec.delta), dec.d);
  if (m > 2 * delta_d / dec.beta) return fail(1, std::to_string(dec.parts.size()) + " parts exceed 2 delta^d / beta");

  std::vector<int> owner(t.num_edges(), -1);
  for (std::size_t i = 0; i < dec.parts.size(); ++i)
    for (const auto& e : dec.parts[i].edges) {
      long id = t.edge_index(e);
      if (id < 0) return fail(2, "part " + std::to_string(i + 1) + " uses non-edge " + to_string(e));
      if (owner[static_cast<std::size_t>(id)] >= 0) return fail(2, "edge " + to_string(e) + " lies in two parts");
      owner[static_cast<std::size_t>(id)] = static_cast<int>(i);
    }
  for (std::size_t e = 0; e < owner.size(); ++e)
    if (owner[e] < 0) return fail(2, "edge " + to_string(t.edges()[e]) + " lies in no part");

  for (std::size_t i = 0; i < dec.parts.size(); ++i)
    if (static_cast<double>(dec.parts[i].edges.size()) > dec.beta * static_cast<double>(t.num_edges()))
      return fail(3, "part " + std::to_string(i + 1) + " has " + std::to_string(dec.parts[i].edges.size()) + " edges");

  if (dec.parts.empty() || dec.parts[0].root != lt.layering.root()) return fail(4, "first root is not r");
  for (std::size_t i = 0; i < dec.parts.size(); ++i)
    if (!is_layered(lt.layering, dec.parts[i].root) || dec.parts[i].root.size() + 1 != static_cast<std::size_t>(t.k()))
      return fail(4, "root " + to_string(dec.parts[i].root) + " is not layered");

  // Vertex sets of the parts; edges are authoritative, the root is included.
  std::vector<VertexSet> verts;
  for (const auto& p : dec.parts) {
    std::vector<Vertex> vs(p.root.begin(), p.root.end());
    for (const auto& e : p.edges) vs.insert(vs.end(), e.begin(), e.end());
    verts.push_back(make_set(std::move(vs)));
  }
  for (std::size_t l = 1; l < dec.parts.size(); ++l) {
    VertexSet inner = set_minus(verts[l], dec.parts[l].root);
    for (std::size_t i = 0; i < l; ++i)
      if (!set_intersection(inner, verts[i]).empty())
        return fail(5, "part " + std::to_string(l + 1) + " meets part " + std::to_string(i + 1) + " outside its root");
  }

  for (std::size_t l = 1; l < dec.parts.size(); ++l) {
    const VertexSet& s = dec.parts[l].root;
    bool found = false;
    for (std::size_t i = 0; i < l && !found; ++i) {
      bool in_shadow = false;
      for (const auto& e : dec.parts[i].edges) in_shadow = in_shadow || is_subset(s, e);
      if (!in_shadow) continue;
      int first = std::numeric_limits<int>::max();
      for (Vertex v : verts[i]) first = std::min(first, lt.layering.layer_of(v));
      found = layer_rank(lt.layering, s) - first + 1 >= dec.d;
    }
    if (!found) return fail(6, "root " + to_string(s) + " has no earlier part holding it at rank >= d");
  }
  return c;
}

}  // namespace hypertree
