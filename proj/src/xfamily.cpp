#include "hypertree/xfamily.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hypertree/pseudopath.hpp"

namespace hypertree {

namespace {

class CanonicalSearch {
 public:
  CanonicalSearch(const KTree& t, std::size_t budget) : t_(t), budget_(budget), used_(t.num_edges(), 0) {}

  CanonicalForm run() {
    const auto k = static_cast<std::size_t>(t_.k());
    for (std::size_t first = 0; first < t_.num_edges(); ++first) {
      Tuple perm = t_.edges()[first];
      do {
        used_[first] = 1;
        order_ = perm;
        for (Vertex v : perm) placed_.insert(v);
        std::vector<VertexSet> added = facets(t_.edges()[first]);
        for (auto& f : added) covered_.insert(f);
        extend(1);
        for (auto& f : added) covered_.erase(f);
        placed_.clear();
        used_[first] = 0;
      } while (std::next_permutation(perm.begin(), perm.end()));
      (void)k;
    }
    return best_;
  }

 private:
  static std::vector<VertexSet> facets(const VertexSet& e) {
    std::vector<VertexSet> out;
    for (Vertex v : e) out.push_back(without(e, v));
    return out;
  }

  void extend(std::size_t depth) {
    if (++nodes_ > budget_) throw BudgetExceeded("canonical form search exceeded its budget");
    if (depth == t_.num_edges()) {
      record();
      return;
    }
    for (std::size_t i = 0; i < t_.num_edges(); ++i) {
      if (used_[i]) continue;
      const VertexSet& e = t_.edges()[i];
      Vertex fresh = kNoVertex;
      int count = 0;
      for (Vertex v : e)
        if (!placed_.count(v)) {
          fresh = v;
          ++count;
        }
      if (count != 1 || !covered_.count(without(e, fresh))) continue;
      used_[i] = 1;
      placed_.insert(fresh);
      order_.push_back(fresh);
      std::vector<VertexSet> added;
      for (auto& f : facets(e))
        if (covered_.insert(f).second) added.push_back(std::move(f));
      extend(depth + 1);
      for (auto& f : added) covered_.erase(f);
      order_.pop_back();
      placed_.erase(fresh);
      used_[i] = 0;
    }
  }

  void record() {
    std::map<Vertex, std::uint8_t> label;
    for (std::size_t i = 0; i < order_.size(); ++i) label[order_[i]] = static_cast<std::uint8_t>(i);
    std::vector<std::vector<std::uint8_t>> es;
    for (const auto& e : t_.edges()) {
      std::vector<std::uint8_t> r;
      for (Vertex v : e) r.push_back(label[v]);
      std::sort(r.begin(), r.end());
      es.push_back(std::move(r));
    }
    std::sort(es.begin(), es.end());
    std::vector<std::uint8_t> code;
    for (const auto& e : es) code.insert(code.end(), e.begin(), e.end());
    if (best_.order.empty() || code < best_.code) {
      best_.code = std::move(code);
      best_.order = order_;
    }
  }

  const KTree& t_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<char> used_;
  std::set<Vertex> placed_;
  std::set<VertexSet> covered_;
  std::vector<Vertex> order_;
  CanonicalForm best_;
};

KTree relabel_along(const KTree& t, const std::vector<Vertex>& order) {
  std::map<Vertex, Vertex> label;
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<Vertex>(i);
  // Recover the edge order matching the vertex order: edge j introduces
  // order[j + k - 1].
  const auto k = static_cast<std::size_t>(t.k());
  std::vector<std::vector<Vertex>> edges;
  std::set<Vertex> placed(order.begin(), order.begin() + static_cast<long>(k));
  std::vector<Vertex> first(order.begin(), order.begin() + static_cast<long>(k));
  std::set<VertexSet> covered;
  std::vector<char> used(t.num_edges(), 0);
  auto cover = [&](const VertexSet& e) {
    for (Vertex v : e) covered.insert(without(e, v));
  };
  long e0 = t.edge_index(first);
  used[static_cast<std::size_t>(e0)] = 1;
  cover(t.edges()[static_cast<std::size_t>(e0)]);
  edges.push_back(first);
  for (std::size_t j = k; j < order.size(); ++j) {
    Vertex v = order[j];
    for (std::size_t i : t.incident_edges(v)) {
      if (used[i]) continue;
      const VertexSet& e = t.edges()[i];
      bool ok = true;
      for (Vertex u : e) ok = ok && (u == v || placed.count(u));
      if (!ok || !covered.count(without(e, v))) continue;
      used[i] = 1;
      cover(e);
      edges.push_back(e);
      break;
    }
    placed.insert(v);
  }
  for (auto& e : edges)
    for (auto& v : e) v = label[v];
  std::vector<Vertex> ids(order.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<Vertex>(i);
  return KTree::from_ordering(t.k(), std::move(ids), std::move(edges));
}

// Shadow of T[B] and the tree edges containing some member of it.
std::pair<std::vector<VertexSet>, std::vector<std::size_t>> induced_shadow(const KTree& t, const XTuple& b) {
  VertexSet verts = make_set(b.v);
  verts = with(verts, b.star);
  std::set<VertexSet> shadow;
  for (Vertex v : verts)
    for (std::size_t i : t.incident_edges(v))
      if (is_subset(t.edges()[i], verts))
        for (Vertex u : t.edges()[i]) shadow.insert(without(t.edges()[i], u));
  std::set<std::size_t> sources;
  for (const auto& f : shadow)
    for (std::size_t e : t.edges_containing(f)) sources.insert(e);
  return {{shadow.begin(), shadow.end()}, {sources.begin(), sources.end()}};
}

}  // namespace

CanonicalForm canonical_form(const KTree& t, std::size_t budget) { return CanonicalSearch(t, budget).run(); }

KTree canonical_tree(const KTree& t, std::size_t budget) { return relabel_along(t, canonical_form(t, budget).order); }

std::vector<KTree> enumerate_small_ktrees(int k, int h, std::size_t budget) {
  if (k < 1 || h < k) throw std::invalid_argument("need 1 <= k <= h");
  std::vector<KTree> out;
  std::vector<Vertex> base(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) base[static_cast<std::size_t>(i)] = static_cast<Vertex>(i);
  std::vector<KTree> level{KTree::from_ordering(k, base, {base})};
  std::size_t work = 0;
  for (int size = k; size <= h; ++size) {
    out.insert(out.end(), level.begin(), level.end());
    if (size == h) break;
    std::map<std::vector<std::uint8_t>, KTree> next;
    for (const auto& t : level) {
      const auto v = static_cast<Vertex>(size);
      for (const auto& f : t.shadow()) {
        if (++work > budget) throw BudgetExceeded("small tree enumeration exceeded its budget");
        auto order = t.vertex_order();
        order.push_back(v);
        std::vector<std::vector<Vertex>> edges(t.edges().begin(), t.edges().end());
        edges.push_back(with(f, v));
        KTree grown = KTree::from_ordering(k, std::move(order), std::move(edges));
        auto form = canonical_form(grown, budget);
        if (!next.count(form.code)) next.emplace(form.code, relabel_along(grown, form.order));
      }
    }
    level.clear();
    for (auto& [code, t] : next) level.push_back(std::move(t));
  }
  return out;
}

std::optional<XTuple> xtuple_at(const KTree& t, const std::vector<std::uint8_t>& code, Vertex w) {
  if (!t.has_vertex(w)) return std::nullopt;
  KTree link = link_graph(t, w);
  auto form = canonical_form(link);
  if (form.code != code) return std::nullopt;
  return XTuple{form.order, w};
}

bool is_xtuple(const KTree& t, const KTree& x, const XTuple& tuple) {
  if (!t.has_vertex(tuple.star) || x.k() + 1 != t.k()) return false;
  KTree link = link_graph(t, tuple.star);
  if (link.n() != tuple.v.size() || x.n() != tuple.v.size()) return false;
  if (make_set(tuple.v) != link.vertices()) return false;
  std::set<VertexSet> mapped;
  for (const auto& e : x.edges()) {
    std::vector<Vertex> img;
    for (Vertex xi : e) {
      if (xi >= tuple.v.size()) return false;
      img.push_back(tuple.v[xi]);
    }
    mapped.insert(make_set(img));
  }
  std::set<VertexSet> actual(link.edges().begin(), link.edges().end());
  return mapped == actual;
}

std::size_t tuple_distance(const KTree& t, const XTuple& a, const XTuple& b) {
  auto [sa, ea] = induced_shadow(t, a);
  auto [sb, eb] = induced_shadow(t, b);
  for (const auto& f : sa)
    if (std::binary_search(sb.begin(), sb.end(), f)) return 0;
  auto dist = edge_distances(edge_adjacency(t), ea);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t e : eb) best = std::min(best, dist[e]);
  return best + 1;
}

XTupleFamily find_separated_xfamily(const KTree& t, std::size_t separation, const std::vector<Vertex>& excluded) {
  if (t.k() < 2) throw std::invalid_argument("X-tuples need k >= 2");
  XTupleFamily fam;
  fam.separation = separation;
  std::map<std::vector<std::uint8_t>, std::vector<XTuple>> classes;
  std::set<Vertex> skip(excluded.begin(), excluded.end());
  std::vector<Vertex> centres = t.vertex_order();
  std::sort(centres.begin(), centres.end());
  for (Vertex w : centres) {
    if (skip.count(w)) continue;
    auto form = canonical_form(link_graph(t, w));
    classes[form.code].push_back(XTuple{form.order, w});
  }
  fam.classes = classes.size();
  if (classes.empty()) return fam;
  auto best = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it)
    if (it->second.size() > best->second.size()) best = it;
  fam.code = best->first;
  fam.class_size = best->second.size();
  const XTuple& sample = best->second.front();
  fam.x = relabel_along(link_graph(t, sample.star), sample.v);

  auto adjacency = edge_adjacency(t);
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> near(t.num_edges(), inf);
  std::set<VertexSet> kept_shadow;
  for (const XTuple& cand : best->second) {
    auto [shadow, sources] = induced_shadow(t, cand);
    bool ok = true;
    for (const auto& f : shadow) ok = ok && (separation == 0 || !kept_shadow.count(f));
    for (std::size_t e : sources) ok = ok && (near[e] == inf || near[e] + 1 >= separation);
    if (!ok) continue;
    fam.tuples.push_back(cand);
    kept_shadow.insert(shadow.begin(), shadow.end());
    auto dist = edge_distances(adjacency, sources);
    for (std::size_t e = 0; e < near.size(); ++e) near[e] = std::min(near[e], dist[e]);
  }

  const double delta = static_cast<double>(t.max_degree());
  const double k = t.k();
  const double h = delta + k - 1;
  fam.bound = static_cast<double>(t.n()) /
              (std::pow(h, h * (k - 1)) * std::pow(delta + k, static_cast<double>(separation) + 1));
  return fam;
}

}  // namespace hypertree
