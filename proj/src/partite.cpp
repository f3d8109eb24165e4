#include "hypertree/partite.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "hypertree/density.hpp"

namespace hypertree {

namespace {

// Part index per host vertex, -1 outside; throws on overlap.
std::vector<int> part_index(std::size_t n, const std::vector<VertexSet>& parts) {
  std::vector<int> idx(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i]) {
      if (v >= n) throw std::invalid_argument("part vertex " + std::to_string(v) + " out of range");
      if (idx[v] >= 0) throw std::invalid_argument("parts overlap at vertex " + std::to_string(v));
      idx[v] = static_cast<int>(i);
    }
  return idx;
}

std::vector<VertexMask> part_masks(std::size_t n, const std::vector<VertexSet>& parts) {
  std::vector<VertexMask> m;
  for (const auto& p : parts) m.push_back(VertexMask::of(n, p));
  return m;
}

// Shadow sets of ti meeting layers j..j+k-2 once each, ordered by layer.
std::vector<Tuple> window_tuples(const KTree& ti, const Layering& l, int j) {
  std::vector<Tuple> out;
  for (const VertexSet& s : ti.shadow()) {
    Tuple t(s.begin(), s.end());
    std::sort(t.begin(), t.end(), [&](Vertex a, Vertex b) { return l.layer_of(a) < l.layer_of(b); });
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i) ok = l.layer_of(t[i]) == j + static_cast<int>(i);
    if (ok) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Hypergraph partite_subgraph(const Hypergraph& h, const std::vector<VertexSet>& parts) {
  const auto idx = part_index(h.n(), parts);
  const auto k = static_cast<std::size_t>(h.k());
  return h.filter_edges([&](const VertexSet& e) {
    std::vector<char> seen(parts.size(), 0);
    for (Vertex v : e) {
      int p = idx[v];
      if (p < 0 || seen[static_cast<std::size_t>(p)]) return false;
      seen[static_cast<std::size_t>(p)] = 1;
    }
    return e.size() == k;
  });
}

std::size_t min_shadow_codegree(const Hypergraph& h) {
  if (h.shadow().empty()) return 0;
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < h.shadow().size(); ++i) best = std::min(best, h.shadow_neighbours(i).size());
  return best;
}

Hypergraph clean_partite(const Hypergraph& h, const std::vector<VertexSet>& parts, double d) {
  const auto k = static_cast<std::size_t>(h.k());
  if (parts.size() != k) throw std::invalid_argument("cleaning needs exactly k parts");
  if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  Hypergraph p = partite_subgraph(h, parts);
  std::size_t m = 0;
  for (const auto& w : parts) m = std::max(m, w.size());
  const double need = d * std::pow(static_cast<double>(m), static_cast<double>(k));
  if (static_cast<double>(p.num_edges()) < need)
    throw std::invalid_argument("partite edge count " + std::to_string(p.num_edges()) + " is below d m^k = " +
                                std::to_string(need));
  const double thr = d * static_cast<double>(m) / static_cast<double>(k);

  const auto& edges = p.edges();
  std::vector<std::vector<std::size_t>> through(p.shadow().size());
  std::vector<std::size_t> subs(edges.size() * k);
  std::vector<std::size_t> cnt(p.shadow().size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto s = static_cast<std::size_t>(p.shadow_index(without(edges[i], edges[i][j])));
      subs[i * k + j] = s;
      through[s].push_back(i);
      ++cnt[s];
    }
  std::vector<char> alive(edges.size(), 1);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < cnt.size(); ++s)
    if (static_cast<double>(cnt[s]) < thr) queue.push_back(s);
  while (!queue.empty()) {
    std::size_t s = queue.back();
    queue.pop_back();
    if (cnt[s] == 0 || static_cast<double>(cnt[s]) >= thr) continue;
    for (std::size_t i : through[s]) {
      if (!alive[i]) continue;
      alive[i] = 0;
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t t = subs[i * k + j];
        --cnt[t];
        if (t != s && cnt[t] > 0 && static_cast<double>(cnt[t]) < thr) queue.push_back(t);
      }
    }
  }
  std::vector<std::vector<Vertex>> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (alive[i]) kept.push_back(edges[i]);
  if (kept.empty()) throw SearchFailure("cleaning removed every edge");
  return Hypergraph::build(h.k(), h.n(), std::move(kept));
}

Embedding extend_greedy(const Hypergraph& hp, const std::vector<VertexSet>& parts, const KTree& t, const Layering& l,
                        int ell_cut, const Embedding& partial, const ExtendOptions& opt) {
  const int k = t.k();
  if (hp.k() != k) throw std::invalid_argument("host and tree have different uniformity");
  if (parts.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("extension needs exactly k parts");
  const auto& order = t.vertex_order();
  std::size_t p = 0;
  while (p < order.size() && partial.has(order[p])) ++p;
  for (std::size_t i = p; i < order.size(); ++i) {
    if (partial.has(order[i])) throw std::invalid_argument("partial map is not a prefix of the valid ordering");
    if (l.layer_of(order[i]) <= ell_cut + k - 1)
      throw std::invalid_argument("vertex " + std::to_string(order[i]) + " of layer " +
                                  std::to_string(l.layer_of(order[i])) + " is not mapped");
  }
  if (p < static_cast<std::size_t>(k - 1)) throw std::invalid_argument("partial map does not cover the root");

  VertexMask used = opt.forbidden ? *opt.forbidden : VertexMask(hp.n());
  for (std::size_t i = 0; i < p; ++i) used.set(partial[order[i]]);
  const auto masks = part_masks(hp.n(), parts);
  auto part_of = [&](Vertex v) {
    return static_cast<std::size_t>((l.layer_of(v) - ell_cut - 1) % k);
  };

  Embedding phi = partial;
  Tuple img;
  for (std::size_t i = p; i < order.size(); ++i) {
    Vertex v = order[i];
    img = phi.image(t.rooted_anchor(v));
    const std::uint64_t* nb = hp.neighbour_bits(img);
    const VertexMask& part = masks[part_of(v)];
    Vertex pick = kNoVertex;
    if (nb)
      for (std::size_t w = 0; w < hp.words() && pick == kNoVertex; ++w) {
        std::uint64_t c = nb[w] & part.data()[w] & ~used.data()[w];
        if (c) pick = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(c)));
      }
    if (pick == kNoVertex) {
      if (!opt.fallback_search)
        throw SearchFailure("no unused neighbour of " + to_string(img) + " in part " + std::to_string(part_of(v)));
      SearchProblem sp;
      sp.host = &hp;
      sp.tree = &t;
      sp.pinned = Embedding(t.label_bound());
      for (std::size_t j = 0; j < p; ++j) sp.pinned.set(order[j], partial[order[j]]);
      sp.check_pinned = false;
      sp.forbidden = opt.forbidden;
      sp.allowed.assign(t.label_bound(), nullptr);
      for (std::size_t j = p; j < order.size(); ++j) sp.allowed[order[j]] = &masks[part_of(order[j])];
      SearchResult r = restart_search(sp, opt.seed, opt.deadline.set() ? opt.deadline : Deadline::after_ms(60'000));
      if (r.status != SearchStatus::found)
        throw SearchFailure("crown extension failed at anchor image " + to_string(img) + " (" + to_string(r.status) +
                            ")");
      return r.phi;
    }
    phi.set(v, pick);
    used.set(pick);
  }
  return phi;
}

bool layer_part_rule_ok(const std::vector<VertexSet>& parts, const Layering& l, int ell_cut, const Embedding& phi) {
  const auto k = static_cast<int>(parts.size());
  for (Vertex v = 0; v < phi.label_bound(); ++v) {
    if (!phi.has(v) || l.layer_of(v) <= ell_cut) continue;
    const auto& part = parts[static_cast<std::size_t>((l.layer_of(v) - ell_cut - 1) % k)];
    if (!contains(part, phi[v])) return false;
  }
  return true;
}

namespace {

struct TrunkTuples {
  std::vector<Tuple> first, last;
  // Per label: (0 = first / 1 = last, index) pairs containing the label.
  std::vector<std::vector<std::pair<int, std::size_t>>> touching;
};

TrunkTuples trunk_tuples(const KTree& ti, const Layering& l, const TrunkSpec& spec) {
  TrunkTuples tt;
  const int k = ti.k();
  if (spec.f1) tt.first = window_tuples(ti, l, spec.t);
  if (spec.f2) tt.last = window_tuples(ti, l, spec.t + spec.ell - k + 2);
  tt.touching.assign(ti.label_bound(), {});
  for (std::size_t i = 0; i < tt.first.size(); ++i)
    for (Vertex v : tt.first[i]) tt.touching[v].emplace_back(0, i);
  for (std::size_t i = 0; i < tt.last.size(); ++i)
    for (Vertex v : tt.last[i]) tt.touching[v].emplace_back(1, i);
  return tt;
}

bool middle_layer(const TrunkSpec& spec, int k, int layer) {
  return layer >= spec.t + k - 1 && layer <= spec.t + spec.ell - k + 1;
}

}  // namespace

Embedding embed_trunk(const Hypergraph& h, const KTree& ti, const Layering& l, const TrunkSpec& spec) {
  if (ti.n() == 0) return Embedding();
  const int k = ti.k();
  TrunkTuples tt = trunk_tuples(ti, l, spec);

  // Tuples fixed entirely by the pins are checked once up front.
  auto tuple_ok = [&](int which, const Tuple& img) { return which == 0 ? spec.f1(img) : spec.f2(img); };
  for (int which = 0; which < 2; ++which)
    for (const Tuple& s : which == 0 ? tt.first : tt.last) {
      bool pinned = std::all_of(s.begin(), s.end(), [&](Vertex v) { return spec.pinned.has(v); });
      if (pinned && !tuple_ok(which, spec.pinned.image(s)))
        throw SearchFailure("pinned tuple " + to_string(spec.pinned.image(s)) + " violates the trunk end condition");
    }

  std::vector<VertexMask> owned;
  owned.reserve(ti.n());
  SearchProblem p;
  p.host = &h;
  p.tree = &ti;
  p.pinned = spec.pinned;
  p.forbidden = spec.forbidden;
  p.allowed.assign(ti.label_bound(), nullptr);
  for (Vertex v : ti.vertex_order()) {
    const VertexMask* a = v < spec.allowed.size() ? spec.allowed[v] : nullptr;
    if (spec.u && middle_layer(spec, k, l.layer_of(v))) {
      if (a) {
        owned.push_back(*a);
        owned.back() &= *spec.u;
        a = &owned.back();
      } else {
        a = spec.u;
      }
    }
    p.allowed[v] = a;
  }
  Tuple img;
  p.accept = [&](Vertex v, Vertex c, const std::vector<Vertex>& phi) {
    for (auto [which, i] : tt.touching[v]) {
      const Tuple& s = which == 0 ? tt.first[i] : tt.last[i];
      img.clear();
      bool full = true;
      for (Vertex x : s) {
        Vertex y = x == v ? c : phi[x];
        if (y == kNoVertex) {
          full = false;
          break;
        }
        img.push_back(y);
      }
      if (full && !tuple_ok(which, img)) return false;
    }
    return !spec.accept || spec.accept(v, c, phi);
  };
  Deadline dl = spec.deadline.set() ? spec.deadline : Deadline::after_ms(60'000);
  SearchResult r = restart_search(p, spec.seed, dl, spec.first_budget, spec.restarts);
  if (r.status != SearchStatus::found) throw SearchFailure("trunk embedding: " + to_string(r.status));
  return r.phi;
}

TrunkCheck check_trunk(const Hypergraph& h, const KTree& ti, const Layering& l, const TrunkSpec& spec,
                       const Embedding& phi) {
  TrunkCheck c;
  auto fail = [&](std::string d) {
    c.ok = false;
    c.detail = std::move(d);
    return c;
  };
  EmbeddingCheck ec = validate_embedding(h, ti, phi);
  if (!ec.ok()) return fail(ec.detail);
  TrunkTuples tt = trunk_tuples(ti, l, spec);
  for (const Tuple& s : tt.first)
    if (!spec.f1(phi.image(s))) return fail("first-layer tuple " + to_string(s) + " not in F_1");
  for (const Tuple& s : tt.last)
    if (!spec.f2(phi.image(s))) return fail("last-layer tuple " + to_string(s) + " not in F_2");
  if (spec.u)
    for (Vertex v : ti.vertex_order())
      if (middle_layer(spec, ti.k(), l.layer_of(v)) && !spec.u->test(phi[v]))
        return fail("middle vertex " + std::to_string(v) + " outside U");
  return c;
}

bool is_e_good(const Hypergraph& h, const VertexSet& e, const Tuple& partners) {
  const std::size_t k = e.size();
  if (partners.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (contains(e, partners[i])) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (partners[i] == partners[j]) return false;
  }
  std::vector<Vertex> s(k);
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) s[i] = (mask >> i) & 1U ? partners[i] : e[i];
    if (!h.has_edge(s)) return false;
  }
  return true;
}

SubtreeResult embed_subtree(const Hypergraph& h, const VertexMask& reservoir, const std::vector<VertexSet>& parts,
                            const LayeredTree& lt, const Tuple& r, const VertexSet& e, const Tuple& f,
                            const PipelineParams& params, const SubtreeOptions& opt) {
  const int k = h.k();
  const auto kk = static_cast<std::size_t>(k);
  const KTree& t = lt.tree;
  const Layering& l = lt.layering;
  const int ell = static_cast<int>(params.ell_for(k));
  if (t.k() != k) throw std::invalid_argument("host and tree have different uniformity");
  if (parts.size() != kk) throw std::invalid_argument("embed_subtree needs exactly k parts");
  if (reservoir.size() != h.n()) throw std::invalid_argument("reservoir mask has the wrong size");
  if (!h.has_edge(e)) throw std::invalid_argument(to_string(e) + " is not an edge");
  const bool ext = opt.extensible ? opt.extensible->has_edge(e) : is_extensible(h, e, params.theta);
  if (!ext) throw std::invalid_argument(to_string(e) + " is not theta-extensible");
  if (f.size() + 1 != kk || make_set(f).size() != f.size() || !is_subset(make_set(f), e))
    throw std::invalid_argument("f must be an ordering of a (k-1)-subset of e");
  if (r.size() + 1 != kk || make_set(r) != l.root()) throw std::invalid_argument("r must be an ordering of the root");
  const auto idx = part_index(h.n(), parts);
  for (Vertex v = 0; v < h.n(); ++v)
    if (idx[v] >= 0 && reservoir.test(v)) throw std::invalid_argument("parts meet the reservoir");
  if (opt.enforce_size && static_cast<double>(t.n()) > params.beta * static_cast<double>(h.n()))
    throw std::invalid_argument("tree has " + std::to_string(t.n()) + " vertices, more than beta n");
  double prod = 1.0;
  std::size_t m = 0;
  for (const auto& w : parts) {
    prod *= static_cast<double>(w.size());
    m = std::max(m, w.size());
  }
  if (prod <= 0.0) throw std::invalid_argument("empty part");
  if (static_cast<double>(partite_edge_count(h, parts)) < params.density * prod)
    throw std::invalid_argument("d(W_1, ..., W_k) is below the required density");

  // Step 1: extensible partite edges, cleaned.
  SubtreeResult res;
  std::optional<Hypergraph> own;
  const Hypergraph* hext = opt.extensible;
  if (!hext) {
    own = h.filter_edges([&](const VertexSet& x) { return is_extensible(h, x, params.theta); });
    hext = &*own;
  }
  const double d_clean = params.density * prod / (2.0 * std::pow(static_cast<double>(m), static_cast<double>(k)));
  Hypergraph hp;
  try {
    hp = clean_partite(*hext, parts, d_clean);
  } catch (const std::invalid_argument& ex) {
    throw SearchFailure(std::string("cleaning: ") + ex.what());
  }
  res.cleaned_edges = hp.num_edges();
  res.min_clean_codegree = min_shadow_codegree(hp);

  // sigma: the largest residual class goes to W_1.
  std::vector<std::size_t> cls(kk, 0);
  for (Vertex v : t.vertex_order())
    if (l.layer_of(v) > ell) ++cls[static_cast<std::size_t>((l.layer_of(v) - ell - 1) % k)];
  std::vector<int> by_size(kk);
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](int a, int b) { return cls[static_cast<std::size_t>(a)] > cls[static_cast<std::size_t>(b)]; });
  res.sigma.assign(kk, 0);
  for (std::size_t rank = 0; rank < kk; ++rank) res.sigma[static_cast<std::size_t>(by_size[rank])] = static_cast<int>(rank);
  std::vector<VertexSet> sparts(kk);
  for (std::size_t i = 0; i < kk; ++i) sparts[i] = parts[static_cast<std::size_t>(res.sigma[i])];
  const auto smasks = part_masks(h.n(), sparts);

  // Step 2: trunk = shortest prefix of the valid ordering holding layers
  // 1..ell+k-1.
  const auto& order = t.vertex_order();
  std::size_t last = kk - 2;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (l.layer_of(order[i]) <= ell + k - 1) last = i;
  last = std::max(last, kk - 1);
  std::vector<Vertex> prefix(order.begin(), order.begin() + static_cast<long>(last + 1));
  std::vector<std::vector<Vertex>> pedges(t.edges().begin(), t.edges().begin() + static_cast<long>(last + 2 - kk));
  KTree trunk = KTree::from_ordering(k, prefix, std::move(pedges));
  const bool has_crown = last + 1 < order.size();

  TrunkSpec spec;
  spec.t = 2;
  spec.ell = ell + k - 3;
  spec.u = &reservoir;
  spec.pinned = Embedding(t.label_bound());
  for (std::size_t i = 0; i < r.size(); ++i) spec.pinned.set(r[i], f[i]);
  spec.allowed.assign(t.label_bound(), nullptr);
  for (Vertex v : prefix) {
    if (spec.pinned.has(v)) continue;
    int layer = l.layer_of(v);
    if (layer > ell) spec.allowed[v] = &smasks[static_cast<std::size_t>((layer - ell - 1) % k)];
    else spec.allowed[v] = &reservoir;
  }
  spec.forbidden = opt.forbidden;
  const VertexSet rmembers = reservoir.members();
  if (opt.require_e_good)
    spec.f1 = [&](const Tuple& img) {
      // Windows through the root lie outside T_1 - r and are unconstrained.
      for (Vertex y : img)
        if (std::find(f.begin(), f.end(), y) != f.end()) return true;
      Tuple partners(kk);
      for (std::size_t i = 1; i < kk; ++i) partners[i] = img[i - 1];
      for (Vertex x : rmembers) {
        if (std::find(img.begin(), img.end(), x) != img.end()) continue;
        partners[0] = x;
        if (is_e_good(h, e, partners)) return true;
      }
      return false;
    };
  spec.f2 = [&](const Tuple& img) { return hp.in_shadow(img); };
  // Trunk edges inside the crown layers and anchors of later vertices must
  // live in the cleaned graph.
  std::vector<std::vector<VertexSet>> crown_sets(t.label_bound());
  for (const auto& ed : trunk.edges())
    if (std::all_of(ed.begin(), ed.end(), [&](Vertex x) { return l.layer_of(x) > ell; }))
      for (Vertex x : ed) crown_sets[x].push_back(ed);
  for (std::size_t i = last + 1; i < order.size(); ++i) {
    VertexSet a = t.rooted_anchor(order[i]);
    if (std::all_of(a.begin(), a.end(), [&](Vertex x) { return trunk.has_vertex(x); }))
      for (Vertex x : a) crown_sets[x].push_back(a);
  }
  for (auto& cs : crown_sets) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  }
  spec.accept = [&](Vertex v, Vertex c, const std::vector<Vertex>& phi) {
    Tuple img;
    for (const VertexSet& s : crown_sets[v]) {
      img.clear();
      bool full = true;
      for (Vertex x : s) {
        Vertex y = x == v ? c : phi[x];
        if (y == kNoVertex) {
          full = false;
          break;
        }
        img.push_back(y);
      }
      if (!full) continue;
      if (img.size() == kk ? !hp.has_edge(img) : !hp.in_shadow(img)) return false;
    }
    return true;
  };
  spec.deadline = opt.deadline;
  spec.seed = params.seed;
  Embedding phi1 = embed_trunk(h, trunk, l, spec);

  // Step 3: crown.
  if (has_crown) {
    ExtendOptions eo;
    eo.forbidden = opt.forbidden;
    eo.fallback_search = true;
    eo.deadline = opt.deadline;
    eo.seed = params.seed;
    res.phi = extend_greedy(hp, sparts, t, l, ell, phi1, eo);
  } else {
    res.phi = std::move(phi1);
  }
  SubtreeCheck sc = check_subtree(h, reservoir, parts, lt, r, f, static_cast<std::size_t>(ell), params.theta, res.phi);
  if (!sc.ok()) throw std::logic_error("embed_subtree produced a map failing E" + std::to_string(sc.clause) + ": " + sc.detail);
  return res;
}

SubtreeCheck check_subtree(const Hypergraph& h, const VertexMask& reservoir, const std::vector<VertexSet>& parts,
                           const LayeredTree& lt, const Tuple& r, const Tuple& f, std::size_t ell, double theta,
                           const Embedding& phi) {
  SubtreeCheck c;
  auto fail = [&](int clause, std::string d) {
    c.clause = clause;
    c.detail = std::move(d);
    return c;
  };
  const KTree& t = lt.tree;
  const Layering& l = lt.layering;
  EmbeddingCheck ec = validate_embedding(h, t, phi);
  if (!ec.ok()) return fail(5, ec.detail);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (phi[r[i]] != f[i]) return fail(1, "root vertex " + std::to_string(r[i]) + " is not mapped to " + std::to_string(f[i]));
  const auto L = static_cast<int>(ell);
  for (Vertex v : t.vertex_order()) {
    Vertex x = phi[v];
    bool in_rf = reservoir.test(x) || std::find(f.begin(), f.end(), x) != f.end();
    if (in_rf != (l.layer_of(v) <= L))
      return fail(2, "vertex " + std::to_string(v) + " of layer " + std::to_string(l.layer_of(v)) +
                         (in_rf ? " lands in R or f" : " lands outside R and f"));
  }
  std::vector<std::size_t> counts(parts.size(), 0);
  for (Vertex v : t.vertex_order()) {
    if (l.layer_of(v) <= L) continue;
    std::size_t j = 0;
    while (j < parts.size() && !contains(parts[j], phi[v])) ++j;
    if (j == parts.size()) return fail(3, "crown vertex " + std::to_string(v) + " lands outside the parts");
    ++counts[j];
  }
  for (std::size_t j = 1; j < counts.size(); ++j)
    if (counts[j] > counts[j - 1]) return fail(3, "part " + std::to_string(j + 1) + " receives more than part " + std::to_string(j));
  for (const auto& ed : t.edges()) {
    if (!std::all_of(ed.begin(), ed.end(), [&](Vertex x) { return l.layer_of(x) > L; })) continue;
    if (!is_extensible(h, phi.image(ed), theta)) return fail(4, "image of crown edge " + to_string(ed) + " is not extensible");
  }
  return c;
}

}  // namespace hypertree
