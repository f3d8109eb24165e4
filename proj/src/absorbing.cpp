#include "hypertree/absorbing.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "hypertree/connect.hpp"

namespace hypertree {

VertexSet AbsorbingTuple::vertices() const {
  std::vector<Vertex> all(u.begin(), u.end());
  all.push_back(star);
  return make_set(std::move(all));
}

namespace {

bool distinct(const Tuple& t) { return make_set(t).size() == t.size(); }

void check_target(const Hypergraph& h, const KTree& x, const Tuple& target) {
  if (x.k() + 1 != h.k()) throw std::invalid_argument("X must be a (k-1)-tree");
  if (target.size() != static_cast<std::size_t>(h.k()) || !distinct(target))
    throw std::invalid_argument("target must be k distinct vertices");
  for (Vertex v : target)
    if (v >= h.n()) throw std::invalid_argument("target vertex out of range");
}

Embedding pinned_search(const Hypergraph& h, const KTree& t, const Embedding& pins, const VertexMask* forbidden,
                        const Deadline& deadline, std::uint64_t seed, const std::string& what) {
  SearchProblem p;
  p.host = &h;
  p.tree = &t;
  p.pinned = pins;
  p.forbidden = forbidden;
  SearchResult r = restart_search(p, seed, deadline.set() ? deadline : Deadline::after_ms(60'000));
  if (r.status != SearchStatus::found) throw SearchFailure(what + ": " + to_string(r.status));
  return r.phi;
}

}  // namespace

bool is_absorbing(const Hypergraph& h, const KTree& x, const AbsorbingTuple& a, const Tuple& target) {
  const auto k = static_cast<std::size_t>(h.k());
  if (target.size() != k || !distinct(target) || a.u.size() != x.n()) return false;
  Tuple all = a.u;
  all.push_back(a.star);
  if (!distinct(all) || a.star == target[k - 1]) return false;
  Tuple base(target.begin(), target.end() - 1);
  base.push_back(a.star);
  if (!h.has_edge(base)) return false;
  Tuple s;
  for (const auto& e : x.edges()) {
    s.clear();
    for (Vertex xi : e) s.push_back(a.u[xi]);
    s.push_back(target[k - 1]);
    if (!h.has_edge(s)) return false;
    s.back() = a.star;
    if (!h.has_edge(s)) return false;
  }
  return true;
}

std::vector<AbsorbingTuple> find_absorbing_tuples(const Hypergraph& h, const KTree& x, const Tuple& target,
                                                  const AbsorbingSearchOptions& opt) {
  check_target(h, x, target);
  const auto k = static_cast<std::size_t>(h.k());
  const Vertex vk = target[k - 1];
  std::vector<AbsorbingTuple> out;
  if (opt.cap == 0) return out;
  Tuple base(target.begin(), target.end() - 1);
  auto nb = h.neighbours(base);
  std::vector<Vertex> stars;
  for (Vertex s : nb)
    if (s != vk && !(opt.forbidden && opt.forbidden->test(s))) stars.push_back(s);
  Rng rng(opt.shuffle_seed.value_or(0));
  if (opt.shuffle_seed) std::shuffle(stars.begin(), stars.end(), rng);

  const auto& order = x.vertex_order();
  const std::size_t hx = x.n();
  const std::size_t root = k - 2;
  std::vector<Vertex> img(x.label_bound(), kNoVertex);
  VertexMask used = opt.forbidden ? *opt.forbidden : VertexMask(h.n());
  used.set(vk);
  std::vector<std::uint64_t> cand(h.words());
  std::vector<VertexSet> anchors(hx);
  for (std::size_t i = root; i < hx; ++i) anchors[i] = x.rooted_anchor(order[i]);
  Vertex star = kNoVertex;
  std::size_t ticks = 0;
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if ((++ticks & 1023U) == 0 && opt.deadline.expired()) {
      stop = true;
      return;
    }
    if (i == hx) {
      AbsorbingTuple a;
      for (std::size_t j = 0; j < hx; ++j) a.u.push_back(img[j]);
      a.star = star;
      out.push_back(std::move(a));
      if (out.size() >= opt.cap) stop = true;
      return;
    }
    std::vector<Vertex> cs;
    if (i < root) {
      for (Vertex c = 0; c < h.n(); ++c)
        if (!used.test(c)) cs.push_back(c);
    } else {
      Tuple s1, s2;
      for (Vertex a : anchors[i]) s1.push_back(img[a]);
      s2 = s1;
      s1.push_back(vk);
      s2.push_back(star);
      const std::uint64_t* b1 = h.neighbour_bits(s1);
      const std::uint64_t* b2 = h.neighbour_bits(s2);
      if (!b1 || !b2) return;
      for (std::size_t w = 0; w < h.words(); ++w) cand[w] = b1[w] & b2[w] & ~used.data()[w];
      for_each_bit(cand.data(), h.words(), [&](Vertex c) { cs.push_back(c); });
    }
    if (opt.shuffle_seed) std::shuffle(cs.begin(), cs.end(), rng);
    for (Vertex c : cs) {
      img[order[i]] = c;
      used.set(c);
      rec(i + 1);
      used.reset(c);
      img[order[i]] = kNoVertex;
      if (stop) return;
    }
  };
  for (Vertex s : stars) {
    star = s;
    used.set(s);
    rec(0);
    used.reset(s);
    if (stop) break;
  }
  return out;
}

AbsorbingFamily select_absorbing_family(const Hypergraph& h, const KTree& x, double alpha, std::uint64_t seed,
                                        const FamilyOptions& opt) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const auto k = static_cast<std::size_t>(h.k());
  if (h.n() < k) throw std::invalid_argument("host has fewer than k vertices");
  const auto want = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(h.n())));
  AbsorbingFamily fam;
  Rng rng(seed);
  std::vector<Vertex> pool(h.n());
  std::iota(pool.begin(), pool.end(), Vertex{0});
  auto random_target = [&]() {
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
      std::swap(pool[i], pool[d(rng)]);
    }
    return Tuple(pool.begin(), pool.begin() + static_cast<long>(k));
  };
  VertexMask used = opt.forbidden ? *opt.forbidden : VertexMask(h.n());
  for (std::size_t draw = 0; draw < opt.draws && fam.tuples.size() < want; ++draw) {
    Tuple target = random_target();
    AbsorbingSearchOptions so;
    so.cap = 1;
    so.shuffle_seed = derive_seed(seed, draw);
    so.forbidden = &used;
    auto found = find_absorbing_tuples(h, x, target, so);
    if (found.empty()) continue;
    for (Vertex v : found[0].vertices()) used.set(v);
    fam.tuples.push_back(std::move(found[0]));
  }
  if (fam.tuples.empty()) throw SearchFailure("no absorbing tuple found for the family");
  fam.min_coverage = SIZE_MAX;
  for (std::size_t i = 0; i < opt.coverage_targets; ++i) {
    Tuple target = random_target();
    std::size_t c = 0;
    for (const auto& a : fam.tuples) c += is_absorbing(h, x, a, target) ? 1 : 0;
    ++fam.targets_checked;
    if (c < fam.min_coverage) {
      fam.min_coverage = c;
      fam.worst_target = target;
    }
  }
  if (fam.targets_checked == 0) fam.min_coverage = 0;
  return fam;
}

std::vector<Vertex> inverse_map(const Embedding& phi, std::size_t n) {
  std::vector<Vertex> inv(n, kNoVertex);
  for (Vertex v = 0; v < phi.label_bound(); ++v)
    if (phi.has(v) && phi[v] < n) inv[phi[v]] = v;
  return inv;
}

bool x_covered(const KTree& t, const KTree& x, const std::vector<Vertex>& inverse, const AbsorbingTuple& a) {
  auto pre = [&](Vertex u) { return u < inverse.size() ? inverse[u] : kNoVertex; };
  XTuple xt;
  xt.star = pre(a.star);
  if (xt.star == kNoVertex) return false;
  for (Vertex u : a.u) {
    Vertex v = pre(u);
    if (v == kNoVertex) return false;
    xt.v.push_back(v);
  }
  return is_xtuple(t, x, xt);
}

Embedding embed_pseudopath(const Hypergraph& h, const Pseudopath& p, const Tuple& x, const Tuple& y,
                           const PinnedOptions& opt) {
  const auto k = static_cast<std::size_t>(h.k());
  if (x.size() + 1 != k || y.size() + 1 != k) throw std::invalid_argument("end tuples must have k-1 vertices");
  if (!set_intersection(make_set(x), make_set(y)).empty()) throw std::invalid_argument("x and y overlap");
  if (!set_intersection(p.f, p.g).empty()) throw std::invalid_argument("the pseudopath ends share vertices");
  Tuple fo = opt.f_order.empty() ? Tuple(p.f.begin(), p.f.end()) : opt.f_order;
  Tuple go = opt.g_order.empty() ? Tuple(p.g.begin(), p.g.end()) : opt.g_order;
  if (make_set(fo) != p.f || make_set(go) != p.g) throw std::invalid_argument("end orderings do not match the path");
  Embedding pins = opt.extra;
  auto pin = [&](Vertex v, Vertex img) {
    if (pins.has(v) && pins[v] != img) throw std::invalid_argument("conflicting pins for " + std::to_string(v));
    pins.set(v, img);
  };
  for (std::size_t i = 0; i + 1 < k; ++i) {
    pin(fo[i], x[i]);
    pin(go[i], y[i]);
  }
  return pinned_search(h, p.tree, pins, opt.forbidden, opt.deadline, opt.seed, "pseudopath embedding");
}

CoverResult cover_embedding(const Hypergraph& h, const std::vector<AbsorbingTuple>& a, const KTree& t,
                            const XTupleFamily& b, const Tuple& r, const Tuple& f0, const CoverOptions& opt) {
  const int k = h.k();
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t delta = opt.delta ? opt.delta : t.max_degree();
  const std::size_t ell = opt.ell ? opt.ell : min_connect_length(k);
  const std::size_t near = delta * kk * (ell + 3 * kk);
  const std::size_t sep = opt.separation ? opt.separation : 2 * near;
  if (r.size() + 1 != kk || !t.in_shadow(make_set(r))) throw std::invalid_argument("r is not in the tree's shadow");
  if (f0.size() + 1 != kk || !h.in_shadow(f0)) throw std::invalid_argument("f0 is not in the host's shadow");
  {
    VertexMask seen(h.n());
    for (const auto& t0 : a)
      for (Vertex v : t0.vertices()) {
        if (v >= h.n() || seen.test(v)) throw std::invalid_argument("tuples of A are not pairwise disjoint");
        seen.set(v);
      }
  }
  if (b.tuples.size() < a.size())
    throw std::invalid_argument("B has " + std::to_string(b.tuples.size()) + " tuples for " + std::to_string(a.size()));
  for (std::size_t i = 0; i < b.tuples.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (tuple_distance(t, b.tuples[i], b.tuples[j]) < sep)
        throw std::invalid_argument("B is not " + std::to_string(sep) + "-separated");

  CoverResult res;
  Embedding phi(t.label_bound());
  for (std::size_t i = 0; i + 1 < kk; ++i) phi.set(r[i], f0[i]);
  if (a.empty()) {
    res.phi = pinned_search(h, t, phi, nullptr, opt.deadline, opt.seed, "cover completion");
    return res;
  }

  // Shadow of the subgraph of an X-tuple: (k-1)-subsets of the edges at its centre.
  auto tuple_edges = [&](const XTuple& xt) {
    std::vector<VertexSet> es;
    for (std::size_t e : t.incident_edges(xt.star)) es.push_back(t.edges()[e]);
    return es;
  };
  auto shadow_of = [&](const std::vector<VertexSet>& es) {
    std::vector<VertexSet> s;
    for (const auto& e : es)
      for (Vertex v : e) s.push_back(without(e, v));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  const VertexSet rs = make_set(r);
  std::vector<std::pair<std::size_t, std::size_t>> by_dist;
  for (std::size_t i = 0; i < b.tuples.size(); ++i) {
    std::size_t d = SIZE_MAX;
    for (const auto& s : shadow_of(tuple_edges(b.tuples[i]))) d = std::min(d, s == rs ? 0 : distance(t, rs, s));
    by_dist.emplace_back(d, i);
  }
  std::stable_sort(by_dist.begin(), by_dist.end());
  std::vector<std::size_t> chosen;
  for (auto [d, i] : by_dist)
    if (d >= near && chosen.size() < a.size()) chosen.push_back(i);
  if (chosen.size() < a.size())
    throw SearchFailure("only " + std::to_string(chosen.size()) + " X-tuples lie at distance >= " + std::to_string(near) +
                        " from the root");

  // Images reserved for the A tuples not placed yet.
  VertexMask pending(h.n());
  for (const auto& t0 : a)
    for (Vertex v : t0.vertices()) pending.set(v);
  std::vector<VertexSet> built;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const XTuple& bi = b.tuples[chosen[i]];
    auto pin = [&](Vertex v, Vertex img) {
      if (phi.has(v)) throw SearchFailure("X-tuple " + std::to_string(i) + " meets the embedded part");
      phi.set(v, img);
    };
    for (std::size_t j = 0; j < bi.v.size(); ++j) pin(bi.v[j], a[i].u[j]);
    pin(bi.star, a[i].star);
    for (Vertex v : a[i].vertices()) pending.reset(v);
    res.carriers.push_back(bi);

    auto bshadow = shadow_of(tuple_edges(bi));
    std::vector<VertexSet> tshadow = shadow_of(built);
    tshadow.push_back(rs);
    std::size_t best = SIZE_MAX;
    VertexSet from, to;
    for (const auto& s1 : tshadow)
      for (const auto& s2 : bshadow) {
        std::size_t d = s1 == s2 ? 0 : distance(t, s1, s2);
        if (d < best) {
          best = d;
          from = s1;
          to = s2;
        }
      }
    std::vector<VertexSet> path_edges;
    if (best > 0) {
      Pseudopath p = pseudopath_between(t, from, to);
      Embedding pins(t.label_bound());
      VertexMask blocked = pending;
      const VertexSet pv = p.tree.vertices();
      for (Vertex v = 0; v < phi.label_bound(); ++v)
        if (phi.has(v)) {
          if (contains(pv, v)) pins.set(v, phi[v]);
          else blocked.set(phi[v]);
        }
      Embedding pe = pinned_search(h, p.tree, pins, &blocked, opt.deadline, derive_seed(opt.seed, i),
                                   "pseudopath to X-tuple " + std::to_string(i));
      for (Vertex v : pv) phi.set(v, pe[v]);
      path_edges = p.edges;
    }
    built.insert(built.end(), path_edges.begin(), path_edges.end());
    auto be = tuple_edges(bi);
    built.insert(built.end(), be.begin(), be.end());
  }
  res.phi = pinned_search(h, t, phi, nullptr, opt.deadline, derive_seed(opt.seed, a.size()), "cover completion");
  EmbeddingCheck ec = validate_embedding(h, t, res.phi);
  if (!ec.ok()) throw std::logic_error("cover_embedding built an invalid map: " + ec.detail);
  auto inv = inverse_map(res.phi, h.n());
  for (std::size_t i = 0; i + 1 < kk; ++i)
    if (res.phi[r[i]] != f0[i]) throw std::logic_error("cover_embedding moved the root");
  for (const auto& t0 : a)
    if (!x_covered(t, b.x, inv, t0)) throw std::logic_error("cover_embedding left a tuple uncovered");
  return res;
}

AbsorbResult absorb_complete(const Hypergraph& h, const KTree& t, const Embedding& phi0, const KTree& x,
                             const std::vector<AbsorbingTuple>& a, const AbsorbOptions& opt) {
  const std::size_t n = h.n();
  if (t.n() != n) throw std::invalid_argument("tree and host have different orders");
  const auto& order = t.vertex_order();
  std::size_t n0 = 0;
  while (n0 < order.size() && phi0.has(order[n0])) ++n0;
  for (std::size_t i = n0; i < order.size(); ++i)
    if (phi0.has(order[i])) throw std::invalid_argument("phi0 is not defined on a prefix of the valid ordering");
  if (n0 < static_cast<std::size_t>(t.k())) throw std::invalid_argument("phi0 must embed at least one edge");
  EmbeddingCheck pc = validate_partial(h, t, phi0);
  if (!pc.ok()) throw std::invalid_argument("phi0 is not an embedding: " + pc.detail);

  AbsorbResult res;
  res.phi = phi0;
  auto inv = inverse_map(phi0, n);
  {
    VertexMask seen(n);
    for (const auto& t0 : a) {
      for (Vertex v : t0.vertices()) {
        if (v >= n || seen.test(v)) throw std::invalid_argument("tuples of A are not pairwise disjoint");
        seen.set(v);
      }
      if (!x_covered(t, x, inv, t0)) throw std::invalid_argument("a tuple of A is not X-covered by phi0");
    }
  }
  std::vector<Vertex> leftover;
  for (Vertex v = 0; v < n; ++v)
    if (inv[v] == kNoVertex) leftover.push_back(v);
  std::vector<char> spent(a.size(), 0);
  for (std::size_t i = 0; i < leftover.size(); ++i) {
    Vertex v = order[n0 + i];
    Tuple w = res.phi.image(t.rooted_anchor(v));
    std::sort(w.begin(), w.end());
    w.push_back(leftover[i]);
    std::size_t j = 0;
    while (j < a.size() && (spent[j] || !is_absorbing(h, x, a[j], w))) ++j;
    if (j == a.size()) throw SearchFailure("no unused absorbing tuple for " + to_string(w));
    spent[j] = 1;
    Vertex z = inv[a[j].star];
    res.phi.set(z, w.back());
    inv[w.back()] = z;
    res.phi.set(v, a[j].star);
    inv[a[j].star] = v;
    ++res.swaps;
    if (opt.validate_steps) {
      EmbeddingCheck sc = validate_partial(h, t, res.phi);
      if (!sc.ok()) throw std::logic_error("absorption step " + std::to_string(i) + " broke the embedding: " + sc.detail);
    }
  }
  EmbeddingCheck fc = validate_embedding(h, t, res.phi);
  if (!fc.ok()) throw std::logic_error("absorption produced an invalid embedding: " + fc.detail);
  return res;
}

}  // namespace hypertree
