#include "hypertree/connect.hpp"

#include <set>

namespace hypertree {

std::size_t min_connect_length(int k) {
  const auto kk = static_cast<std::size_t>(k);
  return (2 * kk + 1) * (kk / 2) + 2 * kk;
}

std::size_t swap_walk_length(int k) {
  const auto kk = static_cast<std::size_t>(k);
  return 2 * kk * (kk / 2) + 1;
}

namespace {

bool in_nbrs(const Hypergraph& h, const Tuple& set, Vertex u) {
  const std::uint64_t* b = h.neighbour_bits(set);
  return b && ((b[u >> 6] >> (u & 63)) & 1U);
}

Tuple drop(const Tuple& a, std::size_t i) {
  Tuple out;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (j != i) out.push_back(a[j]);
  return out;
}

// Random vertex of (intersection of N(sets)) & allowed & ~used, or kNoVertex.
Vertex pick(const Hypergraph& h, const std::vector<Tuple>& sets, const VertexMask* allowed, const VertexMask& used,
            Rng& rng) {
  const std::size_t w = h.words();
  std::vector<std::uint64_t> c(w, ~std::uint64_t{0});
  for (const Tuple& s : sets) {
    const std::uint64_t* b = h.neighbour_bits(s);
    if (!b) return kNoVertex;
    for (std::size_t q = 0; q < w; ++q) c[q] &= b[q];
  }
  for (std::size_t q = 0; q < w; ++q) {
    c[q] &= ~used.data()[q];
    if (allowed) c[q] &= allowed->data()[q];
  }
  std::vector<Vertex> cand;
  for_each_bit(c.data(), w, [&](Vertex v) {
    if (v < h.n()) cand.push_back(v);
  });
  if (cand.empty()) return kNoVertex;
  return cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
}

void check_ordered_shadow(const Hypergraph& h, const Tuple& f, const char* name) {
  if (f.size() + 1 != static_cast<std::size_t>(h.k()) || make_set(f).size() != f.size() || !h.in_shadow(f))
    throw std::invalid_argument(std::string(name) + " = " + to_string(f) + " is not an ordered shadow tuple");
}

}  // namespace

Walk build_swap_walk(const Hypergraph& h, const Tuple& a, const Tuple& helpers) {
  const auto k = static_cast<std::size_t>(h.k());
  if (a.size() != k || !h.has_edge(a)) throw std::invalid_argument("swap walk needs an edge, got " + to_string(a));
  if (helpers.size() != k / 2)
    throw std::invalid_argument("swap walk needs " + std::to_string(k / 2) + " helpers, got " + std::to_string(helpers.size()));
  std::vector<Vertex> seq(a.begin(), a.end());
  Tuple cur = a;
  for (std::size_t j = 0; j < k / 2; ++j) {
    const std::size_t jj = k - 1 - j;
    Vertex u = helpers[j];
    if (!in_nbrs(h, drop(a, j), u) || !in_nbrs(h, drop(a, jj), u))
      throw std::invalid_argument("helper " + std::to_string(u) + " is not a common neighbour of " +
                                  to_string(drop(a, j)) + " and " + to_string(drop(a, jj)));
    Tuple mid = cur;
    mid[j] = u;
    mid[jj] = cur[j];
    Tuple next = cur;
    std::swap(next[j], next[jj]);
    seq.insert(seq.end(), mid.begin(), mid.end());
    seq.insert(seq.end(), next.begin(), next.end());
    cur = next;
  }
  return walk_inspect(h, std::move(seq));
}

bool connect_walk_ok(const Hypergraph& h, const Walk& w, const Tuple& f, const Tuple& g, std::size_t ell,
                     const VertexMask* u, const VertexMask* avoid, std::string* why) {
  auto fail = [&](std::string s) {
    if (why) *why = std::move(s);
    return false;
  };
  try {
    walk_inspect(h, w.vertices);
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  if (w.length() != ell) return fail("length " + std::to_string(w.length()) + " != " + std::to_string(ell));
  if (w.start() != f) return fail("walk does not start at " + to_string(f));
  if (w.end() != g) return fail("walk does not end at " + to_string(g));
  for (Vertex v : w.interior()) {
    if (u && !u->test(v)) return fail("interior vertex " + std::to_string(v) + " outside U");
    if (avoid && avoid->test(v)) return fail("interior vertex " + std::to_string(v) + " is avoided");
    if (std::find(f.begin(), f.end(), v) != f.end() || std::find(g.begin(), g.end(), v) != g.end())
      return fail("interior meets an end tuple");
  }
  return true;
}

std::vector<Walk> connect(const Hypergraph& h, const Tuple& f, const Tuple& g, std::size_t ell, const VertexMask* u,
                          const VertexMask* avoid, const ConnectOptions& opt) {
  const int k = h.k();
  const auto kk = static_cast<std::size_t>(k);
  if (k < 2) throw std::invalid_argument("connect needs k >= 2");
  if (ell < min_connect_length(k))
    throw std::invalid_argument("length " + std::to_string(ell) + " is below the minimum " +
                                std::to_string(min_connect_length(k)));
  check_ordered_shadow(h, f, "f");
  check_ordered_shadow(h, g, "g");
  const std::size_t l1 = ell - (2 * kk - 1) - 2 * kk * (kk / 2);

  VertexMask base(h.n());
  if (avoid) base |= *avoid;
  for (Vertex v : f) base.set(v);
  for (Vertex v : g) base.set(v);

  std::vector<Walk> out;
  std::set<std::vector<Vertex>> seen;
  for (std::size_t at = 0; at < opt.attempts && out.size() < opt.cap; ++at) {
    if (opt.deadline.expired()) break;
    Rng rng(derive_seed(opt.seed, at));
    VertexMask used = base;
    auto take = [&](const std::vector<Tuple>& sets) {
      Vertex v = pick(h, sets, u, used, rng);
      if (v != kNoVertex) used.set(v);
      return v;
    };
    // P1 from the reverse of g.
    std::vector<Vertex> p1(g.rbegin(), g.rend());
    bool ok = true;
    for (std::size_t i = 0; i < l1 && ok; ++i) {
      Vertex v = take({Tuple(p1.end() - (k - 1), p1.end())});
      ok = v != kNoVertex;
      p1.push_back(v);
    }
    if (!ok) continue;
    Tuple y(p1.end() - (k - 1), p1.end());
    Tuple a;
    for (std::size_t j = 0; j < kk && ok; ++j) {
      Tuple s1(f.begin() + static_cast<long>(j), f.end()), s2(y.begin() + static_cast<long>(j), y.end());
      s1.insert(s1.end(), a.begin(), a.end());
      s2.insert(s2.end(), a.begin(), a.end());
      Vertex v = take({s1, s2});
      ok = v != kNoVertex;
      a.push_back(v);
    }
    if (!ok) continue;
    Tuple helpers;
    for (std::size_t j = 0; j < kk / 2 && ok; ++j) {
      Vertex v = take({drop(a, j), drop(a, kk - 1 - j)});
      ok = v != kNoVertex;
      helpers.push_back(v);
    }
    if (!ok) continue;
    std::vector<Vertex> seq(f.begin(), f.end());
    seq.insert(seq.end(), a.begin(), a.end());
    Walk p4 = build_swap_walk(h, a, helpers);
    seq.insert(seq.end(), p4.vertices.begin() + k, p4.vertices.end());
    seq.insert(seq.end(), y.rbegin(), y.rend());
    seq.insert(seq.end(), p1.rbegin() + (k - 1), p1.rend());
    Walk w{seq, k};
    std::string why;
    if (!connect_walk_ok(h, w, f, g, ell, u, avoid, &why)) throw std::logic_error("connect built a bad walk: " + why);
    if (seen.insert(seq).second) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace hypertree
