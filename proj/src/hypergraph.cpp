#include "hypertree/hypergraph.hpp"

#include <array>
#include <limits>

namespace hypertree {

namespace {

bool pow_fits(std::size_t n, int k) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= std::max<std::size_t>(n, 1);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  return true;
}

}  // namespace

Hypergraph Hypergraph::build(int k, std::size_t n, std::vector<std::vector<Vertex>> edges) {
  if (k < 2 || k > kMaxUniformity) throw std::invalid_argument("uniformity must be in [2, 12]");
  if (n < static_cast<std::size_t>(k)) throw std::invalid_argument("need n >= k");
  if (!pow_fits(n, k)) throw std::invalid_argument("n^k exceeds the 64-bit key space");
  Hypergraph h;
  h.k_ = k;
  h.n_ = n;
  h.words_ = (n + 63) / 64;
  h.degree_.assign(n, 0);
  h.edges_.reserve(edges.size());
  for (auto& e : edges) {
    if (e.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("edge " + to_string(e) + " does not have " + std::to_string(k) + " ids");
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= n) throw std::invalid_argument("edge " + to_string(e) + " has an id out of range");
      if (i && e[i] == e[i - 1]) throw std::invalid_argument("edge " + to_string(e) + " repeats an id");
    }
    if (!h.edge_keys_.insert(h.key(e)).second)
      throw std::invalid_argument("duplicate edge " + to_string(e));
    h.edges_.push_back(std::move(e));
  }
  std::sort(h.edges_.begin(), h.edges_.end());

  std::vector<Vertex> f(static_cast<std::size_t>(k - 1));
  for (const auto& e : h.edges_) {
    for (Vertex v : e) ++h.degree_[v];
    for (int skip = 0; skip < k; ++skip) {
      std::size_t j = 0;
      for (int i = 0; i < k; ++i)
        if (i != skip) f[j++] = e[static_cast<std::size_t>(i)];
      auto [it, fresh] = h.shadow_ids_.try_emplace(h.key(f), static_cast<std::uint32_t>(h.shadow_.size()));
      if (fresh) {
        h.shadow_.push_back(f);
        h.nbrs_.emplace_back();
      }
      h.nbrs_[it->second].push_back(e[static_cast<std::size_t>(skip)]);
    }
  }
  // Renumber the shadow in lex order.
  std::vector<std::uint32_t> perm(h.shadow_.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return h.shadow_[a] < h.shadow_[b]; });
  std::vector<VertexSet> shadow(perm.size());
  std::vector<std::vector<Vertex>> nbrs(perm.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    shadow[i] = std::move(h.shadow_[perm[i]]);
    nbrs[i] = std::move(h.nbrs_[perm[i]]);
    std::sort(nbrs[i].begin(), nbrs[i].end());
    h.shadow_ids_[h.key(shadow[i])] = i;
  }
  h.shadow_ = std::move(shadow);
  h.nbrs_ = std::move(nbrs);
  h.bits_.assign(h.shadow_.size() * h.words_, 0);
  for (std::size_t i = 0; i < h.nbrs_.size(); ++i)
    for (Vertex v : h.nbrs_[i]) h.bits_[i * h.words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  return h;
}

std::uint64_t Hypergraph::key(std::span<const Vertex> sorted) const {
  std::uint64_t key = 0;
  for (Vertex v : sorted) key = key * n_ + v;
  return key;
}

bool Hypergraph::sorted_copy(std::span<const Vertex> ids, Vertex* buf) const {
  std::copy(ids.begin(), ids.end(), buf);
  std::sort(buf, buf + ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (buf[i] >= n_) return false;
    if (i && buf[i] == buf[i - 1]) return false;
  }
  return true;
}

bool Hypergraph::has_edge(std::span<const Vertex> ids) const {
  if (ids.size() != static_cast<std::size_t>(k_)) return false;
  std::array<Vertex, kMaxUniformity> buf{};
  if (!sorted_copy(ids, buf.data())) return false;
  return edge_keys_.count(key({buf.data(), ids.size()})) > 0;
}

long Hypergraph::shadow_index(std::span<const Vertex> f) const {
  if (f.size() + 1 != static_cast<std::size_t>(k_)) return -1;
  std::array<Vertex, kMaxUniformity> buf{};
  if (!sorted_copy(f, buf.data())) return -1;
  auto it = shadow_ids_.find(key({buf.data(), f.size()}));
  return it == shadow_ids_.end() ? -1 : static_cast<long>(it->second);
}

std::span<const Vertex> Hypergraph::neighbours(std::span<const Vertex> f) const {
  long i = shadow_index(f);
  if (i < 0) return {};
  return nbrs_[static_cast<std::size_t>(i)];
}

const std::uint64_t* Hypergraph::neighbour_bits(std::span<const Vertex> f) const {
  long i = shadow_index(f);
  if (i < 0) return nullptr;
  return shadow_bits(static_cast<std::size_t>(i));
}

CodegreeProfile codegree_profile(const Hypergraph& h) {
  CodegreeProfile p;
  p.min_codegree = std::numeric_limits<std::size_t>::max();
  std::vector<Vertex> comb(static_cast<std::size_t>(h.k() - 1));
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = static_cast<Vertex>(i);
  do {
    std::size_t d = h.codegree(comb);
    p.degrees.emplace_back(comb, d);
    if (d < p.min_codegree) {
      p.min_codegree = d;
      p.argmin = comb;
    }
  } while (next_combination(comb, h.n()));
  return p;
}

std::size_t min_codegree(const Hypergraph& h) {
  // Non-shadow sets have degree 0.
  double all = binomial(h.n(), static_cast<std::size_t>(h.k() - 1));
  if (static_cast<double>(h.shadow().size()) < all) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < h.shadow().size(); ++i) best = std::min(best, h.shadow_neighbours(i).size());
  return best;
}

std::size_t joint_degree(const Hypergraph& h, const std::vector<VertexSet>& family, const VertexMask* within) {
  if (family.empty()) throw std::invalid_argument("joint_degree needs a nonempty family");
  std::vector<std::uint64_t> acc(h.words(), ~std::uint64_t{0});
  if (within) std::copy(within->data(), within->data() + h.words(), acc.begin());
  for (const auto& f : family) {
    VertexSet s = make_set(f);
    if (f.size() + 1 != static_cast<std::size_t>(h.k()) || s.size() != f.size())
      throw std::invalid_argument("malformed set " + to_string(f) + " in family");
    const std::uint64_t* b = h.neighbour_bits(s);
    if (!b) return 0;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= b[i];
  }
  std::size_t c = 0;
  for (auto w : acc) c += std::popcount(w);
  return c;
}

LargenessResult largeness_check(const Hypergraph& h, std::size_t ell, const VertexMask* within) {
  LargenessResult r;
  r.worst = std::numeric_limits<std::size_t>::max();
  const std::size_t s = h.shadow().size();
  const std::size_t w = h.words();
  std::vector<std::uint64_t> masked;
  for (std::size_t i = 0; i < s; ++i) {
    const std::uint64_t* a = h.shadow_bits(i);
    if (within) {
      masked.assign(a, a + w);
      for (std::size_t q = 0; q < w; ++q) masked[q] &= within->data()[q];
      a = masked.data();
    }
    for (std::size_t j = i + 1; j < s; ++j) {
      std::size_t c = and_count(a, h.shadow_bits(j), w);
      if (c < r.worst) {
        r.worst = c;
        r.worst_f = h.shadow()[i];
        r.worst_g = h.shadow()[j];
      }
    }
  }
  if (s < 2) r.worst = s == 1 ? h.shadow_neighbours(0).size() : 0;
  r.pass = r.worst >= ell;
  return r;
}

namespace {

// Depth-first enumeration of partner assignments with bitset candidate sets.
class K22Search {
 public:
  K22Search(const Hypergraph& h, std::span<const Vertex> e, const VertexMask* within)
      : h_(h), k_(static_cast<std::size_t>(h.k())), within_(within), words_(h.words()) {
    e_.assign(e.begin(), e.end());
    std::sort(e_.begin(), e_.end());
    p_.assign(k_, kNoVertex);
    buf_.assign(k_ * words_, 0);
  }

  template <class Leaf>
  void run(std::size_t j, Leaf&& leaf) {
    std::uint64_t* cand = buf_.data() + j * words_;
    if (within_)
      std::copy(within_->data(), within_->data() + words_, cand);
    else
      std::fill(cand, cand + words_, ~std::uint64_t{0});
    std::array<Vertex, kMaxUniformity> f{};
    for (std::uint32_t s = 0; s < (1U << j); ++s) {
      std::size_t m = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        if (i == j) continue;
        f[m++] = (i < j && ((s >> i) & 1U)) ? p_[i] : e_[i];
      }
      const std::uint64_t* b = h_.neighbour_bits({f.data(), m});
      if (!b) return;
      for (std::size_t q = 0; q < words_; ++q) cand[q] &= b[q];
    }
    for (Vertex v : e_) cand[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    for (std::size_t i = 0; i < j; ++i) cand[p_[i] >> 6] &= ~(std::uint64_t{1} << (p_[i] & 63));
    if (j + 1 == k_) {
      leaf(cand);
      return;
    }
    for_each_bit(cand, words_, [&](Vertex v) {
      p_[j] = v;
      run(j + 1, leaf);
    });
  }

  std::vector<Vertex>& partners() { return p_; }
  std::size_t words() const { return words_; }

 private:
  const Hypergraph& h_;
  std::size_t k_;
  const VertexMask* within_;
  std::size_t words_;
  std::vector<Vertex> e_, p_;
  std::vector<std::uint64_t> buf_;
};

void require_edge(const Hypergraph& h, std::span<const Vertex> e) {
  if (!h.has_edge(e)) throw std::invalid_argument("not an edge of the host: " + to_string(e));
}

}  // namespace

std::size_t k22_count(const Hypergraph& h, std::span<const Vertex> e, const VertexMask* within) {
  require_edge(h, e);
  K22Search s(h, e, within);
  std::size_t total = 0;
  s.run(0, [&](const std::uint64_t* cand) {
    for (std::size_t q = 0; q < s.words(); ++q) total += std::popcount(cand[q]);
  });
  return total;
}

void for_each_k22(const Hypergraph& h, std::span<const Vertex> e, const VertexMask* within,
                  const std::function<void(std::span<const Vertex>)>& f) {
  require_edge(h, e);
  K22Search s(h, e, within);
  const std::size_t last = static_cast<std::size_t>(h.k()) - 1;
  s.run(0, [&](const std::uint64_t* cand) {
    for_each_bit(cand, s.words(), [&](Vertex v) {
      s.partners()[last] = v;
      f(s.partners());
    });
  });
}

double extensibility_threshold(const Hypergraph& h, double theta) {
  const auto k = static_cast<std::size_t>(h.k());
  return theta * binomial(h.n() - k, k);
}

bool is_extensible(const Hypergraph& h, std::span<const Vertex> e, double theta) {
  return static_cast<double>(k22_count(h, e)) >= extensibility_threshold(h, theta);
}

std::vector<VertexSet> extensible_edges(const Hypergraph& h, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  std::vector<VertexSet> out;
  const double t = extensibility_threshold(h, theta);
  for (const auto& e : h.edges())
    if (static_cast<double>(k22_count(h, e)) >= t) out.push_back(e);
  return out;
}

VertexSet Walk::interior() const {
  VertexSet all = make_set(vertices);
  VertexSet ends = make_set(start());
  ends = set_union(ends, make_set(end()));
  return set_minus(all, ends);
}

Walk walk_inspect(const Hypergraph& h, std::vector<Vertex> vertices) {
  const auto k = static_cast<std::size_t>(h.k());
  if (vertices.size() < k) throw std::invalid_argument("a walk needs at least k vertices");
  for (std::size_t i = 0; i + k <= vertices.size(); ++i) {
    std::span<const Vertex> window(vertices.data() + i, k);
    if (!h.has_edge(window))
      throw std::invalid_argument("window " + to_string(window) + " at position " + std::to_string(i) +
                                  " is not an edge");
  }
  return Walk{std::move(vertices), h.k()};
}

}  // namespace hypertree
