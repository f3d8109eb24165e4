#include "hypertree/search.hpp"

#include <limits>
#include <map>

namespace hypertree {

Deadline Deadline::after_ms(double ms) {
  Deadline d;
  d.at_ = std::chrono::steady_clock::now() +
          std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double, std::milli>(ms));
  return d;
}

bool Deadline::expired() const { return at_ && std::chrono::steady_clock::now() >= *at_; }

double Deadline::remaining_ms() const {
  if (!at_) return std::numeric_limits<double>::infinity();
  return std::chrono::duration<double, std::milli>(*at_ - std::chrono::steady_clock::now()).count();
}

Deadline Deadline::min(const Deadline& o) const {
  if (!at_) return o;
  if (!o.at_) return *this;
  return *at_ <= *o.at_ ? *this : o;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::absent: return "proven-absent";
    case SearchStatus::budget: return "timeout";
  }
  return "?";
}

namespace {

struct Abort {};

class Searcher {
 public:
  Searcher(const SearchProblem& p, const SearchLimits& lim) : p_(p), h_(*p.host), t_(*p.tree), lim_(lim) {
    if (h_.k() != t_.k()) throw std::invalid_argument("host and tree have different uniformity");
    k_ = static_cast<std::size_t>(t_.k());
    words_ = h_.words();
    const std::size_t lb = t_.label_bound();
    phi_.assign(lb, kNoVertex);
    pinned_.assign(lb, 0);
    placed_.assign(lb, 0);
    missing_.assign(lb, 0);
    group_.assign(lb, -1);
    dependents_.assign(lb, {});
    used_ = VertexMask(h_.n());
    blocked_ = p.forbidden ? *p.forbidden : VertexMask(h_.n());
    if (blocked_.size() != h_.n()) throw std::invalid_argument("forbidden mask has the wrong size");
    rng_.seed(p.shuffle_seed.value_or(0));

    const auto& order = t_.vertex_order();
    std::map<VertexSet, int> groups;
    for (std::size_t i = k_ - 1; i < order.size(); ++i) {
      Vertex v = order[i];
      VertexSet a = t_.rooted_anchor(v);
      group_[v] = groups.emplace(a, static_cast<int>(groups.size())).first->second;
      for (Vertex u : a) dependents_[u].push_back(v);
      missing_[v] = static_cast<int>(a.size());
      anchors_.emplace(v, std::move(a));
    }
    group_count_ = groups.size();
    for (Vertex v : order)
      if (p.pinned.has(v)) {
        Vertex img = p.pinned[v];
        if (img >= h_.n()) throw std::invalid_argument("pinned image out of range");
        if (used_.test(img)) throw std::invalid_argument("two tree vertices pinned to one host vertex");
        pinned_[v] = 1;
        phi_[v] = img;
        used_.set(img);
        for (Vertex w : dependents_[v]) --missing_[w];
      }
    for (std::size_t i = k_ - 1; i < order.size(); ++i)
      if (missing_[order[i]] == 0) ready_.push_back(order[i]);
  }

  SearchResult run() {
    SearchResult r;
    try {
      bool ok = roots(0);
      r.status = ok ? SearchStatus::found : SearchStatus::absent;
    } catch (const Abort&) {
      r.status = SearchStatus::budget;
    }
    r.nodes = nodes_;
    if (r.status == SearchStatus::found) {
      r.phi = Embedding(t_.label_bound());
      for (Vertex v : t_.vertex_order()) r.phi.set(v, phi_[v]);
    }
    return r;
  }

 private:
  void tick() {
    ++nodes_;
    if (nodes_ > lim_.node_budget) throw Abort{};
    if ((nodes_ & 255U) == 0 && lim_.deadline.expired()) throw Abort{};
  }

  bool allowed(Vertex v, Vertex img) const {
    if (v < p_.allowed.size() && p_.allowed[v] && !p_.allowed[v]->test(img)) return false;
    return true;
  }

  // Map an unpinned vertex and update readiness; returns the number of
  // vertices pushed onto ready_.
  std::size_t map_vertex(Vertex v, Vertex img) {
    phi_[v] = img;
    used_.set(img);
    std::size_t pushed = 0;
    for (Vertex w : dependents_[v])
      if (--missing_[w] == 0 && !placed_[w]) {
        ready_.push_back(w);
        ++pushed;
      }
    return pushed;
  }

  void unmap_vertex(Vertex v, std::size_t pushed) {
    ready_.resize(ready_.size() - pushed);
    for (Vertex w : dependents_[v]) ++missing_[w];
    used_.reset(phi_[v]);
    phi_[v] = kNoVertex;
  }

  std::vector<Vertex> order_candidates(std::vector<Vertex> c) {
    if (p_.shuffle_seed) std::shuffle(c.begin(), c.end(), rng_);
    return c;
  }

  // Root vertices v_1..v_{k-1} in order; pinned ones are fixed.
  bool roots(std::size_t i) {
    const auto& order = t_.vertex_order();
    if (i + 1 == k_) {
      Tuple img(order.begin(), order.begin() + static_cast<long>(k_ - 1));
      for (Vertex& v : img) v = phi_[v];
      bool all_pinned = true;
      for (std::size_t j = 0; j + 1 < k_; ++j) all_pinned = all_pinned && pinned_[order[j]];
      if (k_ > 1 && !(all_pinned && !p_.check_pinned) && !h_.in_shadow(img)) return false;
      for (std::size_t j = 0; j + 1 < k_; ++j) placed_[order[j]] = 1;
      bool ok = place_next();
      for (std::size_t j = 0; j + 1 < k_; ++j) placed_[order[j]] = 0;
      return ok;
    }
    Vertex v = order[i];
    if (pinned_[v]) return roots(i + 1);
    std::vector<Vertex> cand;
    for (Vertex c = 0; c < h_.n(); ++c)
      if (!used_.test(c) && !blocked_.test(c) && h_.vertex_degree(c) > 0 && allowed(v, c)) cand.push_back(c);
    for (Vertex c : order_candidates(std::move(cand))) {
      tick();
      if (p_.accept && !p_.accept(v, c, phi_)) continue;
      std::size_t pushed = map_vertex(v, c);
      bool ok = roots(i + 1);
      if (ok) return true;
      unmap_vertex(v, pushed);
    }
    return false;
  }

  const std::uint64_t* anchor_bits(Vertex v) {
    const VertexSet& a = anchors_.at(v);
    buf_.resize(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) buf_[j] = phi_[a[j]];
    return h_.neighbour_bits(buf_);
  }

  bool place_next() {
    if (placed_count() == t_.n()) return true;
    if (ready_.empty()) return false;
    // Candidate bitsets of all ready vertices; fail fast on empty domains.
    cand_.assign(ready_.size() * words_, 0);
    std::size_t best = SIZE_MAX, best_count = SIZE_MAX;
    group_union_.assign(group_count_ * words_, 0);
    group_size_.assign(group_count_, 0);
    for (std::size_t r = 0; r < ready_.size(); ++r) {
      Vertex v = ready_[r];
      std::uint64_t* c = cand_.data() + r * words_;
      std::size_t count = 0;
      if (pinned_[v]) {
        Vertex img = phi_[v];
        const std::uint64_t* nb = p_.check_pinned ? anchor_bits(v) : nullptr;
        if (!p_.check_pinned || (nb && ((nb[img >> 6] >> (img & 63)) & 1U))) {
          c[img >> 6] |= std::uint64_t{1} << (img & 63);
          count = 1;
        }
      } else {
        const std::uint64_t* nb = anchor_bits(v);
        if (!nb) return false;
        const std::uint64_t* u = used_.data();
        const std::uint64_t* b = blocked_.data();
        const VertexMask* al = v < p_.allowed.size() ? p_.allowed[v] : nullptr;
        for (std::size_t w = 0; w < words_; ++w) {
          c[w] = nb[w] & ~u[w] & ~b[w];
          if (al) c[w] &= al->data()[w];
          count += static_cast<std::size_t>(std::popcount(c[w]));
        }
        auto g = static_cast<std::size_t>(group_[v]);
        ++group_size_[g];
        for (std::size_t w = 0; w < words_; ++w) group_union_[g * words_ + w] |= c[w];
      }
      if (count == 0) return false;
      auto pos = t_.position(v);
      if (count < best_count || (count == best_count && pos < t_.position(ready_[best]))) {
        best = r;
        best_count = count;
      }
    }
    for (std::size_t g = 0; g < group_count_; ++g)
      if (group_size_[g] > 0) {
        std::size_t avail = 0;
        for (std::size_t w = 0; w < words_; ++w) avail += static_cast<std::size_t>(std::popcount(group_union_[g * words_ + w]));
        if (avail < group_size_[g]) return false;
      }

    Vertex v = ready_[best];
    std::vector<Vertex> cand;
    for_each_bit(cand_.data() + best * words_, words_, [&](Vertex c) { cand.push_back(c); });
    // Remove v from ready_ (swap-remove) and restore afterwards.
    std::swap(ready_[best], ready_.back());
    ready_.pop_back();
    placed_[v] = 1;
    ++placed_count_;
    bool ok = false;
    if (pinned_[v]) {
      tick();
      ok = place_next();
    } else {
      for (Vertex c : order_candidates(std::move(cand))) {
        tick();
        if (p_.accept && !p_.accept(v, c, phi_)) continue;
        std::size_t pushed = map_vertex(v, c);
        ok = place_next();
        if (ok) break;
        unmap_vertex(v, pushed);
      }
    }
    if (ok) return true;
    --placed_count_;
    placed_[v] = 0;
    ready_.push_back(v);
    std::swap(ready_[best], ready_.back());
    return false;
  }

  std::size_t placed_count() const { return placed_count_ + k_ - 1; }

  const SearchProblem& p_;
  const Hypergraph& h_;
  const KTree& t_;
  SearchLimits lim_;
  std::size_t k_ = 0, words_ = 0, group_count_ = 0;
  std::vector<Vertex> phi_;
  std::vector<char> pinned_, placed_;
  std::vector<int> missing_, group_;
  std::vector<std::vector<Vertex>> dependents_;
  std::map<Vertex, VertexSet> anchors_;
  VertexMask used_, blocked_;
  std::vector<Vertex> ready_;
  std::vector<std::uint64_t> cand_, group_union_;
  std::vector<std::size_t> group_size_;
  std::vector<Vertex> buf_;
  std::size_t placed_count_ = 0;
  std::size_t nodes_ = 0;
  Rng rng_;
};

}  // namespace

SearchResult search_embedding(const SearchProblem& p, const SearchLimits& limits) {
  if (!p.host || !p.tree) throw std::invalid_argument("search needs a host and a tree");
  if (p.tree->n() > p.host->n()) {
    SearchResult r;
    r.status = SearchStatus::absent;
    return r;
  }
  Searcher s(p, limits);
  return s.run();
}

SearchResult brute_force_embed(const Hypergraph& h, const KTree& t, const Deadline& deadline, std::size_t node_budget) {
  SearchProblem p;
  p.host = &h;
  p.tree = &t;
  return search_embedding(p, SearchLimits{node_budget, deadline});
}

SearchResult restart_search(const SearchProblem& p, std::uint64_t seed, const Deadline& deadline,
                            std::size_t first_budget, int restarts) {
  SearchProblem q = p;
  std::size_t budget = first_budget;
  std::size_t nodes = 0;
  for (int r = 0; r < restarts && !deadline.expired(); ++r) {
    q.shuffle_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    SearchResult res = search_embedding(q, SearchLimits{budget, deadline});
    nodes += res.nodes;
    if (res.status != SearchStatus::budget) {
      res.nodes = nodes;
      return res;
    }
    budget *= 2;
  }
  q.shuffle_seed.reset();
  SearchResult res = search_embedding(q, SearchLimits{SIZE_MAX, deadline});
  res.nodes += nodes;
  return res;
}

}  // namespace hypertree
