#include "hypertree/reservoir.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace hypertree {

ReservoirContext::ReservoirContext(const Hypergraph& h, std::size_t edge_budget, std::uint64_t seed) : h_(&h) {
  const std::size_t m = h.num_edges();
  edge_ids_.resize(m);
  std::iota(edge_ids_.begin(), edge_ids_.end(), std::size_t{0});
  if (m > edge_budget) {
    Rng rng(derive_seed(seed, 0x4e5));
    std::shuffle(edge_ids_.begin(), edge_ids_.end(), rng);
    edge_ids_.resize(edge_budget);
    std::sort(edge_ids_.begin(), edge_ids_.end());
    exhaustive_ = false;
  }
  k22_.reserve(edge_ids_.size());
  for (std::size_t i : edge_ids_) k22_.push_back(k22_count(h, h.edges()[i]));
}

namespace {

double family_count(std::size_t s, int fam) {
  double total = 0.0;
  for (int j = 1; j <= fam; ++j) total += binomial(s, static_cast<std::size_t>(j));
  return total;
}

struct FamilyScan {
  const Hypergraph& h;
  const VertexMask& u;
  double mu;
  double usize;
  double n;
  ReservoirReport& rep;
  std::vector<std::uint64_t> acc;  // one row per depth
  std::vector<std::size_t> chosen;

  void record(std::size_t depth) {
    const std::size_t w = h.words();
    const std::uint64_t* row = acc.data() + (depth - 1) * w;
    std::size_t all = 0, in_u = 0;
    for (std::size_t q = 0; q < w; ++q) {
      all += static_cast<std::size_t>(std::popcount(row[q]));
      in_u += static_cast<std::size_t>(std::popcount(row[q] & u.data()[q]));
    }
    double slack = static_cast<double>(in_u) - (static_cast<double>(all) / n - mu) * usize;
    ++rep.families_checked;
    if (slack < 0) ++rep.families_failed;
    if (rep.families_checked == 1 || slack < rep.worst_family_slack) {
      rep.worst_family_slack = slack;
      rep.worst_family.clear();
      for (std::size_t d = 0; d < depth; ++d) rep.worst_family.push_back(h.shadow()[chosen[d]]);
    }
  }

  void push(std::size_t depth, std::size_t idx) {
    const std::size_t w = h.words();
    const std::uint64_t* b = h.shadow_bits(idx);
    std::uint64_t* row = acc.data() + depth * w;
    if (depth == 0)
      std::copy(b, b + w, row);
    else
      for (std::size_t q = 0; q < w; ++q) row[q] = *(row - w + q) & b[q];
    chosen[depth] = idx;
  }

  void exhaustive(std::size_t depth, std::size_t from, int fam) {
    for (std::size_t i = from; i < h.shadow().size(); ++i) {
      push(depth, i);
      record(depth + 1);
      if (static_cast<int>(depth + 1) < fam) exhaustive(depth + 1, i + 1, fam);
    }
  }
};

}  // namespace

ReservoirReport verify_reservoir(const Hypergraph& h, const VertexMask& u, double gamma, double mu, int fam,
                                 const ReservoirOptions& opt, std::uint64_t seed, const ReservoirContext* ctx) {
  ReservoirReport rep;
  const double n = static_cast<double>(h.n());
  rep.size = u.count();
  rep.lower = (gamma - mu) * n;
  rep.upper = (gamma + mu) * n;
  rep.size_ok = static_cast<double>(rep.size) >= rep.lower && static_cast<double>(rep.size) <= rep.upper;
  const double usize = static_cast<double>(rep.size);

  FamilyScan scan{h, u, mu, usize, n, rep, {}, {}};
  scan.acc.assign(static_cast<std::size_t>(fam) * h.words(), 0);
  scan.chosen.assign(static_cast<std::size_t>(fam), 0);
  const std::size_t s = h.shadow().size();
  if (s > 0) {
    if (family_count(s, fam) <= static_cast<double>(opt.family_budget)) {
      rep.families_exhaustive = true;
      scan.exhaustive(0, 0, fam);
    } else {
      Rng rng(derive_seed(seed, 0xfa));
      std::uniform_int_distribution<std::size_t> pick(0, s - 1);
      std::uniform_int_distribution<int> size(1, fam);
      for (std::size_t t = 0; t < opt.family_budget; ++t) {
        int sz = size(rng);
        for (int d = 0; d < sz; ++d) scan.push(static_cast<std::size_t>(d), pick(rng));
        scan.record(static_cast<std::size_t>(sz));
      }
    }
  }

  std::optional<ReservoirContext> local;
  if (!ctx) ctx = &local.emplace(h, opt.edge_budget, seed);
  rep.edges_exhaustive = ctx->exhaustive();
  const auto k = static_cast<std::size_t>(h.k());
  const double full = binomial(h.n() - k, k);
  const double sub = rep.size >= k ? binomial(rep.size - k, k) : 0.0;
  for (std::size_t j = 0; j < ctx->edge_ids().size(); ++j) {
    const VertexSet& e = h.edges()[ctx->edge_ids()[j]];
    double need = full > 0 ? (static_cast<double>(ctx->k22()[j]) / full - mu) * sub : -1.0;
    ++rep.edges_checked;
    // Nothing to show when the bound is not positive.
    double got = need > 0 ? static_cast<double>(k22_count(h, e, &u)) : 0.0;
    double slack = got - need;
    if (slack < 0) ++rep.edges_failed;
    if (rep.edges_checked == 1 || slack < rep.worst_edge_slack) {
      rep.worst_edge_slack = slack;
      rep.worst_edge = e;
    }
  }
  return rep;
}

Reservoir sample_reservoir(const Hypergraph& h, double gamma, double mu, int fam, std::uint64_t seed,
                           const ReservoirOptions& opt) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (!(mu > 0.0 && mu < gamma)) throw std::invalid_argument("mu must lie in (0, gamma)");
  if (fam < 1) throw std::invalid_argument("family size h must be at least 1");
  ReservoirContext ctx(h, opt.edge_budget, seed);
  std::optional<Reservoir> best;
  std::size_t best_bad = std::numeric_limits<std::size_t>::max();
  const int tries = std::max(1, opt.retry_cap);
  for (int a = 0; a < tries; ++a) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(a)));
    std::bernoulli_distribution in(gamma);
    Reservoir r;
    r.mask = VertexMask(h.n());
    for (Vertex v = 0; v < h.n(); ++v)
      if (in(rng)) r.mask.set(v);
    r.vertices = r.mask.members();
    r.report = verify_reservoir(h, r.mask, gamma, mu, fam, opt, derive_seed(seed, 1000U + static_cast<std::uint64_t>(a)), &ctx);
    r.report.attempts = a + 1;
    if (r.report.pass()) return r;
    std::size_t bad = r.report.families_failed + r.report.edges_failed + (r.report.size_ok ? 0 : 1);
    if (bad < best_bad) {
      best_bad = bad;
      best = std::move(r);
    }
  }
  if (opt.strict)
    throw SearchFailure("no (" + std::to_string(gamma) + ", " + std::to_string(mu) + ", " + std::to_string(fam) +
                        ")-reservoir found in " + std::to_string(tries) + " attempts");
  best->report.attempts = tries;
  return *best;
}

}  // namespace hypertree
