#include "hypertree/density.hpp"

#include <cmath>
#include <limits>

namespace hypertree {

namespace {

struct Tracker {
  DensityReport& r;
  void see(double slack, std::vector<VertexSet> witness) {
    ++r.checked;
    if (r.checked == 1 || slack < r.worst_slack) {
      r.worst_slack = slack;
      r.witness = std::move(witness);
    }
  }
};

double typical_slack(const Hypergraph& h, const Typical& t, const std::vector<VertexSet>& family) {
  const double n = static_cast<double>(h.n());
  double deg = static_cast<double>(joint_degree(h, family));
  double expect = std::pow(t.rho, static_cast<double>(family.size())) * n;
  return t.eps * n - std::abs(deg - expect);
}

double dense_slack(const Hypergraph& h, const UniformlyDense& u, const std::vector<VertexSet>& w) {
  double m = static_cast<double>(h.n());
  if (!u.parts.empty()) {
    m = 0;
    for (const auto& p : u.parts) m = std::max(m, static_cast<double>(p.size()));
  }
  double prod = u.d;
  for (const auto& s : w) prod *= static_cast<double>(s.size());
  return static_cast<double>(partite_edge_count(h, w)) - prod + u.eps * std::pow(m, h.k());
}

double quasi_slack(const Hypergraph& h, const WeaklyQuasirandom& q, const VertexSet& u) {
  VertexMask in = VertexMask::of(h.n(), u);
  std::size_t e = 0;
  for (const auto& edge : h.edges()) {
    bool all = true;
    for (Vertex v : edge) all = all && in.test(v);
    e += all;
  }
  double target = q.eta * binomial(u.size(), static_cast<std::size_t>(h.k()));
  return q.delta * std::pow(static_cast<double>(h.n()), h.k()) - std::abs(static_cast<double>(e) - target);
}

VertexSet random_subset(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Vertex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(size);
  return make_set(all);
}

void check_budget(double count, std::size_t budget) {
  if (count > static_cast<double>(budget))
    throw BudgetExceeded("exhaustive density check needs " + std::to_string(count) +
                         " witnesses, budget is " + std::to_string(budget));
}

void run_typical(const Hypergraph& h, const Typical& t, const DensityMode& mode, Tracker& tr) {
  if (t.h < 1) throw std::invalid_argument("typicality needs h >= 1");
  const auto r = static_cast<std::size_t>(h.k() - 1);
  if (mode.kind == DensityMode::Kind::exhaustive) {
    double all = binomial(h.n(), r);
    double count = 0;
    for (int j = 1; j <= t.h; ++j) count += binomial(static_cast<std::size_t>(all), static_cast<std::size_t>(j));
    check_budget(count, mode.budget);
    std::vector<VertexSet> sets;
    std::vector<Vertex> comb(r);
    for (std::size_t i = 0; i < r; ++i) comb[i] = static_cast<Vertex>(i);
    do sets.push_back(comb);
    while (next_combination(comb, h.n()));
    for (int j = 1; j <= t.h && static_cast<std::size_t>(j) <= sets.size(); ++j) {
      std::vector<Vertex> idx(static_cast<std::size_t>(j));
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Vertex>(i);
      do {
        std::vector<VertexSet> fam;
        for (Vertex i : idx) fam.push_back(sets[i]);
        double s = typical_slack(h, t, fam);
        tr.see(s, std::move(fam));
      } while (next_combination(idx, sets.size()));
    }
  } else if (mode.kind == DensityMode::Kind::sampled) {
    Rng rng(mode.seed);
    std::uniform_int_distribution<int> size(1, t.h);
    for (std::size_t trial = 0; trial < mode.trials; ++trial) {
      int j = size(rng);
      std::vector<VertexSet> fam;
      while (fam.size() < static_cast<std::size_t>(j)) {
        VertexSet f = random_subset(h.n(), r, rng);
        if (std::find(fam.begin(), fam.end(), f) == fam.end()) fam.push_back(std::move(f));
      }
      double s = typical_slack(h, t, fam);
      tr.see(s, std::move(fam));
    }
  } else {
    for (const auto& w : mode.witnesses) tr.see(typical_slack(h, t, w), w);
  }
}

void run_dense(const Hypergraph& h, const UniformlyDense& u, const DensityMode& mode, Tracker& tr) {
  const auto k = static_cast<std::size_t>(h.k());
  if (!u.parts.empty() && u.parts.size() != k) throw std::invalid_argument("need exactly k parts");
  // Each vertex gets a label in [0, k]; label 0 means unused.
  std::vector<int> home(h.n(), -1);
  for (std::size_t i = 0; i < u.parts.size(); ++i)
    for (Vertex v : u.parts[i]) home[v] = static_cast<int>(i);
  auto sets_of = [&](const std::vector<int>& label) {
    std::vector<VertexSet> w(k);
    for (std::size_t v = 0; v < label.size(); ++v)
      if (label[v] > 0) w[static_cast<std::size_t>(label[v] - 1)].push_back(static_cast<Vertex>(v));
    return w;
  };
  if (mode.kind == DensityMode::Kind::exhaustive) {
    std::vector<Vertex> free;
    for (std::size_t v = 0; v < h.n(); ++v)
      if (u.parts.empty() || home[v] >= 0) free.push_back(static_cast<Vertex>(v));
    const double base = u.parts.empty() ? static_cast<double>(k + 1) : 2.0;
    check_budget(std::pow(base, static_cast<double>(free.size())), mode.budget);
    std::vector<int> label(h.n(), 0);
    std::vector<int> digit(free.size(), 0);
    const int top = u.parts.empty() ? static_cast<int>(k) : 1;
    while (true) {
      for (std::size_t i = 0; i < free.size(); ++i) {
        Vertex v = free[i];
        label[v] = u.parts.empty() ? digit[i] : (digit[i] ? home[v] + 1 : 0);
      }
      auto w = sets_of(label);
      double s = dense_slack(h, u, w);
      tr.see(s, std::move(w));
      std::size_t i = 0;
      while (i < digit.size() && digit[i] == top) digit[i++] = 0;
      if (i == digit.size()) break;
      ++digit[i];
    }
  } else if (mode.kind == DensityMode::Kind::sampled) {
    Rng rng(mode.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> part(1, static_cast<int>(k));
    for (std::size_t trial = 0; trial < mode.trials; ++trial) {
      double q = 1.0 - unit(rng);
      std::vector<int> label(h.n(), 0);
      for (std::size_t v = 0; v < h.n(); ++v) {
        if (!u.parts.empty() && home[v] < 0) continue;
        if (unit(rng) < q) label[v] = u.parts.empty() ? part(rng) : home[v] + 1;
      }
      auto w = sets_of(label);
      double s = dense_slack(h, u, w);
      tr.see(s, std::move(w));
    }
  } else {
    for (const auto& w : mode.witnesses) tr.see(dense_slack(h, u, w), w);
  }
}

void run_quasi(const Hypergraph& h, const WeaklyQuasirandom& q, const DensityMode& mode, Tracker& tr) {
  if (mode.kind == DensityMode::Kind::exhaustive) {
    check_budget(std::pow(2.0, static_cast<double>(h.n())), mode.budget);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << h.n()); ++bits) {
      VertexSet u;
      for (std::size_t v = 0; v < h.n(); ++v)
        if ((bits >> v) & 1U) u.push_back(static_cast<Vertex>(v));
      double s = quasi_slack(h, q, u);
      tr.see(s, {std::move(u)});
    }
  } else if (mode.kind == DensityMode::Kind::sampled) {
    Rng rng(mode.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t trial = 0; trial < mode.trials; ++trial) {
      double p = unit(rng);
      VertexSet u;
      for (std::size_t v = 0; v < h.n(); ++v)
        if (unit(rng) < p) u.push_back(static_cast<Vertex>(v));
      double s = quasi_slack(h, q, u);
      tr.see(s, {std::move(u)});
    }
  } else {
    for (const auto& w : mode.witnesses) {
      if (w.size() != 1) throw std::invalid_argument("a quasirandomness witness is a single set");
      tr.see(quasi_slack(h, q, w[0]), w);
    }
  }
}

}  // namespace

std::size_t partite_edge_count(const Hypergraph& h, const std::vector<VertexSet>& parts) {
  std::vector<int> part_of(h.n(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
  std::size_t count = 0;
  std::vector<char> seen(parts.size());
  for (const auto& e : h.edges()) {
    std::fill(seen.begin(), seen.end(), 0);
    bool ok = true;
    for (Vertex v : e) {
      int p = part_of[v];
      if (p < 0 || seen[static_cast<std::size_t>(p)]) {
        ok = false;
        break;
      }
      seen[static_cast<std::size_t>(p)] = 1;
    }
    count += ok && parts.size() == static_cast<std::size_t>(h.k());
  }
  return count;
}

DensityReport density_check(const Hypergraph& h, const DensityKind& kind, const DensityMode& mode) {
  if (mode.kind == DensityMode::Kind::sampled && mode.trials < 1)
    throw std::invalid_argument("sampled mode needs at least one trial");
  DensityReport r;
  r.mode = mode.kind == DensityMode::Kind::exhaustive ? "exhaustive"
           : mode.kind == DensityMode::Kind::sampled  ? "sampled"
                                                       : "given";
  Tracker tr{r};
  if (auto* t = std::get_if<Typical>(&kind)) {
    r.kind = "typical";
    r.parameters = {{"rho", t->rho}, {"h", t->h}, {"eps", t->eps}};
    run_typical(h, *t, mode, tr);
  } else if (auto* u = std::get_if<UniformlyDense>(&kind)) {
    r.kind = "uniformly_dense";
    r.parameters = {{"eps", u->eps}, {"d", u->d}};
    run_dense(h, *u, mode, tr);
  } else {
    const auto& q = std::get<WeaklyQuasirandom>(kind);
    r.kind = "weakly_quasirandom";
    r.parameters = {{"eta", q.eta}, {"delta", q.delta}};
    run_quasi(h, q, mode, tr);
  }
  // Small tolerance so exact boundary cases are not lost to rounding.
  r.pass = r.checked == 0 || r.worst_slack >= -1e-9;
  return r;
}

}  // namespace hypertree
