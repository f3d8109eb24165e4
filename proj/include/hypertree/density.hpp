#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hypertree/hypergraph.hpp"

namespace hypertree {

// |deg(F) - rho^|F| n| <= eps n for all families of at most h (k-1)-sets.
struct Typical {
  double rho = 0.0;
  int h = 1;
  double eps = 0.0;
};

// e(W_1..W_k) >= d |W_1|...|W_k| - eps m^k over disjoint W_i. With `parts`
// set, W_i ranges over subsets of parts[i] and m is the largest part;
// otherwise W_i are arbitrary disjoint subsets and m = n.
struct UniformlyDense {
  double eps = 0.0;
  double d = 0.0;
  std::vector<VertexSet> parts;
};

// |e(U) - eta binom(|U|, k)| <= delta n^k over all U.
struct WeaklyQuasirandom {
  double eta = 0.0;
  double delta = 0.0;
};

using DensityKind = std::variant<Typical, UniformlyDense, WeaklyQuasirandom>;

struct DensityMode {
  enum class Kind { exhaustive, sampled, given };
  Kind kind = Kind::sampled;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  // Exhaustive mode refuses families larger than this.
  std::size_t budget = 2'000'000;
  // Witness families for Kind::given (each a list of vertex sets shaped
  // like the checked kind: F, (W_1..W_k) or {U}).
  std::vector<std::vector<VertexSet>> witnesses;

  static DensityMode exhaustive(std::size_t budget = 2'000'000) {
    DensityMode m;
    m.kind = Kind::exhaustive;
    m.budget = budget;
    return m;
  }
  static DensityMode sampled(std::size_t trials, std::uint64_t seed) {
    DensityMode m;
    m.kind = Kind::sampled;
    m.trials = trials;
    m.seed = seed;
    return m;
  }
  static DensityMode given(std::vector<std::vector<VertexSet>> w) {
    DensityMode m;
    m.kind = Kind::given;
    m.witnesses = std::move(w);
    return m;
  }
};

struct DensityReport {
  std::string kind;
  // "exhaustive" proves the property; "sampled" and "given" only refute.
  std::string mode;
  std::vector<std::pair<std::string, double>> parameters;
  bool pass = true;
  std::size_t checked = 0;
  // Smallest slack seen; negative means the bound is violated.
  double worst_slack = 0.0;
  std::vector<VertexSet> witness;
};

// Throws BudgetExceeded when exhaustive mode would exceed the budget.
DensityReport density_check(const Hypergraph& h, const DensityKind& kind, const DensityMode& mode);

// Number of edges with exactly one vertex in each of the disjoint sets.
std::size_t partite_edge_count(const Hypergraph& h, const std::vector<VertexSet>& parts);

}  // namespace hypertree
