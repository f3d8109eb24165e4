#pragma once

#include <cstdint>
#include <vector>

#include "hypertree/hypergraph.hpp"

namespace hypertree {

struct ReservoirReport {
  std::size_t size = 0;
  double lower = 0.0, upper = 0.0;
  bool size_ok = false;

  // Property (ii): families F of shadow sets with |F| <= h.
  std::size_t families_checked = 0;
  bool families_exhaustive = false;
  std::size_t families_failed = 0;
  double worst_family_slack = 0.0;
  std::vector<VertexSet> worst_family;

  // Property (iii): K(2) counts per edge.
  std::size_t edges_checked = 0;
  bool edges_exhaustive = false;
  std::size_t edges_failed = 0;
  double worst_edge_slack = 0.0;
  VertexSet worst_edge;

  int attempts = 0;

  bool families_ok() const { return families_failed == 0; }
  bool edges_ok() const { return edges_failed == 0; }
  bool pass() const { return size_ok && families_ok() && edges_ok(); }
};

struct Reservoir {
  VertexSet vertices;
  VertexMask mask;
  ReservoirReport report;
};

struct ReservoirOptions {
  // Families are enumerated exhaustively when there are at most this many,
  // otherwise this many are sampled.
  std::size_t family_budget = 20'000'000;
  // Same for edges in property (iii).
  std::size_t edge_budget = 200'000;
  int retry_cap = 20;
  // Throw when no attempt passes; otherwise return the attempt with the
  // fewest violations.
  bool strict = true;
};

// Global K(2) counts of the checked edges; independent of U, so computed once
// per host and reused across attempts.
class ReservoirContext {
 public:
  ReservoirContext(const Hypergraph& h, std::size_t edge_budget, std::uint64_t seed);

  const Hypergraph& host() const { return *h_; }
  const std::vector<std::size_t>& edge_ids() const { return edge_ids_; }
  const std::vector<std::size_t>& k22() const { return k22_; }
  bool exhaustive() const { return exhaustive_; }

 private:
  const Hypergraph* h_;
  std::vector<std::size_t> edge_ids_;
  std::vector<std::size_t> k22_;
  bool exhaustive_ = true;
};

ReservoirReport verify_reservoir(const Hypergraph& h, const VertexMask& u, double gamma, double mu, int fam,
                                 const ReservoirOptions& opt, std::uint64_t seed,
                                 const ReservoirContext* ctx = nullptr);

// Includes every vertex independently with probability gamma and verifies
// (i)-(iii); resamples up to retry_cap times. Throws std::invalid_argument
// unless 0 < mu < gamma <= 1 and fam >= 1, and SearchFailure when strict and
// every attempt fails.
Reservoir sample_reservoir(const Hypergraph& h, double gamma, double mu, int fam, std::uint64_t seed,
                           const ReservoirOptions& opt = {});

}  // namespace hypertree
