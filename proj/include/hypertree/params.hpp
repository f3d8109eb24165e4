#pragma once

#include <cstdint>
#include <string>

namespace hypertree {

struct PipelineParams {
  // Largeness fraction: the host must be gamma n-large.
  double gamma = 0.2;
  // Reservoir slack.
  double mu = 0.05;
  // Extensibility fraction.
  double theta = 0.01;
  // Connection length; 0 selects (2k+1) floor(k/2) + 2k.
  std::size_t ell = 0;
  double beta = 0.1;
  // Decomposition depth; 0 selects ell.
  int d = 0;
  // The absorber subtree has between alpha n / Delta and alpha n edges.
  double alpha = 0.1;
  // Absorbing family size as a fraction of n, before trimming to |B|.
  double nu = 0.2;
  std::size_t walk_cap = 4;
  int retry_cap = 3;
  double timeout_ms = 30'000;
  std::uint64_t seed = 0;

  // Separation of the X-tuple family; 0 selects 2 Delta k (ell + 3k).
  std::size_t separation = 0;
  // Lower bound on d(W_1, ..., W_k) for the partite blocks.
  double density = 0.5;
  // Slack of the uniformly-dense certification of the blocks.
  double eps = 0.1;

  std::size_t ell_for(int k) const;
  int d_for(int k) const;
  std::size_t separation_for(int k, std::size_t delta) const;
  // Throws std::invalid_argument naming the first bad field.
  void validate(int k) const;
};

}  // namespace hypertree
