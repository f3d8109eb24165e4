#pragma once

#include <string>
#include <vector>

#include "hypertree/layering.hpp"

namespace hypertree {

struct DecompositionPart {
  VertexSet root;
  // Edge indices into the layered tree, increasing.
  std::vector<std::size_t> edge_ids;
  std::vector<VertexSet> edges;
  VertexSet vertices;
};

struct Decomposition {
  std::vector<DecompositionPart> parts;
  double beta = 0.0;
  int d = 1;
  std::size_t delta = 2;
};

// Follows the existence proof: take the lex-least pending root x; if T_x is
// small it becomes a part, otherwise cut d-1 levels, absorb small subtrees,
// and keep cutting the lex-least large root until the part holds at least
// beta t / 2 edges, or until the next cut would push it past beta t (it then
// holds at least beta t / (2 delta^d)). delta = 0 uses max(2, Delta_1(T)).
// Throws std::invalid_argument when t < 2 delta^d / beta.
Decomposition decompose_beta_d(const LayeredTree& lt, double beta, int d, std::size_t delta = 0);

struct DecompositionCheck {
  // 0 when valid, otherwise the first violated clause (1..6).
  int clause = 0;
  std::string detail;
  bool ok() const { return clause == 0; }
};

DecompositionCheck validate_decomposition(const LayeredTree& lt, const Decomposition& dec);

}  // namespace hypertree
