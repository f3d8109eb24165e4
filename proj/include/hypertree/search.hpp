#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypertree/embedding.hpp"

namespace hypertree {

// Deadline that may be unset. Checked by long-running searches.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after_ms(double ms);
  static Deadline none() { return Deadline(); }
  bool expired() const;
  // Remaining milliseconds; +inf when unset.
  double remaining_ms() const;
  bool set() const { return at_.has_value(); }
  // The earlier of the two.
  Deadline min(const Deadline& o) const;

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

enum class SearchStatus { found, absent, budget };

std::string to_string(SearchStatus s);

// Backtracking embedding of a k-tree into a host.
//
// Vertices are placed once their rooted anchor is mapped, most constrained
// first (ties: earlier in the tree's ordering). Candidates for v are the
// unused common neighbours of its anchor image; each anchor group is checked
// to have at least as many candidates as unplaced members.
struct SearchProblem {
  const Hypergraph* host = nullptr;
  const KTree* tree = nullptr;
  // Pre-assigned images; checked like any other placement.
  Embedding pinned;
  // Per tree label, the allowed host vertices (nullptr: any).
  std::vector<const VertexMask*> allowed;
  // Host vertices that no unpinned tree vertex may use.
  const VertexMask* forbidden = nullptr;
  // Shuffle candidate order with this seed; otherwise lex-least first.
  std::optional<std::uint64_t> shuffle_seed;
  // Extra test for mapping tree vertex v to host vertex c; phi holds the
  // current images (kNoVertex when unset). Not called for pinned vertices.
  std::function<bool(Vertex v, Vertex c, const std::vector<Vertex>& phi)> accept;
  // When false, pinned images are taken as given and their edges are not
  // checked against the host.
  bool check_pinned = true;
};

struct SearchLimits {
  std::size_t node_budget = SIZE_MAX;
  Deadline deadline;
};

struct SearchResult {
  SearchStatus status = SearchStatus::budget;
  Embedding phi;
  std::size_t nodes = 0;
};

SearchResult search_embedding(const SearchProblem& p, const SearchLimits& limits);

// Exhaustive search for an embedding of T into H (|V(T)| <= n). `absent` is
// returned only after the search space is exhausted.
SearchResult brute_force_embed(const Hypergraph& h, const KTree& t, const Deadline& deadline = {},
                               std::size_t node_budget = SIZE_MAX);

// Randomised restarts with geometrically growing node budgets, then one
// exhaustive pass with whatever time is left.
SearchResult restart_search(const SearchProblem& p, std::uint64_t seed, const Deadline& deadline,
                            std::size_t first_budget = 2000, int restarts = 12);

}  // namespace hypertree
