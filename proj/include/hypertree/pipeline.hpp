#pragma once

#include <string>
#include <vector>

#include "hypertree/embedding.hpp"
#include "hypertree/params.hpp"
#include "hypertree/search.hpp"

namespace hypertree {

enum class Method { pipeline, brute, hybrid };

std::string to_string(Method m);
// Throws std::invalid_argument on an unknown name.
Method parse_method(const std::string& s);

struct StageRecord {
  std::string name;
  double ms = 0.0;
  bool ok = false;
  int attempt = 0;
  std::string detail;
};

struct SpanningReport {
  Method method = Method::hybrid;
  // Last pipeline stage reached: "complete" on success, otherwise the stage
  // that failed; "skipped" when the pipeline did not run.
  std::string stage = "skipped";
  std::string failure;
  // "none", "restart" or "brute".
  std::string fallback = "none";
  int retries = 0;
  std::size_t fallback_nodes = 0;
  double time_ms = 0.0;
  std::vector<StageRecord> stages;
  // Largest difference in usage between two parts after the last part.
  std::size_t part_imbalance = 0;
  std::size_t reservoir_used = 0;
  std::size_t swaps = 0;
};

struct SpanningResult {
  SearchStatus status = SearchStatus::budget;
  Embedding phi;
  SpanningReport report;
  bool found() const { return status == SearchStatus::found; }
};

// Spanning embedding of t into h (|V(T)| = n).
//
// pipeline: absorber subtree covered onto an absorbing family, the rest of
// the tree through reservoir, balanced parts and (beta, d)-decomposition,
// leftover vertices absorbed. hybrid: the pipeline with half the timeout,
// then restarting backtracking, then brute force. brute: brute force only.
// Every returned embedding passed validate_embedding. Throws
// std::invalid_argument when k or the orders differ or params are invalid.
SpanningResult embed_spanning(const Hypergraph& h, const KTree& t, const PipelineParams& params,
                              Method method = Method::hybrid);

// JSON run report: per-stage timings, retries and the fallback used.
std::string report_json(const SpanningResult& r);

}  // namespace hypertree
