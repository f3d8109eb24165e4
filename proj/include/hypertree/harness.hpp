#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypertree/pipeline.hpp"

namespace hypertree {

struct HostSpec {
  // binomial | complete | hab | extremal | file. `extremal` builds H(A,B)
  // for the trial's tree.
  std::string kind = "binomial";
  int k = 3;
  std::size_t n = 30;
  double p = 0.9;
  // |A| and |B| for hab.
  std::size_t a = 0, b = 0;
  // Binomial hosts are resampled until min_codegree >= this fraction of n.
  double min_codegree_frac = 0.0;
  int max_resamples = 200;
  std::string path;
};

struct TreeSpec {
  // random | path | star | file; n = 0 takes the host order.
  std::string kind = "random";
  std::size_t n = 0;
  std::size_t delta = 3;
  // Trees per seed.
  std::size_t count = 1;
  std::string path;
};

struct ExperimentConfig {
  HostSpec host;
  TreeSpec tree;
  Method method = Method::hybrid;
  PipelineParams params;
  std::vector<std::uint64_t> seeds;
  // Per-trial report.json / embedding.txt go under out_dir/seed-<seed>/trial-<i>;
  // nothing is written when empty.
  std::string out_dir;

  // Throws std::invalid_argument naming the first problem.
  void validate() const;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  int k = 0;
  std::size_t n = 0;
  std::size_t delta1 = 0;
  std::string host_kind;
  std::size_t min_codegree = 0;
  std::string method;
  bool success = false;
  // Pipeline stage reached, with "+restart" / "+brute" when a fallback ran.
  std::string stage;
  double time_ms = 0.0;
  int retries = 0;
  // found | proven-absent | timeout
  std::string status;
};

// Output directory from HYPERTREE_OUT_DIR, else "hypertree-out".
std::string default_out_dir();

// One record per (seed, tree) pair, in seed order then tree order. Hosts and
// trees are derived from the seed alone. Throws std::runtime_error when the
// output directory cannot be written.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// trial,seed,k,n,delta1,host_kind,min_codegree,method,success,stage,time_ms,retries
std::string csv_header();
std::string csv_row(const TrialRecord& r);
void write_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

// Host and tree of a trial as run_experiment builds them.
struct TrialInstance {
  Hypergraph host;
  KTree tree;
};
TrialInstance make_instance(const ExperimentConfig& cfg, std::uint64_t seed, std::size_t tree_index);

}  // namespace hypertree
