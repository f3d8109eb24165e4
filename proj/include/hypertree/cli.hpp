#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypertree {

// Subcommands gen-host, gen-tree, embed, check, decompose, experiment.
// Returns 0 on success, 1 on a negative result (failed validation,
// proven-absent, timeout), 2 on a usage error.
int cli_dispatch(int argc, char** argv);

// "3", "0-9" and comma-separated mixtures of both, in the given order.
// Throws std::invalid_argument on malformed input.
std::vector<std::uint64_t> parse_seeds(const std::string& s);

}  // namespace hypertree
