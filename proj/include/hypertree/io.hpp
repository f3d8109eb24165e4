#pragma once

#include <iosfwd>
#include <string>

#include "hypertree/embedding.hpp"

namespace hypertree {

// Raised on malformed input files; the message names the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Host: `k n m`, then m lines of k increasing ids.
Hypergraph read_host(std::istream& in);
void write_host(std::ostream& out, const Hypergraph& h);

// Tree: `k n`, the vertex order, then n-k+1 edges in valid order.
KTree read_tree(std::istream& in);
void write_tree(std::ostream& out, const KTree& t);

// Embedding: one `tree_vertex host_vertex` pair per line.
Embedding read_embedding(std::istream& in);
void write_embedding(std::ostream& out, const KTree& t, const Embedding& phi);

Hypergraph load_host(const std::string& path);
KTree load_tree(const std::string& path);
Embedding load_embedding(const std::string& path);
void save_host(const std::string& path, const Hypergraph& h);
void save_tree(const std::string& path, const KTree& t);
void save_embedding(const std::string& path, const KTree& t, const Embedding& phi);

}  // namespace hypertree
