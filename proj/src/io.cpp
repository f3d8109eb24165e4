#include "hypertree/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace hypertree {

namespace {

// Non-empty lines with comments stripped, split into unsigned integers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::uint64_t>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      fields.clear();
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
        if (ec != std::errc() || ptr != line.data() + j)
          fail("expected a non-negative integer, got '" + line.substr(i, j - i) + "'");
        fields.push_back(value);
        i = j;
      }
      if (!fields.empty()) return true;
    }
    return false;
  }

  std::vector<std::uint64_t> expect(std::size_t count, const std::string& what) {
    std::vector<std::uint64_t> fields;
    if (!next(fields)) fail("unexpected end of file, expected " + what);
    if (fields.size() != count)
      fail("expected " + std::to_string(count) + " fields for " + what + ", got " + std::to_string(fields.size()));
    return fields;
  }

  void expect_end() {
    std::vector<std::uint64_t> fields;
    if (next(fields)) fail("trailing data");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(lineno_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::vector<Vertex> to_ids(const std::vector<std::uint64_t>& f, const LineReader& r) {
  std::vector<Vertex> out;
  for (auto x : f) {
    if (x >= kNoVertex) r.fail("id " + std::to_string(x) + " is too large");
    out.push_back(static_cast<Vertex>(x));
  }
  return out;
}

template <class F>
auto open_and(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return f(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <class F>
void write_to(const std::string& path, F&& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  f(out);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

Hypergraph read_host(std::istream& in) {
  LineReader r(in);
  auto head = r.expect(3, "header 'k n m'");
  const auto k = head[0];
  if (k < 2 || k > static_cast<std::uint64_t>(kMaxUniformity)) r.fail("unsupported uniformity " + std::to_string(k));
  std::vector<std::vector<Vertex>> edges;
  for (std::uint64_t i = 0; i < head[2]; ++i) {
    auto ids = to_ids(r.expect(k, "edge " + std::to_string(i + 1)), r);
    if (!std::is_sorted(ids.begin(), ids.end()) || std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      r.fail("edge ids must be strictly increasing");
    edges.push_back(std::move(ids));
  }
  r.expect_end();
  try {
    return Hypergraph::build(static_cast<int>(k), head[1], std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_host(std::ostream& out, const Hypergraph& h) {
  out << h.k() << ' ' << h.n() << ' ' << h.num_edges() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

KTree read_tree(std::istream& in) {
  LineReader r(in);
  auto head = r.expect(2, "header 'k n'");
  const auto k = head[0], n = head[1];
  if (k < 1 || k > static_cast<std::uint64_t>(kMaxUniformity)) r.fail("unsupported uniformity " + std::to_string(k));
  if (n < k) r.fail("a k-tree needs at least k vertices");
  auto order = to_ids(r.expect(n, "vertex order"), r);
  std::vector<std::vector<Vertex>> edges;
  for (std::uint64_t i = 0; i + k <= n; ++i) edges.push_back(to_ids(r.expect(k, "edge " + std::to_string(i + 1)), r));
  r.expect_end();
  try {
    return KTree::from_ordering(static_cast<int>(k), std::move(order), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_tree(std::ostream& out, const KTree& t) {
  out << t.k() << ' ' << t.n() << '\n';
  const auto& order = t.vertex_order();
  for (std::size_t i = 0; i < order.size(); ++i) out << (i ? " " : "") << order[i];
  out << '\n';
  for (const auto& e : t.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

Embedding read_embedding(std::istream& in) {
  LineReader r(in);
  Embedding phi;
  std::vector<std::uint64_t> f;
  while (r.next(f)) {
    if (f.size() != 2) r.fail("expected 'tree_vertex host_vertex'");
    auto ids = to_ids(f, r);
    if (phi.has(ids[0])) r.fail("tree vertex " + std::to_string(ids[0]) + " mapped twice");
    phi.set(ids[0], ids[1]);
  }
  return phi;
}

void write_embedding(std::ostream& out, const KTree& t, const Embedding& phi) {
  for (Vertex v : t.vertex_order())
    if (phi.has(v)) out << v << ' ' << phi[v] << '\n';
}

Hypergraph load_host(const std::string& path) {
  return open_and(path, [](std::istream& in) { return read_host(in); });
}
KTree load_tree(const std::string& path) {
  return open_and(path, [](std::istream& in) { return read_tree(in); });
}
Embedding load_embedding(const std::string& path) {
  return open_and(path, [](std::istream& in) { return read_embedding(in); });
}
void save_host(const std::string& path, const Hypergraph& h) {
  write_to(path, [&](std::ostream& out) { write_host(out, h); });
}
void save_tree(const std::string& path, const KTree& t) {
  write_to(path, [&](std::ostream& out) { write_tree(out, t); });
}
void save_embedding(const std::string& path, const KTree& t, const Embedding& phi) {
  write_to(path, [&](std::ostream& out) { write_embedding(out, t, phi); });
}

}  // namespace hypertree
