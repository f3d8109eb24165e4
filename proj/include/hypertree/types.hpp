#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypertree {

using Vertex = std::uint32_t;
// Sorted, duplicate-free vertex ids.
using VertexSet = std::vector<Vertex>;
// Ordered tuple; order matters, ids distinct.
using Tuple = std::vector<Vertex>;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);
inline constexpr int kMaxUniformity = 12;

// Raised when a search exhausts its budget or finds nothing.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent streams from one seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline VertexSet make_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool contains(std::span<const Vertex> sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

inline bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet set_minus(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet without(std::span<const Vertex> sorted, Vertex v) {
  VertexSet out;
  out.reserve(sorted.size());
  for (Vertex u : sorted)
    if (u != v) out.push_back(u);
  return out;
}

inline VertexSet with(std::span<const Vertex> sorted, Vertex v) {
  VertexSet out(sorted.begin(), sorted.end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

std::string to_string(std::span<const Vertex> ids);

double binomial(std::size_t n, std::size_t r);

// Fixed-size bitset over host vertices.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n, bool value = false);
  static VertexMask of(std::size_t n, std::span<const Vertex> members);

  std::size_t size() const { return n_; }
  std::size_t words() const { return bits_.size(); }
  const std::uint64_t* data() const { return bits_.data(); }
  std::uint64_t* data() { return bits_.data(); }

  bool test(Vertex v) const { return (bits_[v >> 6] >> (v & 63)) & 1U; }
  void set(Vertex v) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(Vertex v) { bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void assign(Vertex v, bool value) { value ? set(v) : reset(v); }

  std::size_t count() const;
  VertexSet members() const;

  VertexMask& operator&=(const VertexMask& o);
  VertexMask& operator|=(const VertexMask& o);
  VertexMask& subtract(const VertexMask& o);
  bool operator==(const VertexMask& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline std::size_t and_count(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

// Calls f(v) for every set bit of the word array.
template <class F>
void for_each_bit(const std::uint64_t* a, std::size_t words, F&& f) {
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t w = a[i];
    while (w) {
      int b = std::countr_zero(w);
      f(static_cast<Vertex>(i * 64 + b));
      w &= w - 1;
    }
  }
}

// Advances a sorted r-combination of [0, n) to the next one in lex order.
bool next_combination(std::vector<Vertex>& comb, std::size_t n);

}  // namespace hypertree
