#include "hypertree/types.hpp"

#include <cmath>
#include <sstream>

namespace hypertree {

std::string to_string(std::span<const Vertex> ids) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << ')';
  return os.str();
}

double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (std::size_t i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  return std::round(out);
}

VertexMask::VertexMask(std::size_t n, bool value)
    : n_(n), bits_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && n % 64) bits_.back() = (std::uint64_t{1} << (n % 64)) - 1;
}

VertexMask VertexMask::of(std::size_t n, std::span<const Vertex> members) {
  VertexMask m(n);
  for (Vertex v : members) {
    if (v >= n) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
    m.set(v);
  }
  return m;
}

std::size_t VertexMask::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

VertexSet VertexMask::members() const {
  VertexSet out;
  for_each_bit(bits_.data(), bits_.size(), [&](Vertex v) { out.push_back(v); });
  return out;
}

VertexMask& VertexMask::operator&=(const VertexMask& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

VertexMask& VertexMask::operator|=(const VertexMask& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

VertexMask& VertexMask::subtract(const VertexMask& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
  return *this;
}

bool next_combination(std::vector<Vertex>& comb, std::size_t n) {
  const std::size_t r = comb.size();
  if (r == 0) return false;
  std::size_t i = r;
  while (i > 0) {
    --i;
    if (comb[i] < n - r + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace hypertree
