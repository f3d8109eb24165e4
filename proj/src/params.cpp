#include "hypertree/params.hpp"

#include <stdexcept>

#include "hypertree/connect.hpp"

namespace hypertree {

std::size_t PipelineParams::ell_for(int k) const { return ell ? ell : min_connect_length(k); }

int PipelineParams::d_for(int k) const { return d > 0 ? d : static_cast<int>(ell_for(k)); }

std::size_t PipelineParams::separation_for(int k, std::size_t delta) const {
  if (separation) return separation;
  const auto kk = static_cast<std::size_t>(k);
  return 2 * delta * kk * (ell_for(k) + 3 * kk);
}

void PipelineParams::validate(int k) const {
  auto fraction = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  };
  fraction(gamma, "gamma");
  fraction(mu, "mu");
  fraction(theta, "theta");
  fraction(beta, "beta");
  fraction(alpha, "alpha");
  fraction(nu, "nu");
  fraction(density, "density");
  fraction(eps, "eps");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (ell_for(k) < min_connect_length(k))
    throw std::invalid_argument("ell must be at least " + std::to_string(min_connect_length(k)));
  if (retry_cap < 1) throw std::invalid_argument("retry_cap must be positive");
  if (!(timeout_ms > 0)) throw std::invalid_argument("timeout must be positive");
}

}  // namespace hypertree
