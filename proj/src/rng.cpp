#include "polynet/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polynet {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamKind kind,
                          std::uint64_t index) {
  // Chain through the mixed outputs, not the raw counter state: XORing small
  // integers between increments collides for a large fraction of masters
  // (the increment is carry-only, so low-bit coincidences survive to the
  // final mix and distinct streams end up bit-identical).
  std::uint64_t state = master;
  state = splitmix64(state) ^ static_cast<std::uint64_t>(kind);
  state = splitmix64(state) ^ (index + 1);
  return splitmix64(state);
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_normal_;
  }
  // 1 - u01() lies in (0, 1], so the log stays finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u01()));
  const double angle = 2.0 * std::numbers::pi * u01();
  spare_normal_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::domain_error("gamma: shape and rate must be positive");
  if (shape < 1.0) {
    const double boost = std::pow(u01(), 1.0 / shape);
    return boost * gamma(shape + 1.0, rate);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = u01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v / rate;
  }
}

double sample(const DistributionSpec& dist, RngStream& rng) {
  switch (dist.kind()) {
    case DistKind::deterministic:
      return dist.p0();
    case DistKind::exponential:
      return rng.exponential(dist.p0());
    case DistKind::uniform:
      return rng.uniform(dist.p0(), dist.p1());
    case DistKind::gamma:
      return rng.gamma(dist.p0(), dist.p1());
  }
  throw std::logic_error("sample: unhandled distribution kind");
}

}  // namespace polynet
