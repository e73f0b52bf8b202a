#pragma once

#include <cstdint>
#include <random>

#include "polynet/distribution.hpp"

namespace polynet {

// SplitMix64 step: advances `state` and returns a well-mixed 64-bit word.
// Used to whiten seed material so nearby master seeds give unrelated streams.
std::uint64_t splitmix64(std::uint64_t& state);

enum class StreamKind : std::uint64_t {
  arrival = 1,
  service = 2,
  routing = 3,
  switchover = 4,
};

// Maps (master seed, stream kind, queue index) to an independent stream seed.
std::uint64_t derive_seed(std::uint64_t master, StreamKind kind,
                          std::uint64_t index);

// A seeded random stream with hand-rolled variate transforms.  std::*
// distributions are implementation-defined, so sampling goes through fixed
// algorithms (inversion, Box-Muller, Marsaglia-Tsang) to keep simulation
// output bit-identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}
  RngStream(std::uint64_t master, StreamKind kind, std::uint64_t index)
      : RngStream(derive_seed(master, kind, index)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Mean-parameterized; u01() < 1 keeps the log argument positive.
  double exponential(double mean) { return -mean * std::log(1.0 - u01()); }

  // Standard normal via Box-Muller; the paired variate is cached.
  double normal();

  // Shape/rate parameterization, Marsaglia-Tsang squeeze with the
  // u^(1/shape) boost when shape < 1.
  double gamma(double shape, double rate);

 private:
  std::mt19937_64 gen_;
  double spare_normal_ = 0.0;
  bool have_spare_ = false;
};

// Draws one value from `dist` using the transforms above.
double sample(const DistributionSpec& dist, RngStream& rng);

}  // namespace polynet
