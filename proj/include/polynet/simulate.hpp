#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "polynet/model.hpp"
#include "polynet/stats.hpp"

namespace polynet {

struct SimConfig {
  std::uint64_t seed = 1;
  // Post-warmup service completions to collect, summed over queues.
  std::uint64_t target_served = 1'000'000;
  // Warmup service completions discarded first; defaults to
  // max(1e5, 1% of target_served).
  std::optional<std::uint64_t> warmup;
  std::size_t batches = 32;
  // Cycle times and polling-instant snapshots are taken at this queue.
  Eigen::Index reference_queue = 0;
  bool record_polling_vectors = false;
  // Caps on raw samples retained for export; 0 keeps none.
  std::size_t keep_cycle_samples = 0;
  std::size_t keep_wait_samples = 0;

  std::uint64_t effective_warmup() const;
};

struct SimResult {
  // Per-hop waits: arrival at the queue (external or routed) to service
  // start.  Entries for queues that never serve have zero batches.
  std::vector<MeanCi> wait;
  std::vector<std::uint64_t> served;
  std::uint64_t served_total = 0;

  // Reference-queue cycle times (successive polling instants).
  MeanCi cycle;
  double cycle_variance = 0.0;
  double cycle_second_moment = 0.0;
  std::uint64_t cycle_count = 0;

  // Queue lengths observed at reference-queue polling instants.
  std::vector<MomentAccumulator> polling;
  std::uint64_t polling_count = 0;

  double elapsed = 0.0;        // post-warmup simulated time
  double busy_fraction = 0.0;  // share of elapsed spent serving

  // Diagnostic counters; both stay zero when the gate logic is sound.
  std::uint64_t gate_mismatches = 0;       // served-in-visit != gate snapshot
  std::uint64_t late_service_violations = 0;  // served ahead of its gate

  std::vector<double> cycle_samples;
  std::vector<std::vector<double>> wait_samples;
};

// Runs one gated cyclic-service sample path with external Poisson arrivals
// of rate lambda[i] at queue i.  Strictly sequential; safe to call from
// multiple threads with distinct configs.
SimResult run(const NetworkModel& model, const Eigen::VectorXd& lambda,
              const SimConfig& config);

}  // namespace polynet
