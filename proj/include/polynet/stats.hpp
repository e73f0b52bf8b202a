#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polynet {

// Point estimate with a 95% confidence half-width from `batches` batch means.
struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t batches = 0;

  double lo() const { return mean - half_width; }
  double hi() const { return mean + half_width; }
  bool covers(double x) const { return lo() <= x && x <= hi(); }
};

// Two-sided 95% Student-t critical value.  Exact table for df 1..30, then
// the largest tabulated df not exceeding the argument (conservative).
double t_quantile_975(std::size_t df);

// Classic batch means over a fixed sample: `batches` equal contiguous
// batches (any tail remainder is dropped), CI from the Student-t on the
// batch means.  Requires batches >= 2 and samples.size() >= 2*batches.
MeanCi batch_means(std::span<const double> samples, std::size_t batches);

// Batch means for a stream of unknown length: keeps at most 2*target bins,
// merging adjacent pairs and doubling the bin size when full, so the
// complete-bin count stays within [target, 2*target).
class StreamingBatcher {
 public:
  explicit StreamingBatcher(std::size_t target_bins = 32);

  void add(double x);
  std::size_t count() const { return count_; }
  std::size_t bin_size() const { return bin_size_; }
  std::size_t complete_bins() const { return sums_.size(); }

  // Mean over every sample seen, including the partial bin.
  double mean() const;

  // CI over the complete bins; half_width is +inf with fewer than two bins.
  MeanCi interval() const;

  void reset();

 private:
  std::size_t target_;
  std::size_t bin_size_ = 1;
  std::vector<double> sums_;
  double current_sum_ = 0.0;
  std::size_t current_n_ = 0;
  double total_sum_ = 0.0;
  std::size_t count_ = 0;
};

// Running mean and centered second moment (Welford).
class MomentAccumulator {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const;
  double variance() const;       // sample variance, NaN below two samples
  double second_moment() const;  // plug-in estimate of E[X^2]
  void reset();

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace polynet
