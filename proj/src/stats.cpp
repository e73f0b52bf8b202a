#include "polynet/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polynet {

double t_quantile_975(std::size_t df) {
  static constexpr double kTable[31] = {
      0.0,    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
      2.306,  2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
      2.120,  2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069,
      2.064,  2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) throw std::invalid_argument("t_quantile_975: df must be >= 1");
  if (df <= 30) return kTable[df];
  if (df < 40) return 2.042;
  if (df < 60) return 2.021;
  if (df < 120) return 2.000;
  if (df < 1000) return 1.980;
  return 1.960;
}

namespace {

MeanCi ci_from_batch_means(std::span<const double> means) {
  const std::size_t k = means.size();
  double m = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  const double var = ss / static_cast<double>(k - 1);
  const double hw =
      t_quantile_975(k - 1) * std::sqrt(var / static_cast<double>(k));
  return {m, hw, k};
}

}  // namespace

MeanCi batch_means(std::span<const double> samples, std::size_t batches) {
  if (batches < 2)
    throw std::invalid_argument("batch_means: need at least 2 batches");
  if (samples.size() < 2 * batches)
    throw std::invalid_argument(
        "batch_means: need at least 2 samples per batch");
  const std::size_t bs = samples.size() / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) s += samples[i];
    means[b] = s / static_cast<double>(bs);
  }
  return ci_from_batch_means(means);
}

StreamingBatcher::StreamingBatcher(std::size_t target_bins)
    : target_(target_bins) {
  if (target_ < 2)
    throw std::invalid_argument("StreamingBatcher: need at least 2 bins");
  sums_.reserve(2 * target_);
}

void StreamingBatcher::add(double x) {
  total_sum_ += x;
  ++count_;
  current_sum_ += x;
  if (++current_n_ == bin_size_) {
    sums_.push_back(current_sum_);
    current_sum_ = 0.0;
    current_n_ = 0;
    if (sums_.size() == 2 * target_) {
      for (std::size_t i = 0; i < target_; ++i)
        sums_[i] = sums_[2 * i] + sums_[2 * i + 1];
      sums_.resize(target_);
      bin_size_ *= 2;
    }
  }
}

double StreamingBatcher::mean() const {
  return count_ == 0 ? std::numeric_limits<double>::quiet_NaN()
                     : total_sum_ / static_cast<double>(count_);
}

MeanCi StreamingBatcher::interval() const {
  const std::size_t k = sums_.size();
  if (k < 2)
    return {mean(), std::numeric_limits<double>::infinity(), k};
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i)
    means[i] = sums_[i] / static_cast<double>(bin_size_);
  return ci_from_batch_means(means);
}

void StreamingBatcher::reset() {
  bin_size_ = 1;
  sums_.clear();
  current_sum_ = 0.0;
  current_n_ = 0;
  total_sum_ = 0.0;
  count_ = 0;
}

void MomentAccumulator::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double MomentAccumulator::mean() const {
  return n_ == 0 ? std::numeric_limits<double>::quiet_NaN() : mean_;
}

double MomentAccumulator::variance() const {
  return n_ < 2 ? std::numeric_limits<double>::quiet_NaN()
                : m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::second_moment() const {
  if (n_ == 0) return std::numeric_limits<double>::quiet_NaN();
  return m2_ / static_cast<double>(n_) + mean_ * mean_;
}

void MomentAccumulator::reset() {
  n_ = 0;
  mean_ = 0.0;
  m2_ = 0.0;
}

}  // namespace polynet
