#pragma once

#include <string>

namespace polynet {

enum class DistKind { deterministic, exponential, uniform, gamma };

/// A service or switch-over time distribution, described by one of four
/// parametric families. The analytic side of the toolkit consumes only
/// mean() and second_moment(), both in closed form; sampling lives in
/// the simulator (see rng.hpp / simulate.hpp).
class DistributionSpec {
 public:
  static DistributionSpec deterministic(double value);
  static DistributionSpec exponential(double mean);
  static DistributionSpec uniform(double lower, double upper);
  static DistributionSpec gamma(double shape, double rate);

  DistKind kind() const { return kind_; }

  /// First raw parameter: value (deterministic), mean (exponential),
  /// lower (uniform), shape (gamma).
  double p0() const { return p0_; }
  /// Second raw parameter: upper (uniform), rate (gamma); unused otherwise.
  double p1() const { return p1_; }

  double mean() const;
  double second_moment() const;
  double variance() const;

  /// Empty string when the parameters are admissible, otherwise a reason.
  /// Service times must have mean > 0; switch-over times allow mean >= 0
  /// (a zero mean is only representable as deterministic 0).
  std::string check(bool require_positive_mean) const;

  bool operator==(const DistributionSpec&) const = default;

 private:
  DistributionSpec(DistKind kind, double p0, double p1)
      : kind_(kind), p0_(p0), p1_(p1) {}

  DistKind kind_;
  double p0_;
  double p1_;
};

std::string to_string(DistKind kind);

}  // namespace polynet
