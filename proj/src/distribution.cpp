#include "polynet/distribution.hpp"

#include <cmath>

namespace polynet {

DistributionSpec DistributionSpec::deterministic(double value) {
  return {DistKind::deterministic, value, 0.0};
}

DistributionSpec DistributionSpec::exponential(double mean) {
  return {DistKind::exponential, mean, 0.0};
}

DistributionSpec DistributionSpec::uniform(double lower, double upper) {
  return {DistKind::uniform, lower, upper};
}

DistributionSpec DistributionSpec::gamma(double shape, double rate) {
  return {DistKind::gamma, shape, rate};
}

double DistributionSpec::mean() const {
  switch (kind_) {
    case DistKind::deterministic:
      return p0_;
    case DistKind::exponential:
      return p0_;
    case DistKind::uniform:
      return (p0_ + p1_) / 2.0;
    case DistKind::gamma:
      return p0_ / p1_;
  }
  return 0.0;
}

double DistributionSpec::second_moment() const {
  switch (kind_) {
    case DistKind::deterministic:
      return p0_ * p0_;
    case DistKind::exponential:
      return 2.0 * p0_ * p0_;
    case DistKind::uniform:
      // E[X^2] for U(a,b) is (a^2 + ab + b^2)/3.
      return (p0_ * p0_ + p0_ * p1_ + p1_ * p1_) / 3.0;
    case DistKind::gamma:
      // shape k, rate beta: E[X^2] = k(k+1)/beta^2.
      return p0_ * (p0_ + 1.0) / (p1_ * p1_);
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  const double m = mean();
  return second_moment() - m * m;
}

std::string DistributionSpec::check(bool require_positive_mean) const {
  switch (kind_) {
    case DistKind::deterministic:
      if (!(p0_ >= 0.0) || !std::isfinite(p0_)) return "deterministic value must be finite and >= 0";
      break;
    case DistKind::exponential:
      if (!(p0_ > 0.0) || !std::isfinite(p0_)) return "exponential mean must be finite and > 0";
      break;
    case DistKind::uniform:
      if (!std::isfinite(p0_) || !std::isfinite(p1_)) return "uniform bounds must be finite";
      if (!(0.0 <= p0_) || !(p0_ <= p1_)) return "uniform requires 0 <= lower <= upper";
      break;
    case DistKind::gamma:
      if (!(p0_ > 0.0) || !(p1_ > 0.0) || !std::isfinite(p0_) || !std::isfinite(p1_))
        return "gamma requires shape > 0 and rate > 0";
      break;
  }
  if (require_positive_mean && !(mean() > 0.0)) return "mean must be > 0";
  return {};
}

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::deterministic:
      return "deterministic";
    case DistKind::exponential:
      return "exponential";
    case DistKind::uniform:
      return "uniform";
    case DistKind::gamma:
      return "gamma";
  }
  return "?";
}

}  // namespace polynet
