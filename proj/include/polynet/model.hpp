#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "polynet/distribution.hpp"

namespace polynet {

/// Row-stochasticity slack tolerated when checking routing rows.
inline constexpr double kRowSumSlack = 1e-12;
/// Pivots below this magnitude mark a linear system as singular.
inline constexpr double kSingularPivot = 1e-12;
/// Residual bound for the traffic and total-service linear systems.
inline constexpr double kResidualTol = 1e-10;

/// Static description of a cyclic-polling queueing network with customer
/// routing: n queues visited in index order by a single gated server,
/// Poisson external arrivals in fixed ratios, general service and
/// switch-over times, and a substochastic routing matrix. routing(i, j) is
/// the probability that a customer completing service at queue i moves to
/// queue j; the leftover row mass is the exit probability.
struct NetworkModel {
  Eigen::Index n = 0;
  Eigen::VectorXd arrival_weights;           // ratios of the external rates
  std::vector<DistributionSpec> service;     // B_i
  std::vector<DistributionSpec> switchover;  // R_i, incurred when leaving i
  Eigen::MatrixXd routing;                   // n x n, entries p(i,j)

  Eigen::VectorXd service_means() const;
  Eigen::VectorXd service_second_moments() const;
  Eigen::VectorXd switchover_means() const;

  double exit_probability(Eigen::Index i) const {
    return 1.0 - routing.row(i).sum();
  }
};

struct Violation {
  std::string code;     // machine-readable, e.g. "row-stochasticity"
  std::string message;  // human-readable detail
};

/// Checks every structural invariant of the model and returns the full list
/// of violations (empty for a valid model). Routing leakiness is certified
/// constructively: the total-service-time equations must be solvable with a
/// finite positive solution.
std::vector<Violation> validate(const NetworkModel& model);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string what, std::vector<Violation> violations)
      : std::runtime_error(std::move(what)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws ValidationError listing every violation; no-op for a valid model.
void require_valid(const NetworkModel& model);

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polynet
