#pragma once

#include <Eigen/Dense>
#include <utility>

#include "polynet/model.hpp"

namespace polynet {

/// Solved per-queue traffic quantities for one absolute arrival-rate vector.
/// gamma is the total (external plus routed) arrival rate, tsm1/tsm2 the
/// first two moments of the total service time a customer starting at each
/// queue accumulates before leaving the network. agg1/agg2 are the
/// population aggregates of tsm1/tsm2 weighted by the external arrival
/// rates; they depend on the weights only through their ratios.
struct TrafficSolution {
  Eigen::VectorXd lambda;  // external arrival rate per queue
  Eigen::VectorXd gamma;   // total arrival rate per queue
  Eigen::VectorXd rho_i;   // per-queue load gamma_i * b_i
  double rho = 0.0;        // total load
  Eigen::VectorXd tsm1;    // mean total service time
  Eigen::VectorXd tsm2;    // second moment of total service time
  double agg1 = 0.0;       // sum_i lambda_i tsm1_i / sum_j lambda_j
  double agg2 = 0.0;       // sum_i lambda_i tsm2_i / sum_j lambda_j
  double r = 0.0;          // mean total switch-over time per cycle
  double r2 = 0.0;         // second moment of total switch-over time
  bool stable = false;     // rho < 1
};

/// Solves the traffic equations gamma_i = lambda_i + sum_j gamma_j p(j,i)
/// and fills in loads, total-service moments and switch-over aggregates.
/// Instability (rho >= 1) is reported through the stable flag, not an
/// error: heavy-traffic limits are computed from the rho = 1 solution.
TrafficSolution solve_traffic(const NetworkModel& model,
                              const Eigen::VectorXd& lambda_abs);

/// First two moments of the total service time, solved from
///   tsm1_i = b_i + sum_j p(i,j) tsm1_j
///   tsm2_i = b_i2 + 2 b_i sum_j p(i,j) tsm1_j + sum_j p(i,j) tsm2_j.
/// The first-moment system feeds the second.
std::pair<Eigen::VectorXd, Eigen::VectorXd> total_service_moments(
    const NetworkModel& model);

/// Absolute arrival rates proportional to the model's weights that produce
/// total load rho_target. The traffic equations are linear in lambda, so
/// the scale factor is rho_target over the load at unit weights.
Eigen::VectorXd scale_to_load(const NetworkModel& model, double rho_target);

/// (r, r2): mean and second moment of the total switch-over time in a
/// cycle, using independence of the per-queue switch-over times.
std::pair<double, double> switchover_aggregate(const NetworkModel& model);

namespace detail {
/// Dense LU solve with partial pivoting. Throws SingularSystemError when a
/// pivot falls below kSingularPivot or the residual exceeds kResidualTol.
Eigen::VectorXd solve_checked(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& rhs, const char* what);
}  // namespace detail

}  // namespace polynet
