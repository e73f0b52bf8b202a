#pragma once

#include <Eigen/Dense>

#include "polynet/traffic.hpp"

namespace polynet {

/// Gamma distribution in the (shape, rate) convention: mean = shape/rate.
struct GammaLaw {
  double shape = 0.0;
  double rate = 0.0;
  double mean() const { return shape / rate; }
  double variance() const { return shape / (rate * rate); }
};

/// Heavy-traffic objects of a model, all evaluated at total load one.
/// delta is the mean scaled total weighted workload over a fluid cycle and
/// splits per queue into delta_i; (shape alpha, rate mu) is the gamma law of
/// the scaled cycle time; w_ht_i is the limit of (1 - rho) E[W_i].
/// The rho = 1 traffic solution the fields were derived from is kept so
/// dependent laws can be formed without re-solving.
struct HtCoefficients {
  TrafficSolution hat;      // traffic solved at rho = 1
  Eigen::VectorXd u;        // per-queue heavy-traffic weight
  double delta = 0.0;       // u . tsm1
  Eigen::VectorXd delta_i;  // fluid mean weighted workload per queue
  double alpha = 0.0;       // gamma shape, 2 r delta agg1 / agg2
  double mu = 0.0;          // gamma rate, 2 delta agg1 / agg2
  Eigen::VectorXd w_ht;     // limit of (1 - rho) E[W_i]
};

/// Light-traffic limits of the mean waiting times.
struct LtLimits {
  Eigen::VectorXd w_lt;
};

/// Scaled queue-length law at visit beginnings of queue 1:
/// (1 - rho) X_i converges to coeff_i times a Gamma(shape, 1) variable.
struct QueueLengthLawHT {
  Eigen::VectorXd coeff;
  double shape = 0.0;
};

/// Heavy-traffic weight vector: u_i = lambda_i sum_{j>=i} rho_j
/// + sum_{j>=i} gamma_j p(j,i), with both sums running from i to the last
/// queue (no wraparound). Expects traffic solved at rho = 1.
Eigen::VectorXd ht_u_vector(const NetworkModel& model,
                            const TrafficSolution& hat);

/// delta = u . tsm1.
double ht_delta(const TrafficSolution& hat, const Eigen::VectorXd& u);

/// Fluid-limit mean weighted workload per queue. Work at queue i builds up
/// linearly while the server attends queue j: external arrivals contribute
/// lambda_i tsm1_i per unit time and service completions at j feed i at
/// rate p(j,i)/b_j, each carrying tsm1_i. Averaging the resulting piecewise
/// linear trajectory over a cycle (visit j occupies a fraction rho_j) gives
/// a half-weighted increment for the visit in progress plus the increments
/// already accumulated since queue i's own gate closed:
///
///   delta_i = 1/2 rho_i gamma_i tsm1_i (1 + lambda_i b_i + p(i,i))
///           + sum_{j != i} rho_j ( 1/2 gamma_j tsm1_i (lambda_i b_j + p(j,i))
///                                 + sum_{k in [i..j)} gamma_k tsm1_i (lambda_i b_k + p(k,i)) )
///
/// with j and k cycling modulo n. The sum of delta_i over all queues equals
/// delta. Expects traffic solved at rho = 1.
Eigen::VectorXd ht_delta_i(const NetworkModel& model,
                           const TrafficSolution& hat);

/// Heavy-traffic wait limits
///   w_ht_i = (r + agg2 / (2 delta agg1)) delta_i / (tsm1_i gamma_i).
/// Queues that no traffic ever reaches (gamma_i = 0) are reported as NaN
/// rather than dividing by zero.
Eigen::VectorXd ht_wait(const TrafficSolution& hat, double delta,
                        const Eigen::VectorXd& delta_i);

/// Bundles the full heavy-traffic computation: rescales the model to total
/// load one via scale_to_load and assembles every HT object from there.
/// Callers never pass hatted quantities by hand.
HtCoefficients ht_coefficients(const NetworkModel& model);

/// Gamma law of the scaled cycle time: (1 - rho) C_i converges to
/// Gamma(alpha, mu) for every queue.
GammaLaw cycle_time_law(const HtCoefficients& coeffs);

/// Scaled queue-length law at visit beginnings of queue 1:
/// coeff_i = (agg2 / (2 agg1)) u_i / delta, shape = alpha.
QueueLengthLawHT queue_length_law(const HtCoefficients& coeffs);

/// Light-traffic wait limits, by conditioning on the customer type: an
/// external customer waits a residual total switch-over time r2/(2r); a
/// customer routed from queue j waits the switch-over means from j up to
/// i - 1. The self-routing term covers a full cycle of switch-overs.
/// Requires r > 0; queues with gamma_i = 0 are reported as NaN.
LtLimits lt_wait(const NetworkModel& model, const TrafficSolution& traffic);

/// Interpolation between the light- and heavy-traffic limits:
///   W_i = (w_lt_i + (w_ht_i - w_lt_i) rho) / (1 - rho),  0 <= rho < 1.
Eigen::VectorXd interpolate_wait(const Eigen::VectorXd& w_lt,
                                 const Eigen::VectorXd& w_ht, double rho);

}  // namespace polynet
