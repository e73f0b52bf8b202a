#include "polynet/traffic.hpp"

#include <cmath>
#include <string>

namespace polynet {

namespace detail {

Eigen::VectorXd solve_checked(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& rhs, const char* what) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > kSingularPivot))
    throw SingularSystemError(std::string(what) + ": singular matrix (pivot " +
                              std::to_string(min_pivot) + ")");
  Eigen::VectorXd x = lu.solve(rhs);
  const double residual = (a * x - rhs).cwiseAbs().maxCoeff();
  if (!(residual < kResidualTol))
    throw SingularSystemError(std::string(what) + ": residual " +
                              std::to_string(residual) + " exceeds tolerance");
  return x;
}

}  // namespace detail

std::pair<Eigen::VectorXd, Eigen::VectorXd> total_service_moments(
    const NetworkModel& model) {
  const Eigen::Index n = model.n;
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - model.routing;
  const Eigen::VectorXd b = model.service_means();
  const Eigen::VectorXd b2 = model.service_second_moments();

  const Eigen::VectorXd tsm1 = detail::solve_checked(a, b, "total-service first-moment system");
  // Second-moment system consumes the first: rhs_i = b2_i + 2 b_i (P tsm1)_i.
  const Eigen::VectorXd rhs2 = b2 + 2.0 * b.cwiseProduct(model.routing * tsm1);
  const Eigen::VectorXd tsm2 = detail::solve_checked(a, rhs2, "total-service second-moment system");
  return {tsm1, tsm2};
}

std::pair<double, double> switchover_aggregate(const NetworkModel& model) {
  double r = 0.0;
  double var = 0.0;
  for (const DistributionSpec& spec : model.switchover) {
    r += spec.mean();
    var += spec.variance();
  }
  return {r, var + r * r};
}

TrafficSolution solve_traffic(const NetworkModel& model,
                              const Eigen::VectorXd& lambda_abs) {
  const Eigen::Index n = model.n;
  TrafficSolution s;
  s.lambda = lambda_abs;

  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - model.routing.transpose();
  s.gamma = detail::solve_checked(a, lambda_abs, "traffic equations");

  const Eigen::VectorXd b = model.service_means();
  s.rho_i = s.gamma.cwiseProduct(b);
  s.rho = s.rho_i.sum();
  s.stable = s.rho < 1.0;

  std::tie(s.tsm1, s.tsm2) = total_service_moments(model);

  const double lambda_total = lambda_abs.sum();
  if (lambda_total > 0.0) {
    s.agg1 = lambda_abs.dot(s.tsm1) / lambda_total;
    s.agg2 = lambda_abs.dot(s.tsm2) / lambda_total;
  }

  std::tie(s.r, s.r2) = switchover_aggregate(model);
  return s;
}

Eigen::VectorXd scale_to_load(const NetworkModel& model, double rho_target) {
  if (!(rho_target > 0.0))
    throw std::invalid_argument("scale_to_load: rho_target must be > 0");
  const TrafficSolution unit = solve_traffic(model, model.arrival_weights);
  if (!(unit.rho > 0.0))
    throw std::invalid_argument("scale_to_load: load at unit weights is zero");
  return (rho_target / unit.rho) * model.arrival_weights;
}

}  // namespace polynet
