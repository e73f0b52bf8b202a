#include "polynet/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polynet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Eigen::VectorXd ht_u_vector(const NetworkModel& model,
                            const TrafficSolution& hat) {
  const Eigen::Index n = model.n;
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double load_tail = 0.0;
    double routed = 0.0;
    for (Eigen::Index j = i; j < n; ++j) {
      load_tail += hat.rho_i[j];
      routed += hat.gamma[j] * model.routing(j, i);
    }
    u[i] = hat.lambda[i] * load_tail + routed;
  }
  return u;
}

double ht_delta(const TrafficSolution& hat, const Eigen::VectorXd& u) {
  return u.dot(hat.tsm1);
}

Eigen::VectorXd ht_delta_i(const NetworkModel& model,
                           const TrafficSolution& hat) {
  const Eigen::Index n = model.n;
  const Eigen::VectorXd b = model.service_means();
  Eigen::VectorXd delta_i(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = hat.lambda[i];
    double acc = 0.5 * hat.rho_i[i] * hat.gamma[i] *
                 (1.0 + lam * b[i] + model.routing(i, i));
    double accumulated = 0.0;  // increments since queue i's gate closed
    for (Eigen::Index d = 1; d < n; ++d) {
      const Eigen::Index k = (i + d - 1) % n;
      const Eigen::Index j = (i + d) % n;
      accumulated += hat.gamma[k] * (lam * b[k] + model.routing(k, i));
      acc += hat.rho_i[j] *
             (0.5 * hat.gamma[j] * (lam * b[j] + model.routing(j, i)) +
              accumulated);
    }
    delta_i[i] = hat.tsm1[i] * acc;
  }
  return delta_i;
}

Eigen::VectorXd ht_wait(const TrafficSolution& hat, double delta,
                        const Eigen::VectorXd& delta_i) {
  const Eigen::Index n = hat.gamma.size();
  const double bracket = hat.r + hat.agg2 / (2.0 * delta * hat.agg1);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (hat.gamma[i] > 0.0) {
      w[i] = bracket * delta_i[i] / (hat.tsm1[i] * hat.gamma[i]);
    } else {
      w[i] = kNaN;  // no traffic ever reaches this queue
    }
  }
  return w;
}

HtCoefficients ht_coefficients(const NetworkModel& model) {
  HtCoefficients c;
  c.hat = solve_traffic(model, scale_to_load(model, 1.0));
  c.u = ht_u_vector(model, c.hat);
  c.delta = ht_delta(c.hat, c.u);
  c.delta_i = ht_delta_i(model, c.hat);
  c.mu = 2.0 * c.delta * c.hat.agg1 / c.hat.agg2;
  c.alpha = c.hat.r * c.mu;
  c.w_ht = ht_wait(c.hat, c.delta, c.delta_i);
  return c;
}

GammaLaw cycle_time_law(const HtCoefficients& coeffs) {
  return {coeffs.alpha, coeffs.mu};
}

QueueLengthLawHT queue_length_law(const HtCoefficients& coeffs) {
  QueueLengthLawHT law;
  law.coeff =
      (coeffs.hat.agg2 / (2.0 * coeffs.hat.agg1 * coeffs.delta)) * coeffs.u;
  law.shape = coeffs.alpha;
  return law;
}

LtLimits lt_wait(const NetworkModel& model, const TrafficSolution& traffic) {
  const Eigen::Index n = model.n;
  if (!(traffic.r > 0.0))
    throw std::domain_error("lt_wait: light-traffic limit requires r > 0");

  const Eigen::VectorXd r_mean = model.switchover_means();
  const double residual = traffic.r2 / (2.0 * traffic.r);

  LtLimits lt;
  lt.w_lt.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(traffic.gamma[i] > 0.0)) {
      lt.w_lt[i] = kNaN;
      continue;
    }
    double w = traffic.lambda[i] / traffic.gamma[i] * residual;
    // Feeder queues j = i-1, i-2, ..., i-n (self-routing last, with a full
    // cycle of switch-overs in its window).
    double window = 0.0;
    for (Eigen::Index d = 1; d <= n; ++d) {
      const Eigen::Index j = (i - d + n) % n;
      window += r_mean[j];
      w += traffic.gamma[j] * model.routing(j, i) / traffic.gamma[i] * window;
    }
    lt.w_lt[i] = w;
  }
  return lt;
}

Eigen::VectorXd interpolate_wait(const Eigen::VectorXd& w_lt,
                                 const Eigen::VectorXd& w_ht, double rho) {
  if (!(rho >= 0.0) || rho >= 1.0)
    throw std::domain_error("interpolate_wait: rho must lie in [0, 1)");
  return (w_lt + (w_ht - w_lt) * rho) / (1.0 - rho);
}

}  // namespace polynet
