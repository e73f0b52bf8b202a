#include "polynet/model.hpp"

#include <cmath>
#include <sstream>

#include "polynet/traffic.hpp"

namespace polynet {

Eigen::VectorXd NetworkModel::service_means() const {
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) b[i] = service[i].mean();
  return b;
}

Eigen::VectorXd NetworkModel::service_second_moments() const {
  Eigen::VectorXd b2(n);
  for (Eigen::Index i = 0; i < n; ++i) b2[i] = service[i].second_moment();
  return b2;
}

Eigen::VectorXd NetworkModel::switchover_means() const {
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r[i] = switchover[i].mean();
  return r;
}

namespace {

std::string at_queue(Eigen::Index i) {
  std::ostringstream os;
  os << "queue " << i + 1;
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const NetworkModel& model) {
  std::vector<Violation> out;
  const Eigen::Index n = model.n;

  if (n < 1) {
    out.push_back({"queue-count", "n must be >= 1"});
    return out;
  }
  if (model.arrival_weights.size() != n || model.routing.rows() != n ||
      model.routing.cols() != n ||
      static_cast<Eigen::Index>(model.service.size()) != n ||
      static_cast<Eigen::Index>(model.switchover.size()) != n) {
    out.push_back({"field-shape", "arrival_weights, service, switchover and routing must all have size n"});
    return out;
  }

  bool any_positive_weight = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = model.arrival_weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      out.push_back({"arrival-weights", at_queue(i) + ": weight must be finite and >= 0"});
    } else if (w > 0.0) {
      any_positive_weight = true;
    }
  }
  if (!any_positive_weight)
    out.push_back({"arrival-weights", "at least one arrival weight must be positive"});

  bool service_ok = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::string why = model.service[i].check(/*require_positive_mean=*/true); !why.empty()) {
      out.push_back({"service-distribution", at_queue(i) + ": " + why});
      service_ok = false;
    }
    if (std::string why = model.switchover[i].check(/*require_positive_mean=*/false); !why.empty())
      out.push_back({"switchover-distribution", at_queue(i) + ": " + why});
  }

  bool routing_ok = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = model.routing(i, j);
      if (!(p >= 0.0) || !(p <= 1.0) || !std::isfinite(p)) {
        out.push_back({"routing-entry-range", at_queue(i) + ": p(" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") must lie in [0,1]"});
        routing_ok = false;
      }
      row_sum += p;
    }
    if (row_sum > 1.0 + kRowSumSlack) {
      out.push_back({"row-stochasticity", at_queue(i) + ": routing row sums to " + std::to_string(row_sum)});
      routing_ok = false;
    }
  }

  // Leakiness is certified constructively: the total-service equations must
  // admit a finite positive solution, which holds exactly when the spectral
  // radius of the routing matrix is below one.
  if (routing_ok) {
    Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
    if (service_ok) b = model.service_means();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - model.routing;
    try {
      const Eigen::VectorXd tsm1 = detail::solve_checked(a, b, "total-service-time system");
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!(tsm1[i] > 0.0) || !std::isfinite(tsm1[i])) {
          out.push_back({"non-leaky routing", "total-service-time solution is not finite and positive"});
          break;
        }
      }
    } catch (const SingularSystemError&) {
      out.push_back({"non-leaky routing", "some customer never exits: I - P is singular"});
    }
  }

  return out;
}

void require_valid(const NetworkModel& model) {
  std::vector<Violation> violations = validate(model);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid model:";
  for (const Violation& v : violations) os << "\n  [" << v.code << "] " << v.message;
  throw ValidationError(os.str(), std::move(violations));
}

}  // namespace polynet
