// Acceptance gate: nine checks covering the analytic columns, the published
// reference comparison, the workload split, cycle and queue-length laws
// against simulation, structural invariances and the interpolation
// endpoints.  Prints one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polynet/asymptotics.hpp"
#include "polynet/harness.hpp"
#include "polynet/simulate.hpp"
#include "polynet/traffic.hpp"
#include "test_support.hpp"

using namespace polynet;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
  if (ok) {
    std::printf("PASS criterion %d: %s\n", criterion, what.c_str());
  } else {
    ++failures;
    std::printf("FAIL criterion %d: %s%s%s\n", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
  }
  std::fflush(stdout);
}

// 1: interpolation columns match the published table to +-0.01.
void criterion1() {
  const Table1Reference& ref = table1_reference();
  const AnalyzeReport rep =
      analyze(katayama_model(), {ref.rho.begin(), ref.rho.end()});
  double worst = 0.0;
  for (const AnalyzeRow& row : rep.rows) {
    std::size_t g = 0;
    while (ref.rho[g] != row.rho) ++g;
    worst = std::max(
        worst, std::abs(row.approx -
                        ref.approx[static_cast<std::size_t>(row.queue - 1)][g]));
  }
  std::ostringstream d;
  d << "largest deviation " << worst;
  report(1, rep.rows.size() == 21 && worst <= 0.01,
         "analytic columns reproduce the reference table", d.str());
}

// 2: full simulated reproduction of the reference mean waits.
void criterion2() {
  Table1Options opts;  // 1e7 served per grid point, default seed
  const Table1Report rep = reproduce_table1(opts);
  std::string detail;
  for (const std::string& f : rep.failures) {
    if (!detail.empty()) detail += "; ";
    detail += f;
  }
  report(2, rep.pass, "simulated means match the reference table", detail);
}

// 3: the per-queue workload split sums to the total on random models.
void criterion3() {
  std::mt19937_64 gen(1001);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const NetworkModel m = random_model(gen, 6);
    const TrafficSolution hat = solve_traffic(m, scale_to_load(m, 1.0));
    const Eigen::VectorXd u = ht_u_vector(m, hat);
    const Eigen::VectorXd di = ht_delta_i(m, hat);
    worst = std::max(worst, std::abs(di.sum() - ht_delta(hat, u)));
  }
  std::ostringstream d;
  d << "largest |sum delta_i - delta| = " << worst;
  report(3, worst < 1e-10, "workload split sums to the total", d.str());
}

// 4: without routing the split reduces to rho_i (1 + rho_i) / 2.
void criterion4() {
  std::mt19937_64 gen(1002);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const NetworkModel m = random_model(gen, 6, /*zero_routing=*/true);
    const TrafficSolution hat = solve_traffic(m, scale_to_load(m, 1.0));
    const Eigen::VectorXd di = ht_delta_i(m, hat);
    for (Eigen::Index i = 0; i < m.n; ++i)
      worst = std::max(worst, std::abs(di[i] - 0.5 * hat.rho_i[i] *
                                                   (1.0 + hat.rho_i[i])));
  }
  std::ostringstream d;
  d << "largest deviation " << worst;
  report(4, worst < 1e-12, "split closed form without routing", d.str());
}

// 5: mean cycle time r/(1-rho) at moderate loads; scaled cycle moments near
// the gamma law close to saturation.
void criterion5() {
  const NetworkModel m = katayama_model();
  bool ok = true;
  std::ostringstream d;
  for (double rho : {0.3, 0.7, 0.95}) {
    SimConfig cfg;
    cfg.seed = kDefaultSeed + 50;
    cfg.target_served = 2'000'000;
    const SimResult res = run(m, scale_to_load(m, rho), cfg);
    const double expect = 4.0 / (1.0 - rho);
    const bool covered = res.cycle.covers(expect);
    ok &= covered;
    d << "rho=" << rho << " E[C] " << res.cycle.mean << "+-"
      << res.cycle.half_width << (covered ? " covers " : " MISSES ") << expect
      << "; ";
  }

  const double rho = 0.98;
  SimConfig cfg;
  cfg.seed = kDefaultSeed + 51;
  cfg.target_served = 8'000'000;
  const SimResult res = run(m, scale_to_load(m, rho), cfg);
  const HtCoefficients ht = ht_coefficients(m);
  const double pred_mean = ht.alpha / ht.mu;
  const double pred_var = ht.alpha / (ht.mu * ht.mu);
  const double sim_mean = (1.0 - rho) * res.cycle.mean;
  const double sim_var = (1.0 - rho) * (1.0 - rho) * res.cycle_variance;
  const double mean_err = std::abs(sim_mean - pred_mean) / pred_mean;
  const double var_err = std::abs(sim_var - pred_var) / pred_var;
  ok &= mean_err <= 0.05 && var_err <= 0.15;
  d << "rho=0.98 scaled cycle mean err " << mean_err << ", var err "
    << var_err;
  report(5, ok, "cycle times follow the predicted laws", d.str());
}

// 6: queue-length law at the reference queue's polling instants.
void criterion6() {
  SimConfig cfg;
  cfg.seed = kDefaultSeed + 52;
  cfg.target_served = 4'000'000;
  const HtVerificationReport rep = ht_verify(katayama_model(), 0.98, cfg);
  bool ok = true;
  std::ostringstream d;
  double largest = 0.0;
  for (const HtQueueCheck& q : rep.queues)
    largest = std::max(largest, q.sim_mean);
  for (const HtQueueCheck& q : rep.queues) {
    if (q.coeff > 0.0) {
      const double err = std::abs(q.sim_mean - q.pred_mean) / q.pred_mean;
      ok &= err <= 0.10;
      d << "queue " << q.queue << " mean err " << err << "; ";
    } else {
      ok &= q.sim_mean < 0.05 * largest;
      d << "queue " << q.queue << " (empty limit) scaled mean " << q.sim_mean
        << "; ";
    }
  }
  report(6, ok, "scaled polling queue lengths match the gamma law", d.str());
}

// 7: symmetric system, where the interpolation is exact: the simulation CI
// must cover the formula at every load and queue.
void criterion7() {
  NetworkModel m;
  m.n = 3;
  m.arrival_weights = Eigen::VectorXd::Ones(3);
  m.service.assign(3, DistributionSpec::exponential(1.0));
  m.switchover.assign(3, DistributionSpec::deterministic(1.0));
  m.routing = Eigen::MatrixXd::Zero(3, 3);

  const HtCoefficients ht = ht_coefficients(m);
  const LtLimits lt = lt_wait(m, ht.hat);
  bool ok = true;
  std::ostringstream d;
  for (double rho : {0.3, 0.6, 0.9}) {
    const Eigen::VectorXd w = interpolate_wait(lt.w_lt, ht.w_ht, rho);
    SimConfig cfg;
    cfg.seed = kDefaultSeed + 53;
    cfg.target_served = 2'000'000;
    const SimResult res = run(m, scale_to_load(m, rho), cfg);
    for (int i = 0; i < 3; ++i) {
      const bool covered = res.wait[i].covers(w[i]);
      ok &= covered;
      if (!covered)
        d << "rho=" << rho << " queue " << i + 1 << " CI "
          << res.wait[i].mean << "+-" << res.wait[i].half_width << " misses "
          << w[i] << "; ";
    }
  }
  report(7, ok, "symmetric-system waits covered by simulation CIs", d.str());
}

// 8: switch-over reshaping at fixed total leaves the heavy-traffic waits
// bit-identical; relabeling queues relabels them.
void criterion8() {
  NetworkModel a = katayama_model();
  NetworkModel b = katayama_model();
  b.switchover = {DistributionSpec::deterministic(4.0),
                  DistributionSpec::deterministic(0.0),
                  DistributionSpec::deterministic(0.0)};
  NetworkModel c = katayama_model();
  c.switchover = {DistributionSpec::exponential(2.0),
                  DistributionSpec::gamma(2.0, 2.0),
                  DistributionSpec::deterministic(1.0)};
  const Eigen::VectorXd wa = ht_coefficients(a).w_ht;
  const Eigen::VectorXd wb = ht_coefficients(b).w_ht;
  const Eigen::VectorXd wc = ht_coefficients(c).w_ht;
  bool ok = true;
  for (int i = 0; i < 3; ++i) ok &= wa[i] == wb[i] && wa[i] == wc[i];

  // label rotations rename queues without changing the cyclic visit order
  std::mt19937_64 gen(1003);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const NetworkModel m = random_model(gen, 6);
    std::uniform_int_distribution<int> pick_shift(0,
                                                  static_cast<int>(m.n) - 1);
    const int shift = pick_shift(gen);
    std::vector<int> perm(static_cast<std::size_t>(m.n));
    for (Eigen::Index i = 0; i < m.n; ++i)
      perm[static_cast<std::size_t>(i)] =
          static_cast<int>((i + shift) % m.n);
    const Eigen::VectorXd w = ht_coefficients(m).w_ht;
    const Eigen::VectorXd wp = ht_coefficients(permute_model(m, perm)).w_ht;
    for (Eigen::Index i = 0; i < m.n; ++i) {
      const double wo = w[i];
      const double ws = wp[perm[static_cast<std::size_t>(i)]];
      if (std::isnan(wo) || std::isnan(ws)) {
        ok &= std::isnan(wo) == std::isnan(ws);
        continue;
      }
      worst = std::max(worst, std::abs(wo - ws));
    }
  }
  ok &= worst < 1e-10;
  std::ostringstream d;
  d << "largest relabeling deviation " << worst;
  report(8, ok, "heavy-traffic waits invariant to reshaping and relabeling",
         d.str());
}

// 9: the interpolation recovers both limits at the ends of the load range.
void criterion9() {
  bool ok = true;
  double worst_low = 0.0, worst_high = 0.0;
  std::mt19937_64 gen(1004);
  for (int rep = 0; rep < 21; ++rep) {
    const NetworkModel m = rep == 0 ? katayama_model() : random_model(gen, 6);
    const HtCoefficients ht = ht_coefficients(m);
    const LtLimits lt = lt_wait(m, ht.hat);
    const Eigen::VectorXd low = interpolate_wait(lt.w_lt, ht.w_ht, 1e-9);
    const double rho = 1.0 - 1e-6;
    const Eigen::VectorXd high = interpolate_wait(lt.w_lt, ht.w_ht, rho);
    for (Eigen::Index i = 0; i < m.n; ++i) {
      if (std::isnan(lt.w_lt[i]) || lt.w_lt[i] <= 0.0) continue;
      worst_low = std::max(
          worst_low, std::abs(low[i] - lt.w_lt[i]) / lt.w_lt[i]);
      worst_high = std::max(
          worst_high,
          std::abs((1.0 - rho) * high[i] - ht.w_ht[i]) / ht.w_ht[i]);
    }
  }
  ok = worst_low <= 1e-6 && worst_high <= 1e-4;
  std::ostringstream d;
  d << "light-end rel err " << worst_low << ", heavy-end rel err "
    << worst_high;
  report(9, ok, "interpolation recovers both limits at the endpoints",
         d.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
