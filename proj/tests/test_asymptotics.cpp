#include "polynet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "polynet/harness.hpp"
#include "test_support.hpp"

using namespace polynet;

namespace {

NetworkModel tandem(bool feeder_first) {
  NetworkModel m;
  m.n = 2;
  m.arrival_weights.resize(2);
  m.service = {DistributionSpec::deterministic(1.0),
               DistributionSpec::deterministic(1.0)};
  m.switchover = {DistributionSpec::deterministic(0.5),
                  DistributionSpec::deterministic(0.5)};
  m.routing = Eigen::MatrixXd::Zero(2, 2);
  if (feeder_first) {
    m.arrival_weights << 1.0, 0.0;
    m.routing(0, 1) = 1.0;
  } else {
    m.arrival_weights << 0.0, 1.0;
    m.routing(1, 0) = 1.0;
  }
  return m;
}

}  // namespace

TEST_CASE("bundled example: heavy-traffic objects in closed form") {
  const HtCoefficients ht = ht_coefficients(katayama_model());

  CHECK(ht.hat.rho == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ht.u[0] == doctest::Approx(1.0 / 66).epsilon(1e-12));
  CHECK(ht.u[1] == doctest::Approx(650.0 / 4356).epsilon(1e-12));
  CHECK(ht.u[2] == 0.0);

  CHECK(ht.delta == doctest::Approx(358.0 / 363).epsilon(1e-12));
  CHECK(ht.delta_i[0] == doctest::Approx(201.0 / 4356).epsilon(1e-12));
  CHECK(ht.delta_i[1] == doctest::Approx(190.0 / 363).epsilon(1e-12));
  CHECK(ht.delta_i[2] == doctest::Approx(5.0 / 12).epsilon(1e-12));
  CHECK(ht.delta_i.sum() == doctest::Approx(ht.delta).epsilon(1e-12));

  CHECK(ht.alpha == doctest::Approx(1432.0 / 1089).epsilon(1e-12));
  CHECK(ht.mu == doctest::Approx(358.0 / 1089).epsilon(1e-12));
  CHECK(ht.alpha == doctest::Approx(ht.hat.r * ht.mu).epsilon(1e-12));

  CHECK(ht.w_ht[0] == doctest::Approx(168907.0 / 47256).epsilon(1e-12));
  CHECK(ht.w_ht[1] == doctest::Approx(47899.0 / 11814).epsilon(1e-12));
  CHECK(ht.w_ht[2] == doctest::Approx(2521.0 / 716).epsilon(1e-12));

  const GammaLaw cycle = cycle_time_law(ht);
  CHECK(cycle.mean() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cycle.variance() == doctest::Approx(4356.0 / 358).epsilon(1e-12));

  const QueueLengthLawHT ql = queue_length_law(ht);
  CHECK(ql.shape == doctest::Approx(ht.alpha).epsilon(1e-13));
  CHECK(ql.coeff[0] == doctest::Approx(363.0 / 7876).epsilon(1e-12));
  CHECK(ql.coeff[1] == doctest::Approx(325.0 / 716).epsilon(1e-12));
  CHECK(ql.coeff[2] == 0.0);
  // scaled mean queue lengths coeff * shape
  CHECK(ql.coeff[0] * ql.shape == doctest::Approx(2.0 / 33).epsilon(1e-12));
  CHECK(ql.coeff[1] * ql.shape == doctest::Approx(650.0 / 1089).epsilon(1e-12));
}

TEST_CASE("bundled example: light-traffic limits") {
  const NetworkModel m = katayama_model();
  const LtLimits lt = lt_wait(m, solve_traffic(m, scale_to_load(m, 0.5)));
  for (int i = 0; i < 3; ++i)
    CHECK(lt.w_lt[i] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("per-queue workload split sums to the total") {
  std::mt19937_64 gen(8181);
  for (int rep = 0; rep < 100; ++rep) {
    const NetworkModel m = random_model(gen);
    const TrafficSolution hat = solve_traffic(m, scale_to_load(m, 1.0));
    const Eigen::VectorXd u = ht_u_vector(m, hat);
    const double delta = ht_delta(hat, u);
    const Eigen::VectorXd delta_i = ht_delta_i(m, hat);
    CHECK(std::abs(delta_i.sum() - delta) < 1e-10);
  }
}

TEST_CASE("zero routing: workload split has a closed form") {
  std::mt19937_64 gen(555);
  for (int rep = 0; rep < 50; ++rep) {
    const NetworkModel m = random_model(gen, 6, /*zero_routing=*/true);
    const TrafficSolution hat = solve_traffic(m, scale_to_load(m, 1.0));
    const Eigen::VectorXd delta_i = ht_delta_i(m, hat);
    for (Eigen::Index i = 0; i < m.n; ++i)
      CHECK(std::abs(delta_i[i] -
                     0.5 * hat.rho_i[i] * (1.0 + hat.rho_i[i])) < 1e-12);
  }
}

TEST_CASE("two-queue chain: split is the same under both labelings") {
  const TrafficSolution hat_a =
      solve_traffic(tandem(true), scale_to_load(tandem(true), 1.0));
  const Eigen::VectorXd da = ht_delta_i(tandem(true), hat_a);
  CHECK(da[0] == doctest::Approx(3.0 / 4).epsilon(1e-12));
  CHECK(da[1] == doctest::Approx(1.0 / 4).epsilon(1e-12));

  const TrafficSolution hat_b =
      solve_traffic(tandem(false), scale_to_load(tandem(false), 1.0));
  const Eigen::VectorXd db = ht_delta_i(tandem(false), hat_b);
  CHECK(db[1] == doctest::Approx(da[0]).epsilon(1e-12));
  CHECK(db[0] == doctest::Approx(da[1]).epsilon(1e-12));

  const HtCoefficients ha = ht_coefficients(tandem(true));
  const HtCoefficients hb = ht_coefficients(tandem(false));
  CHECK(ha.w_ht[0] == doctest::Approx(hb.w_ht[1]).epsilon(1e-12));
  CHECK(ha.w_ht[1] == doctest::Approx(hb.w_ht[0]).epsilon(1e-12));
  CHECK(ha.delta == doctest::Approx(hb.delta).epsilon(1e-12));
}

TEST_CASE("three identical queues: limits coincide and interpolation is flat") {
  NetworkModel m;
  m.n = 3;
  m.arrival_weights = Eigen::VectorXd::Ones(3);
  m.service.assign(3, DistributionSpec::exponential(1.0));
  m.switchover.assign(3, DistributionSpec::deterministic(1.0));
  m.routing = Eigen::MatrixXd::Zero(3, 3);

  const HtCoefficients ht = ht_coefficients(m);
  const LtLimits lt = lt_wait(m, ht.hat);
  for (int i = 0; i < 3; ++i) {
    CHECK(lt.w_lt[i] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(ht.w_ht[i] == doctest::Approx(3.0).epsilon(1e-12));
  }
  const Eigen::VectorXd w3 = interpolate_wait(lt.w_lt, ht.w_ht, 0.3);
  const Eigen::VectorXd w6 = interpolate_wait(lt.w_lt, ht.w_ht, 0.6);
  const Eigen::VectorXd w9 = interpolate_wait(lt.w_lt, ht.w_ht, 0.9);
  for (int i = 0; i < 3; ++i) {
    CHECK(w3[i] == doctest::Approx(1.95 / 0.7).epsilon(1e-12));
    CHECK(w6[i] == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(w9[i] == doctest::Approx(28.5).epsilon(1e-12));
  }
}

TEST_CASE("single queue: interpolation matches the vacation-model oracle") {
  std::mt19937_64 gen(2023);
  for (int rep = 0; rep < 25; ++rep) {
    NetworkModel m = random_model(gen, 1, /*zero_routing=*/true);
    REQUIRE(m.n == 1);
    const auto [r, r2] = switchover_aggregate(m);
    const HtCoefficients ht = ht_coefficients(m);
    const LtLimits lt = lt_wait(m, ht.hat);
    for (double rho : {0.1, 0.5, 0.8, 0.95}) {
      const double lambda = scale_to_load(m, rho)[0];
      const double w =
          interpolate_wait(lt.w_lt, ht.w_ht, rho)[0];
      const Mg1Gated oracle = mg1_gated_oracle(lambda, m.service[0], r, r2);
      CHECK(w == doctest::Approx(oracle.wait).epsilon(1e-12));
    }
  }
}

TEST_CASE("single queue with self-routing: light-traffic terms") {
  NetworkModel m;
  m.n = 1;
  m.arrival_weights = Eigen::VectorXd::Ones(1);
  m.service.assign(1, DistributionSpec::exponential(1.0));
  m.switchover.assign(1, DistributionSpec::uniform(1.0, 3.0));
  m.routing = Eigen::MatrixXd::Zero(1, 1);
  const double q = 0.45;
  m.routing(0, 0) = q;
  const auto [r, r2] = switchover_aggregate(m);
  const LtLimits lt = lt_wait(m, solve_traffic(m, m.arrival_weights));
  // external customers see a residual total switch-over, re-queued ones a
  // whole cycle of switch-overs
  CHECK(lt.w_lt[0] ==
        doctest::Approx((1.0 - q) * r2 / (2.0 * r) + q * r).epsilon(1e-12));
}

TEST_CASE("light traffic needs switch-over time; unreachable queues are NaN") {
  NetworkModel m = katayama_model();
  m.switchover.assign(3, DistributionSpec::deterministic(0.0));
  CHECK_THROWS_AS(lt_wait(m, solve_traffic(m, m.arrival_weights)),
                  std::domain_error);

  NetworkModel iso;
  iso.n = 2;
  iso.arrival_weights.resize(2);
  iso.arrival_weights << 1.0, 0.0;
  iso.service.assign(2, DistributionSpec::exponential(1.0));
  iso.switchover.assign(2, DistributionSpec::deterministic(1.0));
  iso.routing = Eigen::MatrixXd::Zero(2, 2);
  const HtCoefficients ht = ht_coefficients(iso);
  const LtLimits lt = lt_wait(iso, ht.hat);
  CHECK(std::isnan(lt.w_lt[1]));
  CHECK(std::isnan(ht.w_ht[1]));
  CHECK(std::isfinite(lt.w_lt[0]));
  CHECK(std::isfinite(ht.w_ht[0]));
}

TEST_CASE("interpolation endpoints recover the two limits") {
  const NetworkModel m = katayama_model();
  const HtCoefficients ht = ht_coefficients(m);
  const LtLimits lt = lt_wait(m, ht.hat);

  const Eigen::VectorXd low = interpolate_wait(lt.w_lt, ht.w_ht, 1e-9);
  for (int i = 0; i < 3; ++i)
    CHECK(low[i] == doctest::Approx(lt.w_lt[i]).epsilon(1e-6));

  const double rho = 1.0 - 1e-6;
  const Eigen::VectorXd high = interpolate_wait(lt.w_lt, ht.w_ht, rho);
  for (int i = 0; i < 3; ++i)
    CHECK((1.0 - rho) * high[i] == doctest::Approx(ht.w_ht[i]).epsilon(1e-4));

  CHECK_THROWS_AS(interpolate_wait(lt.w_lt, ht.w_ht, 1.0), std::domain_error);
  CHECK_THROWS_AS(interpolate_wait(lt.w_lt, ht.w_ht, -0.1), std::domain_error);
  const Eigen::VectorXd at_zero = interpolate_wait(lt.w_lt, ht.w_ht, 0.0);
  CHECK(at_zero[0] == lt.w_lt[0]);
}

TEST_CASE("wait limits see switch-over times only through their total") {
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
  for (int i = 0; i < 3; ++i) {
    CHECK(wa[i] == wb[i]);  // bit-identical, same total mean
    CHECK(wa[i] == wc[i]);
  }
}

// Rotating the labels renames the queues without touching the cyclic visit
// order, so every heavy-traffic object must follow the labels. Routing makes
// the waits genuinely order-dependent (a queue visited right after its
// feeder holds routed work for less of the cycle), so only rotations, not
// arbitrary permutations, are symmetries here.
TEST_CASE("rotating queue labels rotates the heavy-traffic limits") {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 30; ++rep) {
    const NetworkModel m = random_model(gen, 5);
    const Eigen::Index n = m.n;
    std::uniform_int_distribution<int> pick_shift(0, static_cast<int>(n) - 1);
    const int shift = pick_shift(gen);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      perm[static_cast<std::size_t>(i)] =
          static_cast<int>((i + shift) % n);
    const NetworkModel pm = permute_model(m, perm);

    const HtCoefficients orig = ht_coefficients(m);
    const HtCoefficients shuf = ht_coefficients(pm);
    CHECK(std::abs(orig.delta - shuf.delta) < 1e-10);
    CHECK(std::abs(orig.alpha - shuf.alpha) < 1e-10);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int pi = perm[static_cast<std::size_t>(i)];
      CHECK(std::abs(orig.delta_i[i] - shuf.delta_i[pi]) < 1e-10);
      const double wo = orig.w_ht[i];
      const double ws = shuf.w_ht[pi];
      if (std::isnan(wo))
        CHECK(std::isnan(ws));
      else
        CHECK(std::abs(wo - ws) < 1e-10);
    }
  }
}

// Without routing the order dependence disappears and any permutation is a
// symmetry.
TEST_CASE("unrouted models are insensitive to arbitrary relabelings") {
  std::mt19937_64 gen(18);
  for (int rep = 0; rep < 30; ++rep) {
    const NetworkModel m = random_model(gen, 5, /*zero_routing=*/true);
    std::vector<int> perm(static_cast<std::size_t>(m.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const HtCoefficients orig = ht_coefficients(m);
    const HtCoefficients shuf = ht_coefficients(permute_model(m, perm));
    CHECK(std::abs(orig.delta - shuf.delta) < 1e-10);
    for (Eigen::Index i = 0; i < m.n; ++i) {
      const double wo = orig.w_ht[i];
      const double ws = shuf.w_ht[perm[static_cast<std::size_t>(i)]];
      if (std::isnan(wo))
        CHECK(std::isnan(ws));
      else
        CHECK(std::abs(wo - ws) < 1e-10);
    }
  }
}
