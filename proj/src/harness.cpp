#include "polynet/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polynet/model_io.hpp"
#include "polynet/rng.hpp"
#include "polynet/traffic.hpp"

namespace polynet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t point_seed(std::uint64_t master, std::size_t index) {
  std::uint64_t s = master;
  s = splitmix64(s) ^ (index + 1);
  return splitmix64(s);
}

// Near saturation the mean-wait noise grows like 1/(1 - rho), so the budget
// scales up (capped at 10x) to keep relative CI width roughly level across
// the grid.  Rows record the served counts actually used.
std::uint64_t point_budget(std::uint64_t base, double rho) {
  const double boost = std::clamp(0.1 / (1.0 - rho), 1.0, 10.0);
  return static_cast<std::uint64_t>(static_cast<double>(base) * boost);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fixed(double v, int prec = 4) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty load grid");
  for (double rho : grid)
    if (!(rho > 0.0) || rho >= 1.0)
      throw std::domain_error("load " + num(rho) +
                              " outside the stable range (0, 1)");
}

struct Aligned {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << (c ? "  " : "");
        out << std::string(width[c] - cells[c].size(), ' ') << cells[c];
      }
      out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return out.str();
  }
};

}  // namespace

AnalyzeReport analyze(const NetworkModel& model, std::vector<double> rho_grid) {
  require_valid(model);
  check_grid(rho_grid);
  std::sort(rho_grid.begin(), rho_grid.end());

  const HtCoefficients ht = ht_coefficients(model);
  const LtLimits lt = lt_wait(model, ht.hat);

  AnalyzeReport rep;
  rep.w_lt = lt.w_lt;
  rep.w_ht = ht.w_ht;
  for (double rho : rho_grid) {
    const Eigen::VectorXd approx = interpolate_wait(lt.w_lt, ht.w_ht, rho);
    for (Eigen::Index q = 0; q < model.n; ++q)
      rep.rows.push_back({rho, static_cast<int>(q) + 1, lt.w_lt[q], ht.w_ht[q],
                          approx[q]});
  }
  return rep;
}

ComparisonReport compare(const NetworkModel& model,
                         std::vector<double> rho_grid, const SimConfig& base) {
  const auto start = std::chrono::steady_clock::now();
  std::sort(rho_grid.begin(), rho_grid.end());
  const AnalyzeReport analytic = analyze(model, rho_grid);

  ComparisonReport rep;
  rep.digest = model_digest(model);
  rep.seed = base.seed;
  rep.target_served = base.target_served;
  rep.batches = base.batches;

  const std::size_t points = rho_grid.size();
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(points)));
  std::vector<std::future<SimResult>> futures(points);
  for (std::size_t p = 0; p < points; ++p) {
    if (p >= workers) futures[p - workers].wait();
    SimConfig cfg = base;
    cfg.seed = point_seed(base.seed, p);
    const double rho = rho_grid[p];
    cfg.target_served = point_budget(base.target_served, rho);
    futures[p] = std::async(std::launch::async, [&model, cfg, rho] {
      return run(model, scale_to_load(model, rho), cfg);
    });
  }

  for (std::size_t p = 0; p < points; ++p) {
    const double rho = rho_grid[p];
    SimResult res;
    bool ok = true;
    try {
      res = futures[p].get();
    } catch (const std::exception& e) {
      ok = false;
      rep.errors.push_back("rho=" + num(rho) + ": " + e.what());
    }
    for (Eigen::Index q = 0; q < model.n; ++q) {
      const AnalyzeRow& a = analytic.rows[p * static_cast<std::size_t>(model.n) +
                                          static_cast<std::size_t>(q)];
      CompareRow row{rho,   a.queue, a.w_lt, a.w_ht, a.approx,
                     kNaN,  kNaN,    kNaN,   0};
      if (ok) {
        const MeanCi& w = res.wait[static_cast<std::size_t>(q)];
        row.sim_mean = w.mean;
        row.sim_ci95 = w.half_width;
        row.served = res.served[static_cast<std::size_t>(q)];
        if (w.mean > 0.0) row.rel_err = std::abs(a.approx - w.mean) / w.mean;
      }
      rep.rows.push_back(row);
    }
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

HtVerificationReport ht_verify(const NetworkModel& model, double rho,
                               const SimConfig& base) {
  require_valid(model);
  if (!(rho > 0.0) || rho >= 1.0)
    throw std::invalid_argument("ht_verify: load must lie in (0, 1)");

  const HtCoefficients ht = ht_coefficients(model);
  const QueueLengthLawHT law = queue_length_law(ht);
  const GammaLaw cycle = cycle_time_law(ht);

  SimConfig cfg = base;
  cfg.record_polling_vectors = true;
  cfg.reference_queue = 0;
  const SimResult res = run(model, scale_to_load(model, rho), cfg);

  const double scale = 1.0 - rho;
  HtVerificationReport rep;
  rep.rho = rho;
  rep.cycle_law = cycle;
  rep.pred_cycle_mean = cycle.mean();
  rep.pred_cycle_var = cycle.variance();
  rep.sim_cycle_mean = scale * res.cycle.mean;
  rep.sim_cycle_var = scale * scale * res.cycle_variance;
  rep.polling_count = res.polling_count;
  rep.low_samples = res.polling_count < 10'000;
  for (Eigen::Index q = 0; q < model.n; ++q) {
    const auto& acc = res.polling[static_cast<std::size_t>(q)];
    rep.queues.push_back({static_cast<int>(q) + 1, law.coeff[q],
                          law.coeff[q] * law.shape,
                          law.coeff[q] * law.coeff[q] * law.shape,
                          scale * acc.mean(), scale * scale * acc.variance()});
  }
  return rep;
}

NetworkModel katayama_model() {
  NetworkModel m;
  m.n = 3;
  m.arrival_weights.resize(3);
  m.arrival_weights << 1.0, 10.0, 0.0;
  m.service = {DistributionSpec::deterministic(1.0),
               DistributionSpec::deterministic(1.0),
               DistributionSpec::deterministic(5.0)};
  m.switchover = {DistributionSpec::deterministic(0.0),
                  DistributionSpec::deterministic(2.0),
                  DistributionSpec::deterministic(2.0)};
  m.routing = Eigen::MatrixXd::Zero(3, 3);
  m.routing(0, 2) = 1.0;
  m.routing(1, 2) = 1.0;
  return m;
}

const Table1Reference& table1_reference() {
  static const Table1Reference ref = {
      {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99},
      {{{2.05, 2.53, 3.87, 6.07, 10.95, 34.87, 356.60},
        {2.05, 2.56, 4.01, 6.45, 11.95, 39.05, 403.97},
        {2.02, 2.26, 3.18, 5.04, 9.62, 33.00, 349.85}}},
      {{{2.04, 2.40, 3.53, 5.57, 10.34, 34.17, 355.86},
        {2.04, 2.45, 3.74, 6.05, 11.46, 38.49, 403.39},
        {2.04, 2.39, 3.51, 5.52, 10.22, 33.69, 350.57}}}};
  return ref;
}

Table1Report reproduce_table1(const Table1Options& opts) {
  const NetworkModel model = katayama_model();
  const Table1Reference& ref = table1_reference();
  const std::vector<double> grid(ref.rho.begin(), ref.rho.end());

  Table1Report rep;
  rep.analytic = analyze(model, grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    for (std::size_t q = 0; q < 3; ++q) {
      const double got = rep.analytic.rows[p * 3 + q].approx;
      const double want = ref.approx[q][p];
      if (!(std::abs(got - want) <= 0.01))
        rep.failures.push_back("approx rho=" + num(grid[p]) + " queue " +
                               std::to_string(q + 1) + ": got " + fixed(got) +
                               ", reference " + fixed(want, 2));
    }
  }

  if (!opts.analytic_only) {
    SimConfig cfg;
    cfg.seed = opts.seed;
    cfg.target_served = opts.served;
    cfg.batches = opts.batches;
    rep.comparison = compare(model, grid, cfg);
    for (const auto& e : rep.comparison->errors)
      rep.failures.push_back("simulation: " + e);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const double tol = grid[p] > 0.95 ? 0.05 : 0.02;
      for (std::size_t q = 0; q < 3; ++q) {
        const CompareRow& row = rep.comparison->rows[p * 3 + q];
        const double want = ref.mean_wait[q][p];
        const double rel = std::abs(row.sim_mean - want) / want;
        if (!(rel <= tol))
          rep.failures.push_back(
              "sim rho=" + num(grid[p]) + " queue " + std::to_string(q + 1) +
              ": mean " + fixed(row.sim_mean) + " vs reference " +
              fixed(want, 2) + " (rel err " + fixed(rel, 4) + " > " +
              fixed(tol, 2) + ")");
      }
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

void write_csv(std::ostream& out, const AnalyzeReport& rep,
               const std::string& digest) {
  out << "# model=" << digest << "\n";
  out << "rho,queue,w_lt,w_ht,approx\n";
  for (const auto& r : rep.rows)
    out << num(r.rho) << ',' << r.queue << ',' << num(r.w_lt) << ','
        << num(r.w_ht) << ',' << num(r.approx) << '\n';
}

void write_csv(std::ostream& out, const ComparisonReport& rep) {
  out << "# model=" << rep.digest << "\n";
  out << "# seed=" << rep.seed << "\n";
  out << "# served=" << rep.target_served << "\n";
  out << "# batches=" << rep.batches << "\n";
  for (const auto& e : rep.errors) out << "# error: " << e << "\n";
  out << "rho,queue,w_lt,w_ht,approx,sim_mean,sim_ci95,rel_err,served\n";
  for (const auto& r : rep.rows)
    out << num(r.rho) << ',' << r.queue << ',' << num(r.w_lt) << ','
        << num(r.w_ht) << ',' << num(r.approx) << ',' << num(r.sim_mean) << ','
        << num(r.sim_ci95) << ',' << num(r.rel_err) << ',' << r.served << '\n';
}

std::string format_table(const AnalyzeReport& rep) {
  Aligned t;
  t.header = {"rho", "queue", "w_lt", "w_ht", "approx"};
  for (const auto& r : rep.rows)
    t.rows.push_back({num(r.rho), std::to_string(r.queue), fixed(r.w_lt),
                      fixed(r.w_ht), fixed(r.approx)});
  return t.render();
}

std::string format_table(const ComparisonReport& rep) {
  Aligned t;
  t.header = {"rho",      "queue",   "w_lt",    "w_ht",  "approx",
              "sim_mean", "sim_ci95", "rel_err", "served"};
  for (const auto& r : rep.rows)
    t.rows.push_back({num(r.rho), std::to_string(r.queue), fixed(r.w_lt),
                      fixed(r.w_ht), fixed(r.approx), fixed(r.sim_mean),
                      fixed(r.sim_ci95), fixed(r.rel_err),
                      std::to_string(r.served)});
  return t.render();
}

std::string format_table(const HtVerificationReport& rep) {
  std::ostringstream out;
  out << "scaled cycle time (1-rho)C at rho=" << num(rep.rho) << ":\n";
  out << "  mean: simulated " << fixed(rep.sim_cycle_mean) << ", predicted "
      << fixed(rep.pred_cycle_mean) << "\n";
  out << "  var:  simulated " << fixed(rep.sim_cycle_var) << ", predicted "
      << fixed(rep.pred_cycle_var) << "\n";
  out << "gamma law: shape " << fixed(rep.cycle_law.shape) << ", rate "
      << fixed(rep.cycle_law.rate) << "\n";
  out << "polling vectors: " << rep.polling_count;
  if (rep.low_samples) out << "  (warning: fewer than 10000 samples)";
  out << "\n";
  Aligned t;
  t.header = {"queue", "coeff", "pred_mean", "sim_mean", "pred_var", "sim_var"};
  for (const auto& q : rep.queues)
    t.rows.push_back({std::to_string(q.queue), fixed(q.coeff),
                      fixed(q.pred_mean), fixed(q.sim_mean), fixed(q.pred_var),
                      fixed(q.sim_var)});
  out << t.render();
  return out.str();
}

std::string format_sim_summary(const SimResult& res) {
  std::ostringstream out;
  Aligned t;
  t.header = {"queue", "sim_mean", "sim_ci95", "served"};
  for (std::size_t q = 0; q < res.wait.size(); ++q)
    t.rows.push_back({std::to_string(q + 1), fixed(res.wait[q].mean),
                      fixed(res.wait[q].half_width),
                      std::to_string(res.served[q])});
  out << t.render();
  out << "cycle mean " << fixed(res.cycle.mean) << " +- "
      << fixed(res.cycle.half_width) << " over " << res.cycle_count
      << " cycles\n";
  out << "busy fraction " << fixed(res.busy_fraction) << ", simulated time "
      << fixed(res.elapsed, 1) << ", served " << res.served_total << "\n";
  return out.str();
}

}  // namespace polynet
