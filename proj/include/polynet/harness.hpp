#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polynet/asymptotics.hpp"
#include "polynet/model.hpp"
#include "polynet/simulate.hpp"

namespace polynet {

inline constexpr std::uint64_t kDefaultSeed = 7'060'401;

struct AnalyzeRow {
  double rho;
  int queue;  // 1-based in all reports
  double w_lt;
  double w_ht;
  double approx;
};

struct AnalyzeReport {
  std::vector<AnalyzeRow> rows;  // sorted by (rho, queue)
  Eigen::VectorXd w_lt;          // load-independent limit columns
  Eigen::VectorXd w_ht;
};

// Evaluates the limit formulas once and the interpolation per grid point.
// Every rho must lie in (0, 1).
AnalyzeReport analyze(const NetworkModel& model, std::vector<double> rho_grid);

struct CompareRow {
  double rho;
  int queue;
  double w_lt;
  double w_ht;
  double approx;
  double sim_mean;
  double sim_ci95;
  double rel_err;  // |approx - sim_mean| / sim_mean
  std::uint64_t served;
};

struct ComparisonReport {
  std::vector<CompareRow> rows;      // sorted by (rho, queue)
  std::vector<std::string> errors;   // per-point failures, non-fatal
  std::string digest;
  std::uint64_t seed = 0;
  std::uint64_t target_served = 0;
  std::size_t batches = 0;
  double wall_seconds = 0.0;  // never serialized; reports stay deterministic
};

// One simulation per grid point with per-point seeds derived from
// base.seed; grid points run on a small worker pool, rows assemble in
// grid order.
ComparisonReport compare(const NetworkModel& model,
                         std::vector<double> rho_grid, const SimConfig& base);

struct HtQueueCheck {
  int queue;
  double coeff;      // queue-length law coefficient c_i
  double pred_mean;  // c_i * alpha
  double pred_var;   // c_i^2 * alpha
  double sim_mean;   // mean of (1 - rho) X_i at reference polling instants
  double sim_var;
};

struct HtVerificationReport {
  double rho;
  GammaLaw cycle_law;
  double pred_cycle_mean;  // alpha / mu, equal to r
  double pred_cycle_var;   // alpha / mu^2
  double sim_cycle_mean;   // mean of (1 - rho) C
  double sim_cycle_var;
  std::vector<HtQueueCheck> queues;
  std::uint64_t polling_count = 0;
  bool low_samples = false;  // fewer than 1e4 polling vectors collected
};

// Simulates at the given load with polling-vector recording switched on and
// sets the first two moments of the scaled laws against the gamma-limit
// predictions. Loads of 0.95 and up give meaningful agreement.
HtVerificationReport ht_verify(const NetworkModel& model, double rho,
                               const SimConfig& base);

// The bundled three-queue routed example: external arrivals at queues 1-2
// in ratio 1:10, deterministic unit services feeding queue 3 (service time
// 5), switch-overs (0, 2, 2).
NetworkModel katayama_model();

// Published reference results for katayama_model(): exact mean waits and
// the interpolation values over the standard seven-point load grid.
struct Table1Reference {
  std::array<double, 7> rho;
  // [queue][grid point], queues in index order
  std::array<std::array<double, 7>, 3> mean_wait;
  std::array<std::array<double, 7>, 3> approx;
};
const Table1Reference& table1_reference();

struct Table1Options {
  std::uint64_t served = 10'000'000;  // per grid point, post warmup
  std::uint64_t seed = kDefaultSeed;
  std::size_t batches = 32;
  bool analytic_only = false;
};

struct Table1Report {
  AnalyzeReport analytic;
  std::optional<ComparisonReport> comparison;
  std::vector<std::string> failures;  // one line per violated tolerance
  bool pass = true;
};

// Re-runs the bundled reference comparison: interpolation columns must match
// the reference to +-0.01; simulated means must match the reference mean
// waits within 2% relative error (5% at rho = 0.99).
Table1Report reproduce_table1(const Table1Options& opts);

void write_csv(std::ostream& out, const AnalyzeReport& rep,
               const std::string& digest);
void write_csv(std::ostream& out, const ComparisonReport& rep);

std::string format_table(const AnalyzeReport& rep);
std::string format_table(const ComparisonReport& rep);
std::string format_table(const HtVerificationReport& rep);
std::string format_sim_summary(const SimResult& res);

}  // namespace polynet
