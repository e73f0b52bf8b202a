#include <cstdint>
#include <fstream>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "polynet/harness.hpp"
#include "polynet/model_io.hpp"
#include "polynet/simulate.hpp"
#include "polynet/traffic.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitInput = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw polynet::ParseError("cannot write output file: " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace polynet;

  CLI::App app{
      "Mean waiting times in cyclic polling networks with customer routing: "
      "light/heavy-traffic limits, their interpolation, and a validating "
      "simulator"};
  app.require_subcommand(1);

  const std::vector<double> default_grid(table1_reference().rho.begin(),
                                         table1_reference().rho.end());

  std::string model_path;
  std::string out_path;
  std::vector<double> rho_list;
  std::uint64_t served = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t batches = 32;
  bool analytic_only = false;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_path, "model file (JSON)")->required();
  };
  auto add_sim_opts = [&](CLI::App* cmd) {
    cmd->add_option("--served", served,
                    "post-warmup service completions per run");
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--batches", batches, "batch count for confidence intervals");
  };

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "evaluate the limit formulas and the interpolation");
  add_model(analyze_cmd);
  analyze_cmd->add_option("--rho", rho_list, "loads in (0,1)")
      ->delimiter(',');
  analyze_cmd->add_option("--out", out_path, "write a CSV report here");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "estimate mean waits by simulation");
  add_model(simulate_cmd);
  simulate_cmd->add_option("--rho", rho_list, "loads in (0,1)")
      ->delimiter(',')
      ->required();
  add_sim_opts(simulate_cmd);
  simulate_cmd->add_option("--out", out_path, "write a CSV report here");

  auto* compare_cmd = app.add_subcommand(
      "compare", "analytic approximation vs simulation over a load grid");
  add_model(compare_cmd);
  compare_cmd->add_option("--rho", rho_list, "loads in (0,1)")
      ->delimiter(',');
  add_sim_opts(compare_cmd);
  compare_cmd->add_option("--out", out_path, "write a CSV report here");

  auto* ht_cmd = app.add_subcommand(
      "ht-verify",
      "check simulated scaled cycle and queue-length moments against the "
      "gamma-limit predictions");
  add_model(ht_cmd);
  ht_cmd->add_option("--rho", rho_list, "loads in (0,1), 0.95+ recommended")
      ->delimiter(',');
  add_sim_opts(ht_cmd);

  auto* table_cmd = app.add_subcommand(
      "reproduce-table1",
      "re-run the bundled reference comparison on the built-in three-queue "
      "example");
  table_cmd->add_option("--served", served,
                        "post-warmup service completions per grid point");
  table_cmd->add_option("--seed", seed, "master RNG seed");
  table_cmd->add_option("--batches", batches,
                        "batch count for confidence intervals");
  table_cmd->add_option("--out", out_path, "write a CSV report here");
  table_cmd->add_flag("--analytic-only", analytic_only,
                      "skip the simulation columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze_cmd) {
      const NetworkModel model = load_model(model_path);
      const AnalyzeReport rep =
          analyze(model, rho_list.empty() ? default_grid : rho_list);
      std::cout << format_table(rep);
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_csv(out, rep, model_digest(model));
      }
      return kExitPass;
    }

    if (*simulate_cmd) {
      const NetworkModel model = load_model(model_path);
      std::ofstream out;
      if (!out_path.empty()) {
        out = open_out(out_path);
        out << "# model=" << model_digest(model) << "\n# seed=" << seed
            << "\nrho,queue,sim_mean,sim_ci95,served\n";
      }
      for (double rho : rho_list) {
        SimConfig cfg;
        cfg.seed = seed;
        cfg.target_served = served;
        cfg.batches = batches;
        std::cout << "rho = " << rho << "\n";
        const SimResult res = run(model, scale_to_load(model, rho), cfg);
        std::cout << format_sim_summary(res);
        if (out.is_open())
          for (std::size_t q = 0; q < res.wait.size(); ++q) {
            char line[160];
            std::snprintf(line, sizeof line, "%.12g,%zu,%.12g,%.12g,%llu\n",
                          rho, q + 1, res.wait[q].mean, res.wait[q].half_width,
                          static_cast<unsigned long long>(res.served[q]));
            out << line;
          }
      }
      return kExitPass;
    }

    if (*compare_cmd) {
      const NetworkModel model = load_model(model_path);
      SimConfig cfg;
      cfg.seed = seed;
      cfg.target_served = served;
      cfg.batches = batches;
      const ComparisonReport rep = compare(
          model, rho_list.empty() ? default_grid : rho_list, cfg);
      std::cout << format_table(rep);
      for (const auto& e : rep.errors) std::cerr << "error: " << e << "\n";
      std::cout << "wall time " << rep.wall_seconds << " s\n";
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_csv(out, rep);
      }
      return kExitPass;
    }

    if (*ht_cmd) {
      const NetworkModel model = load_model(model_path);
      if (rho_list.empty()) rho_list.push_back(0.98);
      for (double rho : rho_list) {
        SimConfig cfg;
        cfg.seed = seed;
        cfg.target_served = served;
        cfg.batches = batches;
        const HtVerificationReport rep = ht_verify(model, rho, cfg);
        if (rep.low_samples)
          std::cerr << "warning: only " << rep.polling_count
                    << " polling vectors collected; moments will be noisy\n";
        std::cout << format_table(rep);
      }
      return kExitPass;
    }

    // reproduce-table1
    Table1Options opts;
    if (table_cmd->count("--served")) opts.served = served;
    opts.seed = seed;
    opts.batches = batches;
    opts.analytic_only = analytic_only;
    const Table1Report rep = reproduce_table1(opts);
    if (rep.comparison) {
      std::cout << format_table(*rep.comparison);
      std::cout << "wall time " << rep.comparison->wall_seconds << " s\n";
    } else {
      std::cout << format_table(rep.analytic);
    }
    for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << ": "
              << (rep.comparison ? "analytic and simulated columns"
                                 : "analytic columns")
              << " checked against the bundled reference\n";
    if (!out_path.empty()) {
      auto out = open_out(out_path);
      if (rep.comparison)
        write_csv(out, *rep.comparison);
      else
        write_csv(out, rep.analytic, model_digest(katayama_model()));
    }
    return rep.pass ? kExitPass : kExitTolerance;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
