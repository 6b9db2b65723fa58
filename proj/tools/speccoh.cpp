// speccoh command-line tool: partial-coherence estimation with shrinkage,
// Monte-Carlo simulation campaigns, and sampling-distribution diagnostics.
//
// Exit codes: 0 ok, 2 usage or I/O failure, 3 violated precondition,
// 4 numeric failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "speccoh/commands.hpp"

namespace {

std::size_t thread_count_from(const std::optional<std::size_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SPECCOH_THREADS")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed SPECCOH_THREADS='" << env << "'\n";
    }
  }
  return 0;  // auto
}

int run_estimate_cmd(const speccoh::EstimateOptions& opt) {
  try {
    speccoh::run_estimate(opt);
    return 0;
  } catch (const speccoh::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const speccoh::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const speccoh::InsufficientTapers& e) {
    std::cerr << "error (--k/--method): " << e.what() << "\n";
    return 3;
  } catch (const speccoh::BadCount& e) {
    std::cerr << "error (--k): " << e.what() << "\n";
    return 3;
  } catch (const speccoh::FrequencyOutOfRange& e) {
    std::cerr << "error (--fstart/--fstop): " << e.what() << "\n";
    return 3;
  } catch (const speccoh::NotPositiveDefinite& e) {
    std::cerr << "error: estimated spectral matrix is not positive definite (" << e.what()
              << "); the input series may be degenerate or --k too small\n";
    return 3;
  } catch (const speccoh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

int run_scenario_cmd(bool simulate, const speccoh::SimulateOptions& opt) {
  try {
    if (simulate)
      speccoh::run_simulate(opt);
    else
      speccoh::run_diagnose(opt);
    return 0;
  } catch (const speccoh::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const speccoh::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const speccoh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinkage estimation of spectral and precision matrices with "
               "partial-coherence evaluation"};
  app.require_subcommand(1);

  speccoh::EstimateOptions est;
  auto* estimate = app.add_subcommand(
      "estimate", "Estimate partial coherence from a multichannel time-series CSV");
  estimate->add_option("input", est.input_csv, "Input CSV with header t,ch1,...,chp")
      ->required();
  estimate->add_option("--dt", est.dt, "Sample interval in seconds")->required();
  estimate->add_option("--k", est.k, "Number of sine tapers")->required();
  estimate->add_option("--method", est.method,
                       "raw|hs|qla|qlb|hsp|qlp (non-raw methods use estimated traces)");
  estimate->add_option("--fstart", est.fstart, "Grid start (Hz)");
  estimate->add_option("--fstop", est.fstop, "Grid stop (Hz)");
  estimate->add_option("--fstep", est.fstep, "Grid step (Hz)");
  estimate->add_option("--out", est.out_dir, "Output directory");

  speccoh::SimulateOptions sim;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::size_t> sim_threads;
  auto* simulate =
      app.add_subcommand("simulate", "Run a Monte-Carlo PRISE campaign from a scenario file");
  simulate->add_option("scenario", sim.scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--seed", sim_seed, "Seed (overrides the scenario's seed)");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = auto)");
  simulate->add_option("--out", sim.out_dir, "Output directory");

  speccoh::DiagnoseOptions diag;
  std::optional<std::uint64_t> diag_seed;
  std::optional<std::size_t> diag_threads;
  auto* diagnose = app.add_subcommand(
      "diagnose", "Check Wishart moment identities and trace-estimator bias");
  diagnose->add_option("scenario", diag.scenario_path, "Scenario JSON file")->required();
  diagnose->add_option("--seed", diag_seed, "Seed (overrides the scenario's seed)");
  diagnose->add_option("--threads", diag_threads, "Worker threads (0 = auto)");
  diagnose->add_option("--out", diag.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (estimate->parsed()) return run_estimate_cmd(est);
  if (simulate->parsed()) {
    sim.seed_override = sim_seed;
    sim.threads = thread_count_from(sim_threads);
    return run_scenario_cmd(true, sim);
  }
  diag.seed_override = diag_seed;
  diag.threads = thread_count_from(diag_threads);
  return run_scenario_cmd(false, diag);
}
