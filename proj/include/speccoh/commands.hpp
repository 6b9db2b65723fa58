#pragma once

// Implementations of the CLI commands, kept out of main() so they can be
// driven directly from tests.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "speccoh/campaign.hpp"
#include "speccoh/errors.hpp"
#include "speccoh/io.hpp"
#include "speccoh/method.hpp"
#include "speccoh/models.hpp"
#include "speccoh/multitaper.hpp"
#include "speccoh/pcoh.hpp"
#include "speccoh/scenario.hpp"
#include "speccoh/shrink_precision.hpp"
#include "speccoh/shrink_spectral.hpp"
#include "speccoh/trace_est.hpp"

namespace speccoh {

struct EstimateOptions {
  std::string input_csv;
  double dt = 0.0;
  std::size_t k = 0;
  std::string method = "raw";
  double fstart = 0.55;
  double fstop = 4.05;
  double fstep = 0.1;
  std::string out_dir = ".";
};

struct SimulateOptions {
  std::string scenario_path;
  std::optional<std::uint64_t> seed_override;
  std::string out_dir = ".";
  std::size_t threads = 0;
};

using DiagnoseOptions = SimulateOptions;

namespace detail {

inline TimeSeries read_series_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "t")
    throw IoError(path + ": header must be t,ch1,...,chp");
  const std::size_t p = header.size() - 1;

  std::vector<std::vector<double>> columns(p);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != p + 1)
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(p + 1) + " fields");
    for (std::size_t c = 0; c < p; ++c) {
      try {
        columns[c].push_back(std::stod(fields[c + 1]));
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line_no) + ": bad numeric field");
      }
    }
  }
  if (columns[0].empty()) throw IoError(path + ": no data rows");

  TimeSeries ts = make_series(p, columns[0].size());
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t t = 0; t < columns[c].size(); ++t) ts.x(c, t) = columns[c][t];
  return ts;
}

// Shrinkage with estimated traces, dispatched on the CLI method name.
inline ShrinkageSolution solve_estimated(const std::string& method, const TraceSet& traces,
                                         std::size_t p, std::size_t k) {
  if (method == "hs") return hs_oracle(traces, p, k);
  if (method == "qla") return qla_oracle(traces, p, k);
  if (method == "qlb") return qlb_oracle(traces, p, k);
  if (method == "hsp") return hsp_oracle(traces, p, k);
  if (method == "qlp") return qlp_oracle(traces, p, k);
  throw ScenarioError("--method: unknown method '" + method + "'");
}

inline void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("--out: cannot create directory " + dir);
}

}  // namespace detail

// Estimate partial coherence from a multichannel CSV. Real data never has
// oracle traces, so every non-raw method runs with estimated traces.
inline void run_estimate(const EstimateOptions& opt, std::ostream& warn = std::cerr) {
  if (!(opt.dt > 0.0)) throw ScenarioError("--dt: must be positive");
  if (opt.k == 0) throw ScenarioError("--k: must be positive");
  if (opt.method != "raw" && opt.method != "hs" && opt.method != "qla" &&
      opt.method != "qlb" && opt.method != "hsp" && opt.method != "qlp")
    throw ScenarioError("--method: unknown method '" + opt.method + "'");

  const TimeSeries series = detail::read_series_csv(opt.input_csv);
  const std::size_t p = series.channels;
  const std::size_t n = series.samples;
  if (opt.k > n) throw BadCount("--k: taper count exceeds series length");

  const TaperSet tapers = sine_tapers(n, opt.k);
  const double b = bandwidth(opt.k, n, opt.dt);
  const double nyquist = 1.0 / (2.0 * opt.dt);
  const std::vector<double> grid = make_grid(opt.fstart, opt.fstop, opt.fstep);

  std::vector<std::string> warnings;
  for (double f : grid) {
    if (!(std::abs(f) > b / 2.0 && std::abs(f) < nyquist - b / 2.0)) {
      std::ostringstream msg;
      msg << "frequency " << format_double(f)
          << " Hz outside the Gaussian-approximation band (B/2, Nyquist-B/2) = ("
          << format_double(b / 2.0) << ", " << format_double(nyquist - b / 2.0) << ")";
      warnings.push_back(msg.str());
      warn << "warning: " << msg.str() << "\n";
    }
  }

  std::string csv = "freq_hz,j,k,pcoh\n";
  nlohmann::json jfreq = nlohmann::json::array();
  for (double f : grid) {
    const HermitianMatrix s_hat = spectral_matrix(eigencoefficients(series, tapers, f, opt.dt));
    PartialCoherenceMatrix pcoh;
    nlohmann::json sol_json;
    if (opt.method == "raw") {
      pcoh = partial_coherence(invert(s_hat));
    } else {
      const TraceSet traces = estimate_traces(s_hat, opt.k);
      const ShrinkageSolution sol = detail::solve_estimated(opt.method, traces, p, opt.k);
      if (opt.method == "hsp" || opt.method == "qlp") {
        pcoh = partial_coherence(apply_precision_affine(s_hat, sol));
      } else {
        pcoh = partial_coherence(invert(apply_affine(s_hat, sol)));
      }
      sol_json["alpha"] = sol.alpha;
      sol_json["beta"] = sol.beta;
      if (sol.eta) sol_json["eta"] = *sol.eta;
      if (sol.rho) sol_json["rho"] = *sol.rho;
      sol_json["clamped"] = sol.clamped;
    }

    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < p; ++j) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t kk = 0; kk < p; ++kk) row.push_back(pcoh(j, kk));
      rows.push_back(row);
    }
    nlohmann::json entry{{"freq_hz", f}, {"gamma2", rows}};
    if (!sol_json.is_null()) entry["solution"] = sol_json;
    jfreq.push_back(entry);

    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t kk = j + 1; kk < p; ++kk)
        csv += format_double(f) + "," + std::to_string(j + 1) + "," + std::to_string(kk + 1) +
               "," + format_double(pcoh(j, kk)) + "\n";
  }

  nlohmann::json out{{"p", p},
                     {"n_samples", n},
                     {"dt", opt.dt},
                     {"K", opt.k},
                     {"method", opt.method},
                     {"bandwidth_hz", b},
                     {"nyquist_hz", nyquist},
                     {"valid_band_hz", {b / 2.0, nyquist - b / 2.0}},
                     {"warnings", warnings},
                     {"pcoh", jfreq}};

  detail::ensure_out_dir(opt.out_dir);
  write_text_file(opt.out_dir + "/pcoh.csv", csv);
  write_text_file(opt.out_dir + "/pcoh.json", out.dump(2) + "\n");
}

namespace detail {

inline Scenario load_scenario_with_seed(const std::string& path,
                                        std::optional<std::uint64_t> seed_override) {
  Scenario sc = load_scenario(path);
  if (seed_override) sc.seed = seed_override;
  if (!sc.seed)
    throw ScenarioError("--seed: required (not present in scenario file either)");
  return sc;
}

}  // namespace detail

inline void run_simulate(const SimulateOptions& opt) {
  const Scenario sc = detail::load_scenario_with_seed(opt.scenario_path, opt.seed_override);

  McConfig cfg{sc.k, sc.m, *sc.seed, sc.methods};
  std::vector<double> grid;
  try {
    grid = make_grid(sc.start_hz, sc.stop_hz, sc.step_hz);
    validate_config(cfg, sc.model.p);
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }

  const SpectralModel model = make_model(sc.model, grid);  // PD failure -> exit 4
  const PriseReport report = run_campaign(model, cfg, opt.threads);

  detail::ensure_out_dir(opt.out_dir);
  write_text_file(opt.out_dir + "/prise_by_freq.csv", prise_by_freq_csv(report));
  write_text_file(opt.out_dir + "/prise_avg.csv", prise_avg_csv(report));
  write_text_file(opt.out_dir + "/report.json", report_to_json(report, sc).dump(2) + "\n");
}

inline void run_diagnose(const DiagnoseOptions& opt) {
  const Scenario sc = detail::load_scenario_with_seed(opt.scenario_path, opt.seed_override);
  std::vector<double> grid;
  try {
    grid = make_grid(sc.start_hz, sc.stop_hz, sc.step_hz);
  } catch (const Error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  if (sc.k < sc.model.p) throw ScenarioError("scenario: diagnose needs K >= p");

  const SpectralModel model = make_model(sc.model, grid);

  std::string moments = "freq_hz,identity,statistic,truth,mc_mean,se,status\n";
  for (std::size_t l = 0; l < model.grid_hz.size(); ++l) {
    const MomentReport mr = moment_check(model.s0(l), sc.k, sc.m, *sc.seed);
    const std::string prefix = format_double(model.grid_hz[l]) + ",";
    std::istringstream rows(moment_csv(mr));
    std::string line;
    std::getline(rows, line);  // drop inner header
    while (std::getline(rows, line))
      if (!line.empty()) moments += prefix + line + "\n";
  }

  detail::ensure_out_dir(opt.out_dir);
  write_text_file(opt.out_dir + "/moments.csv", moments);

  // Bias study needs K > p+1; report the skip instead of failing.
  if (sc.k > sc.model.p + 1 && sc.m >= 100) {
    const BiasReport br = bias_check(model, sc.k, sc.m, *sc.seed);
    write_text_file(opt.out_dir + "/trace_bias.csv", bias_csv(br));
  } else {
    write_text_file(opt.out_dir + "/trace_bias.csv",
                    "freq_hz,functional,truth,expected_mean,mc_mean,se,status\n"
                    ",,,,,,skipped: needs K > p+1 and M >= 100\n");
  }
}

}  // namespace speccoh
