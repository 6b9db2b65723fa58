#pragma once

// Scenario files drive `simulate` and `diagnose`: a JSON object with the
// model, frequency grid, taper count K, replicate count M, seed and method
// list. Report serialization lives here too.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "speccoh/campaign.hpp"
#include "speccoh/io.hpp"
#include "speccoh/method.hpp"
#include "speccoh/models.hpp"
#include "speccoh/pcoh.hpp"
#include "speccoh/trace_est.hpp"

namespace speccoh {

struct Scenario {
  ModelSpec model;
  double start_hz = 0.55;
  double stop_hz = 4.05;
  double step_hz = 0.1;
  std::size_t k = 0;
  std::size_t m = 0;
  std::optional<std::uint64_t> seed;
  std::vector<Method> methods;
};

namespace detail {

template <typename T>
T require_key(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ScenarioError("scenario: missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError("scenario: bad value for '" + key + "': " + e.what());
  }
}

inline SpikeParams parse_spike(const nlohmann::json& j) {
  SpikeParams s;
  s.center_hz = require_key<double>(j, "center_hz");
  s.amp = require_key<double>(j, "amp");
  s.sigma_hz = require_key<double>(j, "sigma_hz");
  if (!(s.sigma_hz > 0.0)) throw ScenarioError("scenario: spike sigma_hz must be positive");
  return s;
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j) {
  Scenario sc;
  sc.model.p = detail::require_key<std::size_t>(j, "p");
  sc.k = detail::require_key<std::size_t>(j, "K");
  sc.m = detail::require_key<std::size_t>(j, "M");
  if (j.contains("seed")) sc.seed = detail::require_key<std::uint64_t>(j, "seed");

  const auto model = detail::require_key<nlohmann::json>(j, "model");
  const auto kind = detail::require_key<std::string>(model, "kind");
  const nlohmann::json params =
      model.contains("params") ? model.at("params") : nlohmann::json::object();
  if (kind == "identity") {
    sc.model.kind = ModelKind::Identity;
    sc.model.c = params.value("c", 1.0);
  } else if (kind == "dense") {
    sc.model.kind = ModelKind::Dense;
    sc.model.kappa_base = params.value("kappa_base", 0.3);
    sc.model.channel_spread_decades = params.value("channel_spread_decades", 0.0);
    if (params.contains("spikes"))
      for (const auto& s : params.at("spikes")) sc.model.spikes.push_back(detail::parse_spike(s));
  } else if (kind == "sparse") {
    sc.model.kind = ModelKind::Sparse;
    sc.model.kappa = params.value("kappa", 0.3);
    sc.model.channel_spread_decades = params.value("channel_spread_decades", 0.0);
  } else {
    throw ScenarioError("scenario: unknown model kind '" + kind + "'");
  }

  if (j.contains("grid")) {
    const auto grid = j.at("grid");
    sc.start_hz = detail::require_key<double>(grid, "start_hz");
    sc.stop_hz = detail::require_key<double>(grid, "stop_hz");
    sc.step_hz = detail::require_key<double>(grid, "step_hz");
  }

  for (const auto& name : detail::require_key<std::vector<std::string>>(j, "methods")) {
    const auto m = parse_method(name);
    if (!m) throw ScenarioError("scenario: unknown method '" + name + "'");
    sc.methods.push_back(*m);
  }
  if (sc.methods.empty()) throw ScenarioError("scenario: methods[] must be non-empty");
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError("scenario: JSON parse failure in " + path + ": " + e.what());
  }
  return parse_scenario(j);
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json model{{"kind", model_kind_name(sc.model.kind)}};
  nlohmann::json params = nlohmann::json::object();
  switch (sc.model.kind) {
    case ModelKind::Identity: params["c"] = sc.model.c; break;
    case ModelKind::Sparse:
      params["kappa"] = sc.model.kappa;
      params["channel_spread_decades"] = sc.model.channel_spread_decades;
      break;
    case ModelKind::Dense: {
      params["kappa_base"] = sc.model.kappa_base;
      params["channel_spread_decades"] = sc.model.channel_spread_decades;
      nlohmann::json spikes = nlohmann::json::array();
      for (const auto& s : sc.model.spikes)
        spikes.push_back({{"center_hz", s.center_hz}, {"amp", s.amp}, {"sigma_hz", s.sigma_hz}});
      params["spikes"] = spikes;
      break;
    }
  }
  model["params"] = params;

  nlohmann::json j{
      {"model", model},
      {"grid", {{"start_hz", sc.start_hz}, {"stop_hz", sc.stop_hz}, {"step_hz", sc.step_hz}}},
      {"p", sc.model.p},
      {"K", sc.k},
      {"M", sc.m},
  };
  if (sc.seed) j["seed"] = *sc.seed;
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : sc.methods) methods.push_back(method_name(m));
  j["methods"] = methods;
  return j;
}

// --- report serialization -------------------------------------------------

inline std::string prise_by_freq_csv(const PriseReport& report) {
  std::string out = "freq_hz,method,prise_pct\n";
  for (std::size_t l = 0; l < report.grid_hz.size(); ++l)
    for (const auto& mr : report.methods)
      out += format_double(report.grid_hz[l]) + "," + method_name(mr.method) + "," +
             format_double(mr.per_freq[l].prise_pct) + "\n";
  return out;
}

inline std::string prise_avg_csv(const PriseReport& report) {
  std::string out = "method,avg_prise_pct\n";
  for (const auto& mr : report.methods)
    out += std::string(method_name(mr.method)) + "," + format_double(mr.avg_prise_pct) + "\n";
  return out;
}

inline nlohmann::json report_to_json(const PriseReport& report, const Scenario& scenario) {
  nlohmann::json j;
  j["scenario"] = scenario_to_json(scenario);
  j["model_label"] = report.model_label;
  j["p"] = report.p;
  j["K"] = report.k;
  j["M"] = report.m;
  j["seed"] = report.seed;
  j["grid_hz"] = report.grid_hz;
  j["target_gamma2"] = report.target_gamma2;
  nlohmann::json methods = nlohmann::json::object();
  for (const auto& mr : report.methods) {
    nlohmann::json per_freq = nlohmann::json::array();
    for (std::size_t l = 0; l < mr.per_freq.size(); ++l) {
      const auto& s = mr.per_freq[l];
      nlohmann::json row{{"freq_hz", report.grid_hz[l]},
                         {"prise_pct", s.prise_pct},
                         {"mean_alpha", s.mean_alpha},
                         {"mean_beta", s.mean_beta}};
      if (s.has_eta_rho) {
        row["mean_eta"] = s.mean_eta;
        row["mean_rho"] = s.mean_rho;
      }
      if (s.is_precision) row["mean_beta_tr_shat"] = s.mean_beta_tr_shat;
      per_freq.push_back(row);
    }
    methods[method_name(mr.method)] = {{"avg_prise_pct", mr.avg_prise_pct},
                                       {"per_freq", per_freq}};
  }
  j["methods"] = methods;
  return j;
}

inline std::string moment_csv(const MomentReport& report) {
  std::string out = "identity,statistic,truth,mc_mean,se,status\n";
  for (const auto& r : report.rows) {
    out += r.id + "," + r.statistic + ",";
    if (r.skipped) {
      out += ",,,skipped: " + r.skip_reason;
    } else {
      out += format_double(r.truth) + "," + format_double(r.mc_mean) + "," + format_double(r.se) +
             "," + (r.pass ? "pass" : "fail");
    }
    out += "\n";
  }
  return out;
}

inline std::string bias_csv(const BiasReport& report) {
  std::string out = "freq_hz,functional,truth,expected_mean,mc_mean,se,status\n";
  for (const auto& r : report.rows)
    out += format_double(r.freq_hz) + "," + r.functional + "," + format_double(r.truth) + "," +
           format_double(r.expected_mean) + "," + format_double(r.mc_mean) + "," +
           format_double(r.se) + "," + (r.pass ? "pass" : "fail") + "\n";
  for (const auto& r : report.variance_rows)
    out += format_double(r.freq_hz) + ",tr_sinv2_two_term_variance," +
           format_double(r.var_two_term) + "," + format_double(r.var_one_term) + ",," +
           std::to_string(r.negative_two_term) + "," +
           (r.two_term_larger ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace speccoh
