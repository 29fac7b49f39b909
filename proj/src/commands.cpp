// Copyright 2026 The qscovert Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qscovert/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#ifndef QSCOVERT_BUILD_ID
#define QSCOVERT_BUILD_ID "unknown"
#endif

namespace qscovert {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

Json metadata(const ExperimentConfig& cfg) {
  return {{"tool", "qscovert"},  {"version", version()},          {"build", build_id()},
          {"command", cfg.command}, {"seed", cfg.seed},           {"config_hash", config_hash(cfg)}};
}

std::string render(const ExperimentConfig& cfg, const Table& t, const Json& extra_meta) {
  Json meta = metadata(cfg);
  meta.update(extra_meta);
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
      rows.push_back(obj);
    }
    return Json{{"meta", meta}, {"rows", rows}}.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# qscovert " << version() << "\n";
  for (const auto& item : meta.items()) {
    if (item.key() == "tool" || item.key() == "version") continue;
    os << "# " << item.key() << "=" << (item.value().is_string() ? item.value().get<std::string>()
                                                                : item.value().dump())
       << "\n";
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "," : "");
      if (r[i].is_string()) os << r[i].get<std::string>();
      else if (r[i].is_number_integer()) os << r[i].dump();
      else os << fmt(r[i].get<double>());
    }
    os << "\n";
  }
  return os.str();
}

McOptions mc(const ExperimentConfig& cfg, std::uint64_t trials) { return {cfg.seed, trials, cfg.workers}; }

}  // namespace

const char* version() { return "0.1.0"; }

const char* build_id() { return QSCOVERT_BUILD_ID; }

std::string cmd_fig2(const ExperimentConfig& cfg) {
  const Fig2Config c = parse_fig2(cfg.body);
  Table t{{"model", "spectral_norm", "ecdf", "row_type"}, {}};
  Json thresholds = Json::object();
  for (const auto& entry : c.models) {
    auto norms = sample_spectral_norms(entry.model, mc(cfg, c.trials));
    std::sort(norms.begin(), norms.end());
    const std::size_t n = norms.size();
    std::set<std::size_t> ranks;
    for (std::size_t i = 1; i <= c.ecdf_points; ++i) {
      ranks.insert(std::max<std::size_t>(1, (i * n + c.ecdf_points - 1) / c.ecdf_points));
    }
    for (std::size_t k = n > c.top_points ? n - c.top_points + 1 : 1; k <= n; ++k) ranks.insert(k);
    for (std::size_t k : ranks) {
      t.rows.push_back({entry.label, norms[k - 1], static_cast<double>(k) / static_cast<double>(n), "ecdf"});
    }
    const double level = quantile_sorted(norms, 1.0 - c.tail);
    t.rows.push_back({entry.label, level, 1.0 - c.tail, "tail_threshold"});
    thresholds[entry.label] = level;
  }
  return render(cfg, t, {{"trials", c.trials}, {"tail", c.tail}, {"thresholds", thresholds}});
}

std::string cmd_rate_first_order(const ExperimentConfig& cfg) {
  const FirstOrderConfig c = parse_first_order(cfg.body);
  Table t{{"n", "N_a", "lambda0", "kappa_eps", "R1", "sqrt_n_R1", "ci"}, {}};
  for (std::size_t i = 0; i < c.n_a.size(); ++i) {
    const int na = c.n_a[i];
    const int nb = c.n_b.empty() ? na : c.n_b[i];
    const FadingModel model = model_from_json(c.model, na, nb);
    for (double lambda0 : c.lambda0) {
      const BoundEstimate kappa = kappa_epsilon(model, lambda0, c.epsilon, mc(cfg, c.trials), c.gain);
      for (std::int64_t n : c.n) {
        const BoundPoint r1 = first_order_rate(n, c.epsilon, c.delta, kappa);
        t.rows.push_back({n, na, lambda0, kappa.value, r1.rate, r1.sqrt_n_rate, r1.estimate.ci_half_width});
      }
    }
  }
  return render(cfg, t,
                {{"trials", c.trials}, {"epsilon", c.epsilon}, {"delta", c.delta},
                 {"gain_convention", to_string(c.gain)}});
}

std::string cmd_bounds(const ExperimentConfig& cfg) {
  const BoundsConfig c = parse_bounds(cfg.body);
  const FadingModel model = model_from_json(c.model, c.dims.n_a, c.dims.n_b);
  const BoundEstimate kappa = kappa_epsilon(model, c.lambda0, c.epsilon, mc(cfg, c.kappa_trials), c.gain);
  Table t{{"n", "ach_rate", "con_rate", "R1", "sqrt_n_ach", "sqrt_n_con", "sqrt_n_R1", "ci_ach", "ci_con",
           "ach_raw", "con_raw"}, {}};
  for (std::int64_t n : c.n) {
    const CovertParams p = c.params_for(n);
    const BoundPoint ach = ach_rate_bound(p, model, mc(cfg, c.trials), c.ach_tail);
    const BoundPoint con = con_rate_bound(p, model, mc(cfg, c.trials));
    const BoundPoint r1 = first_order_rate(n, c.epsilon, c.delta, kappa);
    t.rows.push_back({n, ach.rate, con.rate, r1.rate, ach.sqrt_n_rate, con.sqrt_n_rate, r1.sqrt_n_rate,
                      ach.estimate.ci_half_width, con.estimate.ci_half_width, ach.estimate.value,
                      con.estimate.value});
  }
  return render(cfg, t,
                {{"trials", c.trials}, {"kappa_trials", c.kappa_trials}, {"epsilon", c.epsilon},
                 {"delta", c.delta}, {"gain_convention", to_string(c.gain)}});
}

std::string cmd_simulate(const ExperimentConfig& cfg) {
  const SimulateConfig c = parse_simulate(cfg.body);
  const CovertParams p = c.params();
  const FadingModel model_b = model_from_json(c.model_b, c.dims.n_a, c.dims.n_b);
  const FadingModel model_w = model_from_json(c.model_w, c.dims.n_a, c.dims.n_w);
  const double psi = c.psi.value_or(power_ach(p));

  Decoder decoder = Decoder::ml();
  if (c.decoder == Decoder::Kind::kAngle) {
    decoder = Decoder::angle(c.gamma ? *c.gamma : ach_gamma(p, model_b, mc(cfg, c.gamma_trials)).value);
  }
  LinkOptions opts;
  opts.reuse_codebook = c.reuse_codebook;
  opts.psi = psi;
  opts.tolerances = c.tolerances;
  const LinkReport link = run_link_trials(p, model_b, model_w, c.m, decoder, mc(cfg, c.trials), opts);
  const DetectionReport warden = detection_error_sum(p, model_w, mc(cfg, c.warden_trials), psi);

  MeanAccumulator sin_sq, llr;
  for (const auto& r : link.trials) {
    sin_sq.add(r.sin_sq_true);
    llr.add(r.warden_llr);
  }
  const double kl_worst = kl_output_vs_noise(
      p.rho * psi * p.lambda0 * ComplexMatrix::Identity(p.dims.n_a, p.dims.n_a), p.n);

  Json report = metadata(cfg);
  report["n"] = c.n;
  report["M"] = c.m;
  report["psi"] = psi;
  report["rate_nats"] = std::log(static_cast<double>(c.m)) / static_cast<double>(c.n);
  report["ach_rate_raw"] = ach_rate_bound(p, model_b, mc(cfg, c.gamma_trials)).estimate.value;
  report["decoder"] = c.decoder == Decoder::Kind::kMl ? Json{{"kind", "ml"}}
                                                      : Json{{"kind", "angle"}, {"gamma", decoder.gamma}};
  report["error_rate"] = {{"value", link.error_rate.value},
                          {"ci_half_width", link.error_rate.ci_half_width},
                          {"trials", link.error_rate.trials},
                          {"erasures", link.erasures}};
  report["link_warden_resamples"] = link.resamples;
  report["mean_sin_sq_true"] = sin_sq.mean();
  report["mean_warden_llr"] = llr.mean();
  report["warden"] = {{"alpha_plus_beta", warden.error_sum.value},
                      {"ci_half_width", warden.error_sum.ci_half_width},
                      {"trials", warden.error_sum.trials},
                      {"pinsker_floor", pinsker_floor(c.delta)},
                      {"kl_worst_case", kl_worst},
                      {"resamples", warden.resamples}};
  if (cfg.format == "json") return report.dump(2) + "\n";
  std::ostringstream os;
  os << "# qscovert " << version() << "\n";
  os << "key,value\n";
  const Json flat = report.flatten();
  for (const auto& item : flat.items()) {
    std::string key = item.key().substr(1);
    std::replace(key.begin(), key.end(), '/', '.');
    os << key << ","
       << (item.value().is_string() ? item.value().get<std::string>()
           : item.value().is_number_float() ? fmt(item.value().get<double>())
                                           : item.value().dump())
       << "\n";
  }
  return os.str();
}

std::string run_command(const ExperimentConfig& cfg) {
  if (cfg.command == "fig2") return cmd_fig2(cfg);
  if (cfg.command == "rate-first-order") return cmd_rate_first_order(cfg);
  if (cfg.command == "bounds") return cmd_bounds(cfg);
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  fail(ErrorKind::kConfig, "unknown command '" + cfg.command + "'");
}

}  // namespace qscovert
