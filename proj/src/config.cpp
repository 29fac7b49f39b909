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

#include "qscovert/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace qscovert {
namespace {

const std::set<std::string> kCommonKeys = {"command", "description", "seed", "workers", "out", "format"};
const char* const kTrialKeys[] = {"trials", "kappa_trials", "warden_trials", "gamma_trials"};

[[noreturn]] void config_fail(const std::string& what) { fail(ErrorKind::kConfig, what); }

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where,
                bool common = false) {
  if (!j.is_object()) config_fail(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (allowed.count(item.key()) == 0 && !(common && kCommonKeys.count(item.key()) != 0)) {
      config_fail(where + ": unknown key '" + item.key() + "'");
    }
  }
}

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) config_fail(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    config_fail(where + ": key '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key, where);
}

double number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) config_fail(where + ": missing key '" + key + "'");
  if (!j.at(key).is_number()) config_fail(where + ": key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::uint64_t count(const Json& j, const char* key, std::uint64_t fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned() && !(j.at(key).is_number_integer() && j.at(key).get<long long>() >= 0)) {
    config_fail(where + ": key '" + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::uint64_t>();
}

void positive(double x, const char* name) {
  if (!(x > 0.0)) config_fail(std::string(name) + " must be > 0");
}

void probability(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) config_fail(std::string(name) + " must lie in (0, 1)");
}

SystemDims dims_from_json(const Json& j) {
  check_keys(j, {"n_a", "n_b", "n_w"}, "dims");
  SystemDims d{get<int>(j, "n_a", "dims"), get<int>(j, "n_b", "dims"), get<int>(j, "n_w", "dims")};
  try {
    d.validate();
  } catch (const Error& e) {
    config_fail(e.what());
  }
  return d;
}

GainConvention gain_from(const Json& body, const std::string& where) {
  return parse_gain_convention(get_or<std::string>(body, "gain_convention", "singular_value", where));
}

template <class T>
std::vector<T> grid(const Json& body, const char* key, const std::string& where) {
  auto v = get<std::vector<T>>(body, key, where);
  if (v.empty()) config_fail(where + ": grid '" + key + "' must not be empty");
  return v;
}

void apply_slack_overrides(const Json& body, const std::string& where, std::optional<double>& tau,
                           std::optional<double>& rho, std::optional<double>& nu_sq,
                           std::optional<double>& omega) {
  tau = get_opt<double>(body, "tau", where);
  rho = get_opt<double>(body, "rho", where);
  nu_sq = get_opt<double>(body, "nu_sq", where);
  omega = get_opt<double>(body, "omega", where);
}

CovertParams make_params(std::int64_t n, double eps, double delta, double lambda0, SystemDims dims,
                         GainConvention gain, const std::optional<double>& tau,
                         const std::optional<double>& rho, const std::optional<double>& nu_sq,
                         const std::optional<double>& omega) {
  CovertParams p = CovertParams::with_defaults(n, eps, delta, lambda0, dims);
  p.gain = gain;
  if (tau) p.tau = *tau;
  if (rho) p.rho = *rho;
  if (nu_sq) p.nu_sq = *nu_sq;
  if (omega) p.omega = *omega;
  return p;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    config_fail("matrix must be a non-empty array of non-empty rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      config_fail("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        config_fail("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

FadingModel model_from_json(const Json& j, std::optional<int> rows, std::optional<int> cols) {
  if (!j.is_object()) config_fail("model must be a JSON object");
  const auto kind = get<std::string>(j, "kind", "model");
  const std::string where = "model(" + kind + ")";
  auto dim = [&](const char* key, std::optional<int> fallback) {
    if (j.contains(key)) return get<int>(j, key, where);
    if (!fallback) config_fail(where + ": missing key '" + key + "'");
    return *fallback;
  };
  try {
    if (kind == "fixed") {
      check_keys(j, {"kind", "h"}, where);
      if (!j.contains("h")) config_fail(where + ": missing key 'h'");
      return FadingModel::fixed(matrix_from_json(j.at("h")));
    }
    if (kind == "rayleigh") {
      check_keys(j, {"kind", "rows", "cols"}, where);
      return FadingModel::rayleigh(dim("rows", rows), dim("cols", cols));
    }
    if (kind == "rician") {
      check_keys(j, {"kind", "k_factor", "h_los", "rows", "cols"}, where);
      const double k = number(j, "k_factor", where);
      ComplexMatrix los;
      const Json& spec = j.contains("h_los") ? j.at("h_los") : Json("ones");
      if (spec.is_string()) {
        if (spec.get<std::string>() != "ones") config_fail(where + ": h_los must be \"ones\" or a matrix");
        los = ComplexMatrix::Ones(dim("rows", rows), dim("cols", cols));
      } else {
        los = matrix_from_json(spec);
      }
      return FadingModel::rician(k, los);
    }
    if (kind == "nakagami") {
      check_keys(j, {"kind", "m", "upsilon", "rows", "cols"}, where);
      return FadingModel::nakagami(number(j, "m", where), number(j, "upsilon", where),
                                   dim("rows", rows), dim("cols", cols));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    config_fail(where + ": " + e.what());
  }
  config_fail("unknown model kind '" + kind + "'");
}

Fig2Config parse_fig2(const Json& body) {
  const std::string where = "fig2";
  check_keys(body, {"trials", "tail", "ecdf_points", "top_points", "models"}, where, true);
  Fig2Config c;
  c.trials = count(body, "trials", c.trials, where);
  c.tail = get_or<double>(body, "tail", c.tail, where);
  c.ecdf_points = count(body, "ecdf_points", c.ecdf_points, where);
  c.top_points = count(body, "top_points", c.top_points, where);
  probability(c.tail, "tail");
  if (static_cast<double>(c.trials) * c.tail < 1.0 - 1e-9) config_fail("fig2: trials * tail must be >= 1");
  if (!body.contains("models") || !body.at("models").is_array() || body.at("models").empty()) {
    config_fail("fig2: 'models' must be a non-empty array");
  }
  for (const auto& entry : body.at("models")) {
    check_keys(entry, {"label", "model"}, "fig2.models[]");
    if (!entry.contains("model")) config_fail("fig2.models[]: missing key 'model'");
    c.models.push_back({get<std::string>(entry, "label", "fig2.models[]"), model_from_json(entry.at("model"))});
  }
  return c;
}

FirstOrderConfig parse_first_order(const Json& body) {
  const std::string where = "rate-first-order";
  check_keys(body, {"n", "n_a", "n_b", "lambda0", "epsilon", "delta", "model", "trials", "gain_convention"},
             where, true);
  FirstOrderConfig c;
  c.n = grid<std::int64_t>(body, "n", where);
  c.n_a = grid<int>(body, "n_a", where);
  if (body.contains("n_b")) {
    c.n_b = grid<int>(body, "n_b", where);
    if (c.n_b.size() != c.n_a.size()) config_fail(where + ": n_b must match n_a in length");
  }
  c.lambda0 = grid<double>(body, "lambda0", where);
  c.epsilon = number(body, "epsilon", where);
  c.delta = number(body, "delta", where);
  c.trials = count(body, "trials", c.trials, where);
  c.gain = gain_from(body, where);
  probability(c.epsilon, "epsilon");
  positive(c.delta, "delta");
  for (auto n : c.n) {
    if (n < 1) config_fail(where + ": n must be >= 1");
  }
  for (double l : c.lambda0) positive(l, "lambda0");
  for (std::size_t i = 0; i < c.n_a.size(); ++i) {
    const int nb = c.n_b.empty() ? c.n_a[i] : c.n_b[i];
    if (c.n_a[i] < 1 || nb < c.n_a[i]) config_fail(where + ": need 1 <= N_a <= N_b");
  }
  if (static_cast<double>(c.trials) * c.epsilon < 10.0 - 1e-9) {
    config_fail(where + ": trials * epsilon must be >= 10");
  }
  if (!body.contains("model")) config_fail(where + ": missing key 'model'");
  c.model = body.at("model");
  model_from_json(c.model, c.n_a.front(), c.n_b.empty() ? c.n_a.front() : c.n_b.front());
  return c;
}

CovertParams BoundsConfig::params_for(std::int64_t n_value) const {
  return make_params(n_value, epsilon, delta, lambda0, dims, gain, tau, rho, nu_sq, omega);
}

BoundsConfig parse_bounds(const Json& body) {
  const std::string where = "bounds";
  check_keys(body,
             {"n", "epsilon", "delta", "lambda0", "dims", "model", "trials", "kappa_trials",
              "gain_convention", "ach_tail", "tau", "rho", "nu_sq", "omega"},
             where, true);
  BoundsConfig c;
  c.n = grid<std::int64_t>(body, "n", where);
  c.epsilon = number(body, "epsilon", where);
  c.delta = number(body, "delta", where);
  c.lambda0 = get_or<double>(body, "lambda0", 1.0, where);
  if (!body.contains("dims")) config_fail(where + ": missing key 'dims'");
  c.dims = dims_from_json(body.at("dims"));
  c.trials = count(body, "trials", c.trials, where);
  c.kappa_trials = count(body, "kappa_trials", c.kappa_trials, where);
  c.gain = gain_from(body, where);
  const auto tail = get_or<std::string>(body, "ach_tail", "closed_form", where);
  if (tail == "closed_form") c.ach_tail = AchTail::kClosedForm;
  else if (tail == "direct") c.ach_tail = AchTail::kDirect;
  else config_fail(where + ": ach_tail must be \"closed_form\" or \"direct\"");
  apply_slack_overrides(body, where, c.tau, c.rho, c.nu_sq, c.omega);
  if (!body.contains("model")) config_fail(where + ": missing key 'model'");
  c.model = body.at("model");
  model_from_json(c.model, c.dims.n_a, c.dims.n_b);
  for (auto n : c.n) {
    if (n <= c.dims.n_a + c.dims.n_b) config_fail(where + ": every n must exceed N_a + N_b");
    try {
      c.params_for(n).validate();
    } catch (const Error& e) {
      config_fail(where + ": " + e.what());
    }
  }
  if (static_cast<double>(c.kappa_trials) * c.epsilon < 10.0 - 1e-9 ||
      static_cast<double>(c.trials) * c.epsilon < 10.0 - 1e-9) {
    config_fail(where + ": trials * epsilon must be >= 10");
  }
  return c;
}

CovertParams SimulateConfig::params() const {
  return make_params(n, epsilon, delta, lambda0, dims, GainConvention::kEigenvalue, tau, rho, nu_sq, omega);
}

SimulateConfig parse_simulate(const Json& body) {
  const std::string where = "simulate";
  check_keys(body,
             {"n", "M", "epsilon", "delta", "lambda0", "dims", "model_b", "model_w", "decoder", "trials",
              "warden_trials", "gamma_trials", "reuse_codebook", "psi", "tau", "rho", "nu_sq", "omega",
              "tolerances"},
             where, true);
  SimulateConfig c;
  c.n = get<std::int64_t>(body, "n", where);
  c.m = get<std::int64_t>(body, "M", where);
  c.epsilon = number(body, "epsilon", where);
  c.delta = number(body, "delta", where);
  c.lambda0 = get_or<double>(body, "lambda0", 1.0, where);
  if (!body.contains("dims")) config_fail(where + ": missing key 'dims'");
  c.dims = dims_from_json(body.at("dims"));
  c.trials = count(body, "trials", c.trials, where);
  c.warden_trials = count(body, "warden_trials", c.warden_trials, where);
  c.gamma_trials = count(body, "gamma_trials", c.gamma_trials, where);
  c.reuse_codebook = get_or<bool>(body, "reuse_codebook", false, where);
  c.psi = get_opt<double>(body, "psi", where);
  apply_slack_overrides(body, where, c.tau, c.rho, c.nu_sq, c.omega);
  if (c.m < 1) config_fail(where + ": M must be >= 1");
  if (c.n <= c.dims.n_b) config_fail(where + ": n must exceed N_b");
  if (c.trials < 1) config_fail(where + ": trials must be >= 1");
  if (c.warden_trials < 1000) config_fail(where + ": warden_trials must be >= 1000");
  if (c.psi && *c.psi < 0.0) config_fail(where + ": psi must be >= 0");
  if (body.contains("decoder")) {
    const Json& d = body.at("decoder");
    check_keys(d, {"kind", "gamma"}, "simulate.decoder");
    const auto kind = get<std::string>(d, "kind", "simulate.decoder");
    if (kind == "ml") {
      c.decoder = Decoder::Kind::kMl;
    } else if (kind == "angle") {
      c.decoder = Decoder::Kind::kAngle;
      if (d.contains("gamma") && !(d.at("gamma").is_string() && d.at("gamma").get<std::string>() == "auto")) {
        c.gamma = number(d, "gamma", "simulate.decoder");
        if (*c.gamma < 0.0 || *c.gamma > 1.0) config_fail("simulate.decoder: gamma must lie in [0, 1]");
      }
    } else {
      config_fail("simulate.decoder: kind must be \"angle\" or \"ml\"");
    }
  }
  if (c.decoder == Decoder::Kind::kAngle && c.psi && *c.psi == 0.0) {
    config_fail(where + ": angle decoding needs psi > 0; use the ml decoder for psi = 0");
  }
  if (body.contains("tolerances")) {
    const Json& t = body.at("tolerances");
    check_keys(t, {"rank_rel", "hermitian", "psd_negative", "zero_angle"}, "simulate.tolerances");
    c.tolerances.rank_rel = get_or<double>(t, "rank_rel", c.tolerances.rank_rel, where);
    c.tolerances.hermitian = get_or<double>(t, "hermitian", c.tolerances.hermitian, where);
    c.tolerances.psd_negative = get_or<double>(t, "psd_negative", c.tolerances.psd_negative, where);
    c.tolerances.zero_angle = get_or<double>(t, "zero_angle", c.tolerances.zero_angle, where);
  }
  for (const char* key : {"model_b", "model_w"}) {
    if (!body.contains(key)) config_fail(where + ": missing key '" + key + "'");
  }
  c.model_b = body.at("model_b");
  c.model_w = body.at("model_w");
  model_from_json(c.model_b, c.dims.n_a, c.dims.n_b);
  model_from_json(c.model_w, c.dims.n_a, c.dims.n_w);
  try {
    c.params().validate();
  } catch (const Error& e) {
    config_fail(where + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& command, const Json& raw, const RunOverrides& ov) {
  if (!raw.is_object()) config_fail("config must be a JSON object");
  if (raw.contains("command") && raw.at("command") != command) {
    config_fail("config is for command '" + raw.at("command").dump() + "', not '" + command + "'");
  }
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.body = raw;
  cfg.body["command"] = command;
  if (ov.seed) cfg.body["seed"] = *ov.seed;
  if (ov.workers) cfg.body["workers"] = *ov.workers;
  if (ov.format) cfg.body["format"] = *ov.format;
  if (ov.out) cfg.body["out"] = *ov.out;
  if (ov.trials) {
    for (const char* key : kTrialKeys) {
      if (cfg.body.contains(key) || std::string(key) == "trials") cfg.body[key] = *ov.trials;
    }
  }
  cfg.seed = count(cfg.body, "seed", 1, command);
  cfg.workers = static_cast<unsigned>(count(cfg.body, "workers", 1, command));
  if (cfg.workers < 1) config_fail("workers must be >= 1");
  cfg.format = get_or<std::string>(cfg.body, "format", command == "simulate" ? "json" : "csv", command);
  if (cfg.format != "csv" && cfg.format != "json") config_fail("format must be csv or json");
  cfg.out = get_or<std::string>(cfg.body, "out", "", command);
  if (command == "fig2") parse_fig2(cfg.body);
  else if (command == "rate-first-order") parse_first_order(cfg.body);
  else if (command == "bounds") parse_bounds(cfg.body);
  else if (command == "simulate") parse_simulate(cfg.body);
  else config_fail("unknown command '" + command + "'");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& command, const std::string& path,
                                  const RunOverrides& ov) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config file '" + path + "'");
  Json raw;
  try {
    raw = Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_fail("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return load_config(command, raw, ov);
}

std::string config_hash(const ExperimentConfig& cfg) {
  Json canon = cfg.body;
  canon.erase("workers");
  canon.erase("out");
  canon.erase("format");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon.dump())));
  return buf;
}

}  // namespace qscovert
