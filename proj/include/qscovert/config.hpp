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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qscovert/bounds.hpp"
#include "qscovert/channels.hpp"
#include "qscovert/covertness.hpp"
#include "qscovert/linksim.hpp"

namespace qscovert {

using Json = nlohmann::json;

/// Matrix as an array of rows; each entry is a number or [re, im].
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);

/// `rows`/`cols` fill in dimensions that the JSON leaves out.
FadingModel model_from_json(const Json& j, std::optional<int> rows = std::nullopt,
                            std::optional<int> cols = std::nullopt);

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

struct ExperimentConfig {
  std::string command;
  Json body;  // effective config with overrides applied
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string format;
  std::string out;
};

/// Applies overrides, checks the schema, rejects unknown keys. Throws kConfig.
ExperimentConfig load_config(const std::string& command, const Json& raw, const RunOverrides& ov = {});
ExperimentConfig load_config_file(const std::string& command, const std::string& path,
                                  const RunOverrides& ov = {});

/// FNV-1a of the canonical dump of the config, excluding workers/out/format.
std::string config_hash(const ExperimentConfig& cfg);

struct Fig2Model {
  std::string label;
  FadingModel model;
};

struct Fig2Config {
  std::vector<Fig2Model> models;
  std::uint64_t trials = 1000000;
  double tail = 1e-6;
  std::size_t ecdf_points = 2000;
  std::size_t top_points = 100;
};

struct FirstOrderConfig {
  std::vector<std::int64_t> n;
  std::vector<int> n_a;
  std::vector<int> n_b;  // empty: same as n_a
  std::vector<double> lambda0;
  double epsilon = 0.01;
  double delta = 0.1;
  Json model;
  std::uint64_t trials = 100000;
  GainConvention gain = GainConvention::kSingularValue;
};

struct BoundsConfig {
  std::vector<std::int64_t> n;
  double epsilon = 0.01;
  double delta = 0.1;
  double lambda0 = 1.0;
  SystemDims dims;
  Json model;
  std::uint64_t trials = 1000000;
  std::uint64_t kappa_trials = 1000000;
  GainConvention gain = GainConvention::kSingularValue;
  AchTail ach_tail = AchTail::kClosedForm;
  std::optional<double> tau, rho, nu_sq, omega;

  CovertParams params_for(std::int64_t n) const;
};

struct SimulateConfig {
  std::int64_t n = 200;
  std::int64_t m = 8;
  double epsilon = 0.01;
  double delta = 0.1;
  double lambda0 = 1.0;
  SystemDims dims;
  Json model_b;
  Json model_w;
  Decoder::Kind decoder = Decoder::Kind::kAngle;
  std::optional<double> gamma;  // nullopt: derived from ach_gamma
  std::uint64_t trials = 2000;
  std::uint64_t warden_trials = 2000;
  std::uint64_t gamma_trials = 100000;
  bool reuse_codebook = false;
  std::optional<double> psi;
  std::optional<double> tau, rho, nu_sq, omega;
  LinalgTolerances tolerances;

  CovertParams params() const;
};

Fig2Config parse_fig2(const Json& body);
FirstOrderConfig parse_first_order(const Json& body);
BoundsConfig parse_bounds(const Json& body);
SimulateConfig parse_simulate(const Json& body);

}  // namespace qscovert
