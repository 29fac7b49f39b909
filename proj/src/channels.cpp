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

#include "qscovert/channels.hpp"

#include <cmath>
#include <numbers>

namespace qscovert {

void SystemDims::validate() const {
  require(n_a >= 1 && n_b >= 1 && n_w >= 1, ErrorKind::kInvalidInput, "antenna counts must be >= 1");
  require(n_a <= n_b && n_a <= n_w, ErrorKind::kInvalidInput, "need N_a <= N_b and N_a <= N_w");
}

FadingModel::FadingModel(Kind kind) : kind_(std::move(kind)) {}

FadingModel FadingModel::fixed(ComplexMatrix h) {
  require_valid(h, "fixed channel");
  return FadingModel(FixedFading{std::move(h)});
}

FadingModel FadingModel::rayleigh(int rows, int cols) {
  require(rows >= 1 && cols >= 1, ErrorKind::kInvalidInput, "rayleigh dims must be >= 1");
  return FadingModel(RayleighFading{rows, cols});
}

FadingModel FadingModel::rician(double k_factor, ComplexMatrix h_los) {
  require(k_factor >= 0.0 && std::isfinite(k_factor), ErrorKind::kInvalidInput, "rician K must be >= 0");
  require_valid(h_los, "rician LOS matrix");
  return FadingModel(RicianFading{k_factor, std::move(h_los)});
}

FadingModel FadingModel::nakagami(double m, double upsilon, int rows, int cols) {
  require(m >= 0.5, ErrorKind::kInvalidInput, "nakagami m must be >= 0.5");
  require(upsilon > 0.0, ErrorKind::kInvalidInput, "nakagami upsilon must be > 0");
  require(rows >= 1 && cols >= 1, ErrorKind::kInvalidInput, "nakagami dims must be >= 1");
  return FadingModel(NakagamiFading{m, upsilon, rows, cols});
}

int FadingModel::rows() const {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FixedFading>) return static_cast<int>(k.h.rows());
        else if constexpr (std::is_same_v<T, RicianFading>) return static_cast<int>(k.h_los.rows());
        else return k.rows;
      },
      kind_);
}

int FadingModel::cols() const {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FixedFading>) return static_cast<int>(k.h.cols());
        else if constexpr (std::is_same_v<T, RicianFading>) return static_cast<int>(k.h_los.cols());
        else return k.cols;
      },
      kind_);
}

std::string FadingModel::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FixedFading>) return "fixed";
        else if constexpr (std::is_same_v<T, RayleighFading>) return "rayleigh";
        else if constexpr (std::is_same_v<T, RicianFading>) return "rician";
        else return "nakagami";
      },
      kind_);
}

ComplexMatrix sample_fading(const FadingModel& model, RandomStream& rng) {
  return std::visit(
      [&rng](const auto& k) -> ComplexMatrix {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FixedFading>) {
          return k.h;
        } else if constexpr (std::is_same_v<T, RayleighFading>) {
          return sample_noise(k.rows, k.cols, rng);
        } else if constexpr (std::is_same_v<T, RicianFading>) {
          const double los = std::sqrt(k.k_factor / (k.k_factor + 1.0));
          const double nlos = std::sqrt(1.0 / (k.k_factor + 1.0));
          ComplexMatrix h = sample_noise(k.h_los.rows(), k.h_los.cols(), rng);
          return los * k.h_los + nlos * h;
        } else {
          ComplexMatrix h(k.rows, k.cols);
          for (int i = 0; i < k.rows; ++i) {
            for (int j = 0; j < k.cols; ++j) {
              const double power = rng.gamma(k.m) * k.upsilon / k.m;
              const double phase = 2.0 * std::numbers::pi * rng.uniform();
              h(i, j) = std::polar(std::sqrt(power), phase);
            }
          }
          return h;
        }
      },
      model.kind());
}

bool in_uncertainty_set(const ComplexMatrix& h_w, double lambda0) {
  require(lambda0 > 0.0, ErrorKind::kInvalidInput, "lambda0 must be > 0");
  return spectral_norm(h_w) <= std::sqrt(lambda0);
}

std::vector<double> sample_spectral_norms(const FadingModel& model, const McOptions& opts) {
  return run_trials<double>(opts.trials, opts.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(opts.seed, Purpose::kFading, t));
    return spectral_norm(sample_fading(model, rng));
  });
}

double spectral_tail_threshold(const FadingModel& model, double tail, const McOptions& opts) {
  require(tail > 0.0 && tail < 1.0, ErrorKind::kInvalidInput, "tail must lie in (0, 1)");
  require(static_cast<double>(opts.trials) * tail >= 1.0 - 1e-9, ErrorKind::kInsufficientTrials,
          "trials * tail must be >= 1");
  auto norms = sample_spectral_norms(model, opts);
  return quantile(norms, 1.0 - tail);
}

}  // namespace qscovert
