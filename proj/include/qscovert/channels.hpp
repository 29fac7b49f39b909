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

#include <concepts>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qscovert/linalg.hpp"
#include "qscovert/montecarlo.hpp"
#include "qscovert/rng.hpp"

namespace qscovert {

struct SystemDims {
  int n_a = 2;
  int n_b = 2;
  int n_w = 2;

  void validate() const;
};

struct FixedFading {
  ComplexMatrix h;
};

struct RayleighFading {
  int rows = 2;
  int cols = 2;
};

/// sqrt(K/(K+1)) H_los + sqrt(1/(K+1)) H_nlos.
struct RicianFading {
  double k_factor = 10.0;
  ComplexMatrix h_los;
};

/// Entry modulus with Nakagami-m law (E|h|^2 = upsilon), uniform phase.
struct NakagamiFading {
  double m = 2.0;
  double upsilon = 1.0;
  int rows = 2;
  int cols = 2;
};

class FadingModel {
 public:
  using Kind = std::variant<FixedFading, RayleighFading, RicianFading, NakagamiFading>;

  static FadingModel fixed(ComplexMatrix h);
  static FadingModel rayleigh(int rows, int cols);
  static FadingModel rician(double k_factor, ComplexMatrix h_los);
  static FadingModel nakagami(double m, double upsilon, int rows, int cols);

  const Kind& kind() const { return kind_; }
  int rows() const;
  int cols() const;
  std::string name() const;
  bool is_fixed() const { return std::holds_alternative<FixedFading>(kind_); }

 private:
  explicit FadingModel(Kind kind);
  Kind kind_;
};

template <class G>
concept GaussianSource = requires(G& g) {
  { g.complex_normal() } -> std::convertible_to<Complex>;
};

ComplexMatrix sample_fading(const FadingModel& model, RandomStream& rng);

template <GaussianSource G>
ComplexMatrix sample_noise(Eigen::Index rows, Eigen::Index cols, G& rng) {
  ComplexMatrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = rng.complex_normal();
  }
  return z;
}

template <GaussianSource G>
ComplexMatrix transmit(const ComplexMatrix& x, const ComplexMatrix& h, G& rng) {
  require(x.cols() == h.rows(), ErrorKind::kDimensionMismatch, "transmit: cols(x) != rows(h)");
  ComplexMatrix y = x * h;
  y += sample_noise(y.rows(), y.cols(), rng);
  return y;
}

/// spectral_norm(h_w) <= sqrt(lambda0), boundary included.
bool in_uncertainty_set(const ComplexMatrix& h_w, double lambda0);

/// Spectral norms of `opts.trials` independent draws, in trial order.
std::vector<double> sample_spectral_norms(const FadingModel& model, const McOptions& opts);

/// (1 - tail)-quantile of the spectral norm over `opts.trials` draws.
double spectral_tail_threshold(const FadingModel& model, double tail, const McOptions& opts);

}  // namespace qscovert
