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
#include <vector>

#include "qscovert/channels.hpp"
#include "qscovert/covertness.hpp"
#include "qscovert/montecarlo.hpp"

namespace qscovert {

struct Codebook {
  std::vector<ComplexMatrix> codewords;
  std::vector<ComplexMatrix> bases;  // orthonormal bases of the codeword spans
  ShellSpec shell;
  std::int64_t m = 0;
};

/// Wraps explicit codewords; computes their orthonormal bases.
Codebook make_codebook(std::vector<ComplexMatrix> codewords, const ShellSpec& shell,
                       const LinalgTolerances& tol = {});

/// M i.i.d. truncated-Gaussian codewords at psi = power_ach(p).
Codebook build_codebook(const CovertParams& p, std::int64_t m, RandomStream& rng);

/// Smallest w with sin^2(span X(w), span y) <= gamma; nullopt is an erasure.
std::optional<std::size_t> angle_decode(const Codebook& cb, const ComplexMatrix& y, double gamma,
                                        const LinalgTolerances& tol = {});

/// argmin_w ||y - X(w) h||_F, ties to the smallest index.
std::size_t ml_decode(const Codebook& cb, const ComplexMatrix& y, const ComplexMatrix& h);

/// Sum over rows of log CN(0, Sigma) - log CN(0, I), Sigma = rho psi h_w^H h_w + I.
double warden_llr(const ComplexMatrix& y_w, const ComplexMatrix& h_w, double psi, double rho);

/// Draws h_w until it lies in the uncertainty set; adds rejected draws to `resamples`.
ComplexMatrix sample_warden_channel(const FadingModel& model_w, double lambda0, RandomStream& rng,
                                    std::uint64_t& resamples);

struct ErrorSum {
  double sum = 1.0;
  double alpha = 1.0;  // false alarm at the optimal threshold
  double beta = 0.0;   // missed detection at the optimal threshold
};

/// Minimum over thresholds of false-alarm plus missed-detection rates.
ErrorSum min_error_sum(std::vector<double> llr_noise, std::vector<double> llr_signal);

struct DetectionReport {
  BoundEstimate error_sum;
  std::uint64_t resamples = 0;
  double psi = 0.0;
};

/// Warden alpha + beta at psi (default power_ach(p)) with truncated-Gaussian input.
DetectionReport detection_error_sum(const CovertParams& p, const FadingModel& model_w,
                                    const McOptions& mc, std::optional<double> psi = std::nullopt);

struct Decoder {
  enum class Kind { kAngle, kMl };
  Kind kind = Kind::kAngle;
  double gamma = 0.0;

  static Decoder angle(double gamma) { return {Kind::kAngle, gamma}; }
  static Decoder ml() { return {Kind::kMl, 0.0}; }
};

struct TrialReport {
  std::optional<std::size_t> decoded;
  std::size_t sent = 0;
  bool correct = false;
  double warden_llr = 0.0;
  double sin_sq_true = 0.0;
};

struct LinkOptions {
  bool reuse_codebook = false;
  std::optional<double> psi;  // overrides power_ach(p)
  LinalgTolerances tolerances;
};

struct LinkReport {
  BoundEstimate error_rate;
  std::uint64_t erasures = 0;
  std::uint64_t resamples = 0;
  double psi = 0.0;
  std::vector<TrialReport> trials;
};

LinkReport run_link_trials(const CovertParams& p, const FadingModel& model_b,
                           const FadingModel& model_w, std::int64_t m, const Decoder& decoder,
                           const McOptions& mc, const LinkOptions& options = {});

}  // namespace qscovert
