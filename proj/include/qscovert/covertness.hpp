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
#include <string>

#include "qscovert/channels.hpp"
#include "qscovert/linalg.hpp"
#include "qscovert/rng.hpp"

namespace qscovert {

/// How the per-antenna gains Lambda_{b,j} are read off H_b.
///   kSingularValue: Lambda_j = sigma_j(H_b)
///   kEigenvalue:    Lambda_j = sigma_j(H_b)^2, the eigenvalues of H_b^H H_b
enum class GainConvention { kSingularValue, kEigenvalue };

GainConvention parse_gain_convention(const std::string& s);
const char* to_string(GainConvention g);

struct CovertParams {
  std::int64_t n = 1000;
  double epsilon = 0.01;
  double delta = 0.1;
  double rho = 0.999;
  double nu_sq = 1.001;
  double omega = 1.001;
  double tau = 0.005;
  double lambda0 = 1.0;
  SystemDims dims;
  GainConvention gain = GainConvention::kSingularValue;

  /// rho = 1 - 1/n, nu^2 = omega = 1 + 1/n, tau = min(1/sqrt(n), epsilon/2).
  static CovertParams with_defaults(std::int64_t n, double epsilon, double delta, double lambda0,
                                    SystemDims dims);
  void validate() const;
};

double default_tau(std::int64_t n, double epsilon);

struct ShellSpec {
  double inner_radius_sq = 0.0;
  double outer_radius_sq = 0.0;
  double variance = 0.0;  // per entry

  void validate() const;
};

double power_ach(const CovertParams& p);
double power_con(const CovertParams& p);
ShellSpec shell_for(const CovertParams& p);

/// n (tr(G) - logdet(I + G)) for Hermitian PSD G.
double kl_output_vs_noise(const ComplexMatrix& scaled_gram, std::int64_t n);

struct TaylorSandwich {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool holds = false;
};

/// Throws kOutOfRegime when tr(G^3)/tr(G^2) >= 3(omega-1)/(2 omega).
TaylorSandwich taylor_sandwich_check(const ComplexMatrix& scaled_gram, double omega);

double pinsker_floor(double delta);

double chi2_cdf(double x, double dof);

/// Probability that a CN(0, rho Psi I_n) column lands in the shell.
double delta_n(std::int64_t n, double rho);

ComplexMatrix sample_codeword_tg(const ShellSpec& shell, std::int64_t n, int n_a, RandomStream& rng);

}  // namespace qscovert
