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

#include "qscovert/covertness.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace qscovert {
namespace {

constexpr std::int64_t kMaxProposals = 1000000;

}  // namespace

GainConvention parse_gain_convention(const std::string& s) {
  if (s == "singular_value") return GainConvention::kSingularValue;
  if (s == "eigenvalue") return GainConvention::kEigenvalue;
  fail(ErrorKind::kConfig, "unknown gain convention '" + s + "'");
}

const char* to_string(GainConvention g) {
  return g == GainConvention::kSingularValue ? "singular_value" : "eigenvalue";
}

double default_tau(std::int64_t n, double epsilon) {
  return std::min(1.0 / std::sqrt(static_cast<double>(n)), 0.5 * epsilon);
}

CovertParams CovertParams::with_defaults(std::int64_t n, double epsilon, double delta, double lambda0,
                                         SystemDims dims) {
  CovertParams p;
  const double inv = 1.0 / static_cast<double>(n);
  p.n = n;
  p.epsilon = epsilon;
  p.delta = delta;
  p.rho = 1.0 - inv;
  p.nu_sq = 1.0 + inv;
  p.omega = 1.0 + inv;
  p.tau = default_tau(n, epsilon);
  p.lambda0 = lambda0;
  p.dims = dims;
  return p;
}

void CovertParams::validate() const {
  require(n >= 1, ErrorKind::kInvalidInput, "n must be >= 1");
  require(0.0 < rho && rho < 1.0, ErrorKind::kInvalidInput, "rho must lie in (0, 1)");
  require(nu_sq > 1.0, ErrorKind::kInvalidInput, "nu_sq must be > 1");
  require(omega > 1.0, ErrorKind::kInvalidInput, "omega must be > 1");
  require(0.0 < epsilon && epsilon < 1.0, ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  require(0.0 < tau && tau < epsilon, ErrorKind::kInvalidSlack, "tau must lie in (0, epsilon)");
  require(delta > 0.0, ErrorKind::kInvalidInput, "delta must be > 0");
  require(lambda0 > 0.0, ErrorKind::kInvalidInput, "lambda0 must be > 0");
  dims.validate();
}

void ShellSpec::validate() const {
  require(inner_radius_sq > 0.0 && variance > 0.0 && inner_radius_sq < outer_radius_sq,
          ErrorKind::kInvalidInput, "shell needs 0 < inner < outer and variance > 0");
}

double power_ach(const CovertParams& p) {
  p.validate();
  const double tr4 = p.dims.n_a * p.lambda0 * p.lambda0;
  return std::sqrt(2.0 * p.delta / (static_cast<double>(p.n) * p.rho * p.rho * p.nu_sq * tr4));
}

double power_con(const CovertParams& p) {
  p.validate();
  const double tr4 = p.dims.n_a * p.lambda0 * p.lambda0;
  return std::sqrt(2.0 * p.delta * p.omega / (static_cast<double>(p.n) * tr4));
}

ShellSpec shell_for(const CovertParams& p) {
  const double psi = power_ach(p);
  const double n = static_cast<double>(p.n);
  return {p.rho * p.rho * n * psi, n * psi, p.rho * psi};
}

double kl_output_vs_noise(const ComplexMatrix& scaled_gram, std::int64_t n) {
  double sum = 0.0;
  for (double g : psd_eigenvalues(scaled_gram)) sum += g - std::log1p(g);
  return static_cast<double>(n) * sum;
}

TaylorSandwich taylor_sandwich_check(const ComplexMatrix& scaled_gram, double omega) {
  require(omega > 1.0, ErrorKind::kInvalidInput, "omega must be > 1");
  const auto ev = psd_eigenvalues(scaled_gram);
  double tr2 = 0.0, tr3 = 0.0, value = 0.0;
  for (double g : ev) {
    tr2 += g * g;
    tr3 += g * g * g;
    value += g - std::log1p(g);
  }
  if (tr2 == 0.0) return {0.0, 0.0, 0.0, false};
  require(tr3 / tr2 < 3.0 * (omega - 1.0) / (2.0 * omega), ErrorKind::kOutOfRegime,
          "scaled gram too large for the Taylor sandwich");
  TaylorSandwich out{tr2 / (2.0 * omega), value, tr2 / 2.0, false};
  out.holds = out.lower < out.value && out.value < out.upper;
  return out;
}

double pinsker_floor(double delta) {
  require(delta >= 0.0, ErrorKind::kInvalidInput, "delta must be >= 0");
  return 1.0 - std::sqrt(delta / 2.0);
}

double chi2_cdf(double x, double dof) {
  require(dof > 0.0, ErrorKind::kInvalidInput, "dof must be > 0");
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

double delta_n(std::int64_t n, double rho) {
  require(n >= 1, ErrorKind::kInvalidInput, "n must be >= 1");
  require(0.0 < rho && rho < 1.0, ErrorKind::kInvalidInput, "rho must lie in (0, 1)");
  const double k = 2.0 * static_cast<double>(n);
  return chi2_cdf(k / rho, k) - chi2_cdf(k * rho, k);
}

ComplexMatrix sample_codeword_tg(const ShellSpec& shell, std::int64_t n, int n_a, RandomStream& rng) {
  shell.validate();
  require(n >= 1 && n_a >= 1, ErrorKind::kInvalidInput, "codeword dims must be >= 1");
  const double sd = std::sqrt(shell.variance);
  ComplexMatrix x(n, n_a);
  for (int j = 0; j < n_a; ++j) {
    std::int64_t proposals = 0;
    for (;;) {
      require(++proposals <= kMaxProposals, ErrorKind::kSamplingStalled,
              "more than 1e6 proposals for one codeword column");
      double norm_sq = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        x(i, j) = sd * rng.complex_normal();
        norm_sq += std::norm(x(i, j));
      }
      if (norm_sq >= shell.inner_radius_sq && norm_sq <= shell.outer_radius_sq) break;
    }
  }
  return x;
}

}  // namespace qscovert
