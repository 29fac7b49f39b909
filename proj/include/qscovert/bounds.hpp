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

struct EigenSample {
  std::vector<double> lambda_b;  // descending
};

/// Gains of h_b (N_a x N_b) under the chosen convention.
EigenSample eigen_sample(const ComplexMatrix& h_b, GainConvention gain);

enum class BoundKind { kFirstOrder, kAch, kCon };

const char* to_string(BoundKind kind);

struct BoundPoint {
  std::int64_t n = 0;
  double rate = 0.0;         // clamped at 0
  double sqrt_n_rate = 0.0;
  BoundKind kind = BoundKind::kFirstOrder;
  BoundEstimate estimate;    // estimate.value is the unclamped rate
};

/// sqrt(2) sum_j Lambda_j / (lambda0 sqrt(N_a)).
double k_statistic(const ComplexMatrix& h_b, double lambda0,
                   GainConvention gain = GainConvention::kSingularValue);

BoundEstimate kappa_epsilon(const FadingModel& model, double lambda0, double epsilon,
                            const McOptions& mc, GainConvention gain = GainConvention::kSingularValue);

BoundPoint first_order_rate(std::int64_t n, double epsilon, double delta, double kappa);
BoundPoint first_order_rate(std::int64_t n, double epsilon, double delta, const BoundEstimate& kappa);

/// sum_j log(1 + psi Lambda_j) per fading draw, in trial order.
std::vector<double> outage_statistics(const FadingModel& model, double psi, GainConvention gain,
                                      const McOptions& mc);

BoundEstimate covert_outage_prob(const FadingModel& model, double psi, double rate,
                                 const McOptions& mc,
                                 GainConvention gain = GainConvention::kSingularValue);

BoundEstimate covert_outage_rate(const FadingModel& model, double psi, double epsilon,
                                 const McOptions& mc,
                                 GainConvention gain = GainConvention::kSingularValue);

/// log prod_j T_j with a_j^2 = n rho psi Lambda_j.
double sample_log_T_product(std::int64_t n, const EigenSample& eigen, double rho, double psi,
                            RandomStream& rng);
double sample_T_product(std::int64_t n, const EigenSample& eigen, double rho, double psi,
                        RandomStream& rng);

/// Sorted log prod T_j over fresh fading draws at psi = power_ach(p).
std::vector<double> sample_log_T_products(const CovertParams& p, const FadingModel& model,
                                          const McOptions& mc, Purpose purpose = Purpose::kTProduct);

/// (1 - eps + tau)-quantile of prod T_j. CI from the order-statistic band.
BoundEstimate ach_gamma(const CovertParams& p, const FadingModel& model, const McOptions& mc);

enum class AchTail {
  kClosedForm,  // Pr{prod B_j <= gamma} <= n^{NaNb} gamma^{n-Na-Nb}
  kDirect,      // Monte-Carlo estimate of Pr{prod B_j <= gamma}; small n only
};

BoundPoint ach_rate_bound(const CovertParams& p, const FadingModel& model, const McOptions& mc,
                          AchTail tail = AchTail::kClosedForm);

/// Draws prod_j B_j with B_j ~ Beta(n - N_a - j + 1, N_a), j = 1..N_b.
double sample_beta_product(std::int64_t n, int n_a, int n_b, RandomStream& rng);

struct LnSn {
  double l = 0.0;
  double s = 0.0;
};

/// Joint draw from the sufficient statistics of the shared noise.
LnSn sample_Ln_Sn(std::int64_t n, const EigenSample& eigen, double psi, RandomStream& rng);

struct SnMoments {
  double mu = 0.0;
  double sigma_sq = 0.0;
};

SnMoments sn_moments(const EigenSample& eigen, double psi);

/// S_n / n over joint (fading, noise) draws, in trial order.
std::vector<double> sample_sn_rates(std::int64_t n, const FadingModel& model, double psi,
                                    GainConvention gain, const McOptions& mc, Purpose purpose);

/// (eps + slack)-quantile of S_n / n. Defaults: slack 1/sqrt(n), psi = power_con(p).
BoundEstimate con_gamma(const CovertParams& p, const FadingModel& model, const McOptions& mc,
                        std::optional<double> slack = std::nullopt,
                        std::optional<double> psi = std::nullopt);

BoundPoint con_rate_bound(const CovertParams& p, const FadingModel& model, const McOptions& mc);

double f_out_derivative_probe(const FadingModel& model, double psi, double epsilon, double bandwidth,
                              const McOptions& mc,
                              GainConvention gain = GainConvention::kSingularValue);

}  // namespace qscovert
