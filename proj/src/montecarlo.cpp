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

#include "qscovert/montecarlo.hpp"

#include <cmath>

namespace qscovert {

std::size_t quantile_rank(std::size_t n, double p) {
  require(n > 0, ErrorKind::kInvalidInput, "empty sample");
  require(p > 0.0 && p <= 1.0, ErrorKind::kInvalidInput, "quantile level must lie in (0, 1]");
  const double x = p * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(x));
  if (k > 1 && static_cast<double>(k - 1) >= x * (1.0 - 4.0 * std::numeric_limits<double>::epsilon())) {
    --k;
  }
  return std::clamp<std::size_t>(k, 1, n);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  return sorted[quantile_rank(sorted.size(), p) - 1];
}

double quantile(std::span<const double> samples, double p) {
  const std::size_t k = quantile_rank(samples.size(), p);
  std::vector<double> copy(samples.begin(), samples.end());
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(k - 1), copy.end());
  return copy[k - 1];
}

BoundEstimate quantile_estimate(std::span<const double> sorted, double p, std::uint64_t seed) {
  const auto n = static_cast<double>(sorted.size());
  const double value = quantile_sorted(sorted, p);
  const double spread = 1.96 * std::sqrt(n * p * (1.0 - p));
  const double lo_rank = std::max(1.0, std::floor(n * p - spread));
  const double hi_rank = std::min(n, std::ceil(n * p + spread));
  const double lo = sorted[static_cast<std::size_t>(lo_rank) - 1];
  const double hi = sorted[static_cast<std::size_t>(hi_rank) - 1];
  return {value, 0.5 * (hi - lo), sorted.size(), seed};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  require(!sorted_.empty(), ErrorKind::kInvalidInput, "empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

void MeanAccumulator::add(double x) {
  ++count_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(count_);
  m2_ += d * (x - mean_);
}

void MeanAccumulator::merge(const MeanAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double d = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += d * nb / n;
  m2_ += other.m2_ + d * d * na * nb / n;
  count_ += other.count_;
}

double MeanAccumulator::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

BoundEstimate MeanAccumulator::estimate(std::uint64_t seed) const {
  require(count_ >= 2, ErrorKind::kInsufficientTrials, "mean_ci needs at least 2 samples");
  return {mean_, 1.96 * std::sqrt(variance() / static_cast<double>(count_)), count_, seed};
}

BoundEstimate mean_ci(std::span<const double> samples, std::uint64_t seed) {
  MeanAccumulator acc;
  for (double x : samples) acc.add(x);
  return acc.estimate(seed);
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_pvalue(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace qscovert
