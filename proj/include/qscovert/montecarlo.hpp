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

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "qscovert/errors.hpp"
#include "qscovert/rng.hpp"

namespace qscovert {

struct BoundEstimate {
  double value = 0.0;
  double ci_half_width = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  unsigned workers = 1;
};

/// 1-based rank ceil(p * n), robust to rounding in p * n.
std::size_t quantile_rank(std::size_t n, double p);

/// Left-continuous quantile: the ceil(p N)-th order statistic.
double quantile(std::span<const double> samples, double p);
double quantile_sorted(std::span<const double> sorted, double p);

/// Order-statistic quantile with a 95% binomial half-width.
BoundEstimate quantile_estimate(std::span<const double> sorted, double p, std::uint64_t seed);

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const;
  double quantile(double p) const { return quantile_sorted(sorted_, p); }
  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

class MeanAccumulator {
 public:
  void add(double x);
  void merge(const MeanAccumulator& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased
  BoundEstimate estimate(std::uint64_t seed = 0) const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

BoundEstimate mean_ci(std::span<const double> samples, std::uint64_t seed = 0);

/// Sup distance between the empirical CDF of `sorted` and `cdf`.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);
/// Asymptotic Kolmogorov p-value for statistic d with effective size n_eff.
double ks_pvalue(double d, double n_eff);

/// Evaluates fn(trial) for every trial index in [0, trials) and returns the
/// results in trial order. Work is split into contiguous blocks per worker;
/// the output does not depend on `workers`. The exception from the lowest
/// failing trial index is rethrown.
template <class T, class Fn>
std::vector<T> run_trials(std::uint64_t trials, unsigned workers, Fn&& fn) {
  std::vector<T> out(trials);
  if (trials == 0) return out;
  const std::uint64_t nw = std::clamp<std::uint64_t>(workers, 1, trials);
  if (nw == 1) {
    for (std::uint64_t i = 0; i < trials; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(nw);
  std::vector<std::uint64_t> error_index(nw, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::uint64_t w = 0; w < nw; ++w) {
    const std::uint64_t begin = trials * w / nw;
    const std::uint64_t end = trials * (w + 1) / nw;
    pool.emplace_back([&, w, begin, end] {
      for (std::uint64_t i = begin; i < end; ++i) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto first = std::min_element(error_index.begin(), error_index.end());
  if (*first != std::numeric_limits<std::uint64_t>::max()) {
    std::rethrow_exception(errors[first - error_index.begin()]);
  }
  return out;
}

}  // namespace qscovert
