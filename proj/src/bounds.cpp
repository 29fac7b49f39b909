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

#include "qscovert/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qscovert {
namespace {

void require_trials_for(const McOptions& mc, double level) {
  require(static_cast<double>(mc.trials) * level >= 10.0 - 1e-9, ErrorKind::kInsufficientTrials,
          "trials * epsilon must be >= 10");
}

BoundPoint make_point(std::int64_t n, BoundKind kind, BoundEstimate estimate) {
  BoundPoint out;
  out.n = n;
  out.kind = kind;
  out.rate = std::max(0.0, estimate.value);
  out.sqrt_n_rate = std::sqrt(static_cast<double>(n)) * out.rate;
  out.estimate = estimate;
  return out;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kFirstOrder: return "first_order";
    case BoundKind::kAch: return "ach";
    case BoundKind::kCon: return "con";
  }
  return "unknown";
}

EigenSample eigen_sample(const ComplexMatrix& h_b, GainConvention gain) {
  const ComplexMatrix gram = h_b * h_b.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  EigenSample out;
  out.lambda_b.resize(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    const double lambda = std::max(0.0, ev(ev.size() - 1 - j));
    out.lambda_b[static_cast<std::size_t>(j)] =
        gain == GainConvention::kSingularValue ? std::sqrt(lambda) : lambda;
  }
  return out;
}

double k_statistic(const ComplexMatrix& h_b, double lambda0, GainConvention gain) {
  require_valid(h_b, "h_b");
  require(lambda0 > 0.0, ErrorKind::kInvalidInput, "lambda0 must be > 0");
  double sum = 0.0;
  if (gain == GainConvention::kEigenvalue) {
    sum = h_b.squaredNorm();
  } else {
    for (double l : eigen_sample(h_b, gain).lambda_b) sum += l;
  }
  return std::sqrt(2.0) * sum / (lambda0 * std::sqrt(static_cast<double>(h_b.rows())));
}

BoundEstimate kappa_epsilon(const FadingModel& model, double lambda0, double epsilon,
                            const McOptions& mc, GainConvention gain) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  require_trials_for(mc, epsilon);
  auto k = run_trials<double>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, Purpose::kKappa, t));
    return k_statistic(sample_fading(model, rng), lambda0, gain);
  });
  std::sort(k.begin(), k.end());
  return quantile_estimate(k, epsilon, mc.seed);
}

BoundPoint first_order_rate(std::int64_t n, double epsilon, double delta, double kappa) {
  return first_order_rate(n, epsilon, delta, BoundEstimate{kappa, 0.0, 1, 0});
}

BoundPoint first_order_rate(std::int64_t n, double epsilon, double delta, const BoundEstimate& kappa) {
  require(n >= 1, ErrorKind::kInvalidInput, "n must be >= 1");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && kappa.value >= 0.0, ErrorKind::kInvalidInput, "need delta > 0, kappa >= 0");
  const double scale = std::sqrt(delta / static_cast<double>(n));
  BoundEstimate est = kappa;
  est.value = kappa.value * scale;
  est.ci_half_width = kappa.ci_half_width * scale;
  return make_point(n, BoundKind::kFirstOrder, est);
}

std::vector<double> outage_statistics(const FadingModel& model, double psi, GainConvention gain,
                                      const McOptions& mc) {
  require(psi >= 0.0, ErrorKind::kInvalidInput, "psi must be >= 0");
  return run_trials<double>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, Purpose::kOutage, t));
    double sum = 0.0;
    for (double l : eigen_sample(sample_fading(model, rng), gain).lambda_b) sum += std::log1p(psi * l);
    return sum;
  });
}

BoundEstimate covert_outage_prob(const FadingModel& model, double psi, double rate,
                                 const McOptions& mc, GainConvention gain) {
  const auto x = outage_statistics(model, psi, gain, mc);
  const auto hits = std::count_if(x.begin(), x.end(), [rate](double v) { return v < rate; });
  const double p = static_cast<double>(hits) / static_cast<double>(x.size());
  return {p, 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(x.size())), mc.trials, mc.seed};
}

BoundEstimate covert_outage_rate(const FadingModel& model, double psi, double epsilon,
                                 const McOptions& mc, GainConvention gain) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  require_trials_for(mc, epsilon);
  return quantile_estimate(sorted(outage_statistics(model, psi, gain, mc)), epsilon, mc.seed);
}

double sample_log_T_product(std::int64_t n, const EigenSample& eigen, double rho, double psi,
                            RandomStream& rng) {
  require(n >= 2, ErrorKind::kInvalidInput, "T_j needs n >= 2");
  double log_prod = 0.0;
  for (double lambda : eigen.lambda_b) {
    const double a = std::sqrt(static_cast<double>(n) * rho * psi * lambda);
    const double tail = rng.gamma(static_cast<double>(n - 1));
    const double head = std::norm(a + rng.complex_normal());
    log_prod -= std::log1p(head / tail);
  }
  return log_prod;
}

double sample_T_product(std::int64_t n, const EigenSample& eigen, double rho, double psi,
                        RandomStream& rng) {
  return std::exp(sample_log_T_product(n, eigen, rho, psi, rng));
}

std::vector<double> sample_log_T_products(const CovertParams& p, const FadingModel& model,
                                          const McOptions& mc, Purpose purpose) {
  const double psi = power_ach(p);
  return run_trials<double>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, purpose, t));
    const auto eigen = eigen_sample(sample_fading(model, rng), p.gain);
    return sample_log_T_product(p.n, eigen, p.rho, psi, rng);
  });
}

namespace {

BoundEstimate ach_log_gamma(const CovertParams& p, const FadingModel& model, const McOptions& mc) {
  p.validate();
  const double level = 1.0 - p.epsilon + p.tau;
  require(level > 0.0 && level < 1.0, ErrorKind::kInvalidSlack, "1 - eps + tau must lie in (0, 1)");
  return quantile_estimate(sorted(sample_log_T_products(p, model, mc)), level, mc.seed);
}

}  // namespace

BoundEstimate ach_gamma(const CovertParams& p, const FadingModel& model, const McOptions& mc) {
  const auto lg = ach_log_gamma(p, model, mc);
  const double gamma = std::exp(lg.value);
  return {gamma, gamma * lg.ci_half_width, lg.trials, lg.seed};
}

double sample_beta_product(std::int64_t n, int n_a, int n_b, RandomStream& rng) {
  double prod = 1.0;
  for (int j = 1; j <= n_b; ++j) {
    prod *= rng.beta(static_cast<double>(n - n_a - j + 1), static_cast<double>(n_a));
  }
  return prod;
}

BoundPoint ach_rate_bound(const CovertParams& p, const FadingModel& model, const McOptions& mc,
                          AchTail tail) {
  p.validate();
  const int na = p.dims.n_a;
  const int nb = p.dims.n_b;
  require(p.n > na + nb, ErrorKind::kInvalidInput, "n must exceed N_a + N_b");
  const auto lg = ach_log_gamma(p, model, mc);
  require(lg.value < 0.0, ErrorKind::kDomain, "gamma_n >= 1");
  const double n = static_cast<double>(p.n);
  const double n0 = static_cast<double>(p.n - na - nb);
  double raw = 0.0;
  if (tail == AchTail::kClosedForm) {
    raw = (std::log(p.tau) - na * nb * std::log(n) - n0 * lg.value) / n;
  } else {
    const double gamma = std::exp(lg.value);
    const auto hits = run_trials<int>(mc.trials, mc.workers, [&](std::uint64_t t) {
      RandomStream rng(trial_stream(mc.seed, Purpose::kBetaTail, t));
      return sample_beta_product(p.n, na, nb, rng) <= gamma ? 1 : 0;
    });
    std::uint64_t count = 0;
    for (int h : hits) count += static_cast<std::uint64_t>(h);
    require(count > 0, ErrorKind::kDegenerateEstimate,
            "no Beta-product draw fell below gamma; use the closed-form tail");
    raw = (std::log(p.tau) - std::log(static_cast<double>(count) / static_cast<double>(mc.trials))) / n;
  }
  return make_point(p.n, BoundKind::kAch, {raw, n0 / n * lg.ci_half_width, mc.trials, mc.seed});
}

LnSn sample_Ln_Sn(std::int64_t n, const EigenSample& eigen, double psi, RandomStream& rng) {
  require(n >= 1, ErrorKind::kInvalidInput, "n must be >= 1");
  require(psi >= 0.0, ErrorKind::kInvalidInput, "psi must be >= 0");
  const double nd = static_cast<double>(n);
  LnSn out;
  for (double lambda : eigen.lambda_b) {
    // Z = X + iY over n uses: U = sum X, |Z|^2 summed via U^2/n + chi2 parts.
    const double u = std::sqrt(0.5 * nd) * rng.normal();
    const double sum_sq = u * u / nd + rng.gamma(0.5 * (nd - 1.0)) + rng.gamma(0.5 * nd);
    const double a = lambda * psi;
    if (a == 0.0) continue;
    const double la = nd * std::log1p(a);
    out.s += la + (a * (nd - sum_sq) + 2.0 * std::sqrt(a) * u) / (1.0 + a);
    out.l += la - a * sum_sq + 2.0 * std::sqrt(a * (1.0 + a)) * u - nd * a;
  }
  return out;
}

SnMoments sn_moments(const EigenSample& eigen, double psi) {
  SnMoments out;
  for (double lambda : eigen.lambda_b) {
    const double a = lambda * psi;
    out.mu += std::log1p(a);
    out.sigma_sq += 1.0 - 1.0 / ((1.0 + a) * (1.0 + a));
  }
  return out;
}

std::vector<double> sample_sn_rates(std::int64_t n, const FadingModel& model, double psi,
                                    GainConvention gain, const McOptions& mc, Purpose purpose) {
  return run_trials<double>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, purpose, t));
    const auto eigen = eigen_sample(sample_fading(model, rng), gain);
    return sample_Ln_Sn(n, eigen, psi, rng).s / static_cast<double>(n);
  });
}

BoundEstimate con_gamma(const CovertParams& p, const FadingModel& model, const McOptions& mc,
                        std::optional<double> slack, std::optional<double> psi) {
  p.validate();
  const double s = slack.value_or(1.0 / std::sqrt(static_cast<double>(p.n)));
  require(s > 0.0 && p.epsilon + s < 1.0, ErrorKind::kInvalidSlack, "need 0 < slack, eps + slack < 1");
  const double level = p.epsilon + s;
  require_trials_for(mc, level);
  const double power = psi.value_or(power_con(p));
  return quantile_estimate(
      sorted(sample_sn_rates(p.n, model, power, p.gain, mc, Purpose::kConverse)), level, mc.seed);
}

BoundPoint con_rate_bound(const CovertParams& p, const FadingModel& model, const McOptions& mc) {
  p.validate();
  const double n = static_cast<double>(p.n);
  const double psi = (1.0 + 1.0 / n) * power_con(p);
  const auto gamma = con_gamma(p, model, mc, std::nullopt, psi);
  const auto check = sample_sn_rates(p.n, model, psi, p.gain, mc, Purpose::kConverseCheck);
  const auto hits = std::count_if(check.begin(), check.end(), [&](double v) { return v <= gamma.value; });
  const double prob = static_cast<double>(hits) / static_cast<double>(check.size());
  if (prob <= p.epsilon) {
    fail(ErrorKind::kSlackExhausted,
         "re-estimated Pr{S_n <= n gamma} <= epsilon; raise the slack or the trial count");
  }
  const double raw = gamma.value - std::log(prob - p.epsilon) / n + std::log(n + 1.0) / n;
  return make_point(p.n, BoundKind::kCon, {raw, gamma.ci_half_width, mc.trials, mc.seed});
}

double f_out_derivative_probe(const FadingModel& model, double psi, double epsilon, double bandwidth,
                              const McOptions& mc, GainConvention gain) {
  require(bandwidth > 0.0, ErrorKind::kInvalidInput, "bandwidth must be > 0");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  require_trials_for(mc, epsilon);
  const auto x = sorted(outage_statistics(model, psi, gain, mc));
  require(x.front() < x.back(), ErrorKind::kDegenerateEstimate,
          "covert outage statistic is deterministic; its CDF has no derivative");
  const double c = quantile_sorted(x, epsilon);
  const auto below = [&](double r) {
    return static_cast<double>(std::lower_bound(x.begin(), x.end(), r) - x.begin()) /
           static_cast<double>(x.size());
  };
  const double probe = (below(c + bandwidth) - below(c - bandwidth)) / (2.0 * bandwidth);
  require(std::isfinite(probe) && probe > 0.0, ErrorKind::kDegenerateEstimate,
          "covert outage CDF is flat around the quantile");
  return probe;
}

}  // namespace qscovert
