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

#include "qscovert/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qscovert {
namespace {

constexpr std::uint64_t kMaxWardenResamples = 1000000;

Codebook build_codebook_at(const CovertParams& p, std::int64_t m, double psi, RandomStream& rng) {
  require(m >= 1, ErrorKind::kInvalidInput, "codebook size must be >= 1");
  require(psi >= 0.0, ErrorKind::kInvalidInput, "psi must be >= 0");
  const double n = static_cast<double>(p.n);
  if (psi == 0.0) {
    Codebook cb;
    cb.codewords.assign(static_cast<std::size_t>(m), ComplexMatrix::Zero(p.n, p.dims.n_a));
    cb.m = m;
    return cb;
  }
  const ShellSpec shell{p.rho * p.rho * n * psi, n * psi, p.rho * psi};
  std::vector<ComplexMatrix> words;
  words.reserve(static_cast<std::size_t>(m));
  for (std::int64_t w = 0; w < m; ++w) words.push_back(sample_codeword_tg(shell, p.n, p.dims.n_a, rng));
  return make_codebook(std::move(words), shell);
}

std::size_t uniform_index(RandomStream& rng, std::int64_t m) {
  const auto w = static_cast<std::int64_t>(rng.uniform() * static_cast<double>(m));
  return static_cast<std::size_t>(std::min(w, m - 1));
}

}  // namespace

Codebook make_codebook(std::vector<ComplexMatrix> codewords, const ShellSpec& shell,
                       const LinalgTolerances& tol) {
  require(!codewords.empty(), ErrorKind::kInvalidInput, "codebook must not be empty");
  Codebook cb;
  cb.bases.reserve(codewords.size());
  for (const auto& x : codewords) {
    require(x.rows() == codewords.front().rows() && x.cols() == codewords.front().cols(),
            ErrorKind::kDimensionMismatch, "codewords must share dimensions");
    cb.bases.push_back(orthonormalize(x, tol));
  }
  cb.m = static_cast<std::int64_t>(codewords.size());
  cb.codewords = std::move(codewords);
  cb.shell = shell;
  return cb;
}

Codebook build_codebook(const CovertParams& p, std::int64_t m, RandomStream& rng) {
  return build_codebook_at(p, m, power_ach(p), rng);
}

std::optional<std::size_t> angle_decode(const Codebook& cb, const ComplexMatrix& y, double gamma,
                                        const LinalgTolerances& tol) {
  require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::kInvalidInput, "gamma must lie in [0, 1]");
  if (cb.bases.size() != cb.codewords.size()) return std::nullopt;
  const ComplexMatrix qy = orthonormalize(y, tol);
  for (std::size_t w = 0; w < cb.bases.size(); ++w) {
    require(cb.bases[w].rows() == qy.rows() && cb.bases[w].cols() <= qy.cols(),
            ErrorKind::kDimensionMismatch, "codeword and observation dimensions disagree");
    if (subspace_sin_sq_orthonormal(cb.bases[w], qy) <= gamma) return w;
  }
  return std::nullopt;
}

std::size_t ml_decode(const Codebook& cb, const ComplexMatrix& y, const ComplexMatrix& h) {
  require(!cb.codewords.empty(), ErrorKind::kInvalidInput, "empty codebook");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < cb.codewords.size(); ++w) {
    const auto& x = cb.codewords[w];
    require(x.cols() == h.rows() && x.rows() == y.rows() && h.cols() == y.cols(),
            ErrorKind::kDimensionMismatch, "ml_decode dimensions disagree");
    const double d = (y - x * h).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = w;
    }
  }
  return best;
}

double warden_llr(const ComplexMatrix& y_w, const ComplexMatrix& h_w, double psi, double rho) {
  require(y_w.cols() == h_w.cols(), ErrorKind::kDimensionMismatch, "warden_llr: cols(y_w) != cols(h_w)");
  require(psi >= 0.0 && rho > 0.0, ErrorKind::kInvalidInput, "need psi >= 0 and rho > 0");
  const Eigen::Index nw = h_w.cols();
  const ComplexMatrix sigma = rho * psi * (h_w.adjoint() * h_w) + ComplexMatrix::Identity(nw, nw);
  Eigen::LLT<ComplexMatrix> llt(sigma);
  require(llt.info() == Eigen::Success, ErrorKind::kDomain, "warden covariance is not positive definite");
  double logdet = 0.0;
  for (Eigen::Index j = 0; j < nw; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j).real());
  const ComplexMatrix a = ComplexMatrix::Identity(nw, nw) - llt.solve(ComplexMatrix::Identity(nw, nw));
  const double quad = ((y_w * a).cwiseProduct(y_w.conjugate())).sum().real();
  return -static_cast<double>(y_w.rows()) * logdet + quad;
}

ComplexMatrix sample_warden_channel(const FadingModel& model_w, double lambda0, RandomStream& rng,
                                    std::uint64_t& resamples) {
  for (std::uint64_t k = 0; k <= kMaxWardenResamples; ++k) {
    ComplexMatrix h = sample_fading(model_w, rng);
    if (in_uncertainty_set(h, lambda0)) return h;
    ++resamples;
  }
  fail(ErrorKind::kSamplingStalled, "warden channel never entered the uncertainty set");
}

ErrorSum min_error_sum(std::vector<double> llr_noise, std::vector<double> llr_signal) {
  require(!llr_noise.empty() && !llr_signal.empty(), ErrorKind::kInvalidInput, "empty LLR sample");
  std::sort(llr_noise.begin(), llr_noise.end());
  std::sort(llr_signal.begin(), llr_signal.end());
  const auto n0 = static_cast<double>(llr_noise.size());
  const auto n1 = static_cast<double>(llr_signal.size());
  ErrorSum best{1.0, 1.0, 0.0};  // threshold below every sample
  std::size_t i = 0, j = 0;
  while (i < llr_noise.size() || j < llr_signal.size()) {
    double t;
    if (j == llr_signal.size() || (i < llr_noise.size() && llr_noise[i] <= llr_signal[j])) {
      t = llr_noise[i];
    } else {
      t = llr_signal[j];
    }
    while (i < llr_noise.size() && llr_noise[i] <= t) ++i;
    while (j < llr_signal.size() && llr_signal[j] <= t) ++j;
    const double alpha = (n0 - static_cast<double>(i)) / n0;
    const double beta = static_cast<double>(j) / n1;
    if (alpha + beta < best.sum) best = {alpha + beta, alpha, beta};
  }
  return best;
}

DetectionReport detection_error_sum(const CovertParams& p, const FadingModel& model_w,
                                    const McOptions& mc, std::optional<double> psi) {
  p.validate();
  require(mc.trials >= 1000, ErrorKind::kInsufficientTrials, "detection_error_sum needs >= 1000 trials");
  require(model_w.rows() == p.dims.n_a && model_w.cols() == p.dims.n_w, ErrorKind::kDimensionMismatch,
          "warden model dims must be N_a x N_w");
  const double power = psi.value_or(power_ach(p));
  struct Draw {
    double noise = 0.0;
    double signal = 0.0;
    std::uint64_t resamples = 0;
  };
  const auto draws = run_trials<Draw>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, Purpose::kWarden, t));
    Draw d;
    const ComplexMatrix h_w = sample_warden_channel(model_w, p.lambda0, rng, d.resamples);
    const Codebook cb = build_codebook_at(p, 1, power, rng);
    const ComplexMatrix y1 = transmit(cb.codewords.front(), h_w, rng);
    const ComplexMatrix y0 = sample_noise(p.n, p.dims.n_w, rng);
    d.signal = warden_llr(y1, h_w, power, p.rho);
    d.noise = warden_llr(y0, h_w, power, p.rho);
    return d;
  });
  std::vector<double> l0, l1;
  l0.reserve(draws.size());
  l1.reserve(draws.size());
  DetectionReport out;
  out.psi = power;
  for (const auto& d : draws) {
    l0.push_back(d.noise);
    l1.push_back(d.signal);
    out.resamples += d.resamples;
  }
  const ErrorSum e = min_error_sum(std::move(l0), std::move(l1));
  const double n = static_cast<double>(mc.trials);
  const double var = (e.alpha * (1.0 - e.alpha) + e.beta * (1.0 - e.beta)) / n;
  out.error_sum = {e.sum, 1.96 * std::sqrt(var), mc.trials, mc.seed};
  return out;
}

LinkReport run_link_trials(const CovertParams& p, const FadingModel& model_b,
                           const FadingModel& model_w, std::int64_t m, const Decoder& decoder,
                           const McOptions& mc, const LinkOptions& options) {
  p.validate();
  require(m >= 1, ErrorKind::kInvalidInput, "M must be >= 1");
  require(model_b.rows() == p.dims.n_a && model_b.cols() == p.dims.n_b, ErrorKind::kDimensionMismatch,
          "bob model dims must be N_a x N_b");
  require(model_w.rows() == p.dims.n_a && model_w.cols() == p.dims.n_w, ErrorKind::kDimensionMismatch,
          "warden model dims must be N_a x N_w");
  const double psi = options.psi.value_or(power_ach(p));
  std::optional<Codebook> shared;
  if (options.reuse_codebook) {
    RandomStream rng(trial_stream(mc.seed, Purpose::kCodebook, 0));
    shared = build_codebook_at(p, m, psi, rng);
  }
  struct Outcome {
    TrialReport report;
    std::uint64_t resamples = 0;
  };
  const auto outcomes = run_trials<Outcome>(mc.trials, mc.workers, [&](std::uint64_t t) {
    RandomStream rng(trial_stream(mc.seed, Purpose::kLink, t));
    std::optional<Codebook> fresh;
    if (!shared) fresh = build_codebook_at(p, m, psi, rng);
    const Codebook& cb = shared ? *shared : *fresh;
    Outcome o;
    TrialReport& r = o.report;
    r.sent = uniform_index(rng, m);
    const ComplexMatrix& x = cb.codewords[r.sent];
    const ComplexMatrix h_b = sample_fading(model_b, rng);
    const ComplexMatrix y_b = transmit(x, h_b, rng);
    if (decoder.kind == Decoder::Kind::kMl) {
      r.decoded = ml_decode(cb, y_b, h_b);
    } else {
      r.decoded = angle_decode(cb, y_b, decoder.gamma, options.tolerances);
    }
    r.correct = r.decoded && *r.decoded == r.sent;
    r.sin_sq_true = cb.bases.empty()
                        ? 1.0
                        : subspace_sin_sq_orthonormal(cb.bases[r.sent],
                                                      orthonormalize(y_b, options.tolerances));
    const ComplexMatrix h_w = sample_warden_channel(model_w, p.lambda0, rng, o.resamples);
    r.warden_llr = warden_llr(transmit(x, h_w, rng), h_w, psi, p.rho);
    return o;
  });
  LinkReport out;
  out.psi = psi;
  out.trials.reserve(outcomes.size());
  std::uint64_t errors = 0;
  for (const auto& o : outcomes) {
    out.trials.push_back(o.report);
    out.resamples += o.resamples;
    if (!o.report.correct) ++errors;
    if (!o.report.decoded) ++out.erasures;
  }
  const double n = static_cast<double>(mc.trials);
  const double rate = static_cast<double>(errors) / n;
  out.error_rate = {rate, 1.96 * std::sqrt(rate * (1.0 - rate) / n), mc.trials, mc.seed};
  return out;
}

}  // namespace qscovert
