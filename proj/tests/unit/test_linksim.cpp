#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qscovert/bounds.hpp"
#include "qscovert/linksim.hpp"
#include "test_helpers.hpp"

using namespace qscovert;

namespace {

FadingModel rician() { return FadingModel::rician(10.0, ComplexMatrix::Ones(2, 2)); }

CovertParams params(std::int64_t n, double delta) {
  return CovertParams::with_defaults(n, 0.01, delta, 1.0, SystemDims{2, 2, 2});
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("codebook reproducibility") {
  const auto p = params(100, 0.1);
  auto r1 = testing::stream(81);
  auto r2 = testing::stream(81);
  auto r3 = testing::stream(82);
  const auto a = build_codebook(p, 4, r1);
  const auto b = build_codebook(p, 4, r2);
  const auto c = build_codebook(p, 4, r3);
  REQUIRE(a.codewords.size() == 4);
  for (std::size_t w = 0; w < 4; ++w) CHECK(a.codewords[w] == b.codewords[w]);
  CHECK(a.codewords[0] != c.codewords[0]);
  for (const auto& x : a.codewords) {
    CHECK(x.rows() == 100);
    CHECK(x.cols() == 2);
    for (Eigen::Index j = 0; j < 2; ++j) {
      CHECK(x.col(j).squaredNorm() >= a.shell.inner_radius_sq);
      CHECK(x.col(j).squaredNorm() <= a.shell.outer_radius_sq);
    }
  }
}

TEST_CASE("codeword columns are nearly orthogonal") {
  const std::int64_t n = 500, m = 64;
  auto r = testing::stream(83);
  const auto cb = build_codebook(params(n, 0.1), m, r);
  std::vector<ComplexMatrix> cols;
  for (const auto& x : cb.codewords) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) cols.push_back(x.col(j).normalized());
  }
  Complex sum = 0.0;
  double max_abs = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t k = i + 1; k < cols.size(); ++k) {
      const Complex ip = (cols[i].adjoint() * cols[k])(0, 0);
      sum += ip;
      max_abs = std::max(max_abs, std::abs(ip));
      ++pairs;
    }
  }
  CHECK(std::abs(sum) / pairs <= 3.0 / std::sqrt(static_cast<double>(n * m)));
  CHECK(max_abs < 6.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("example 4 angle decoding") {
  const ComplexMatrix x = testing::example4_x();
  const ComplexMatrix y = testing::example4_y();
  auto r = testing::stream(84);
  std::vector<ComplexMatrix> words{x};
  std::size_t below = 0;
  const int distractors = 99;
  for (int k = 0; k < distractors; ++k) {
    ComplexMatrix d = std::sqrt(2.0) * testing::random_matrix(4, 2, r);
    below += subspace_sin_sq(d, y) <= 0.01 ? 1 : 0;
    words.push_back(d);
  }
  const auto cb = make_codebook(words, ShellSpec{});
  const auto w = angle_decode(cb, y, 0.01);
  REQUIRE(w.has_value());
  CHECK(*w == 0);
  auto rb = testing::stream(184);
  std::size_t law_below = 0;
  for (int k = 0; k < 100000; ++k) law_below += sample_beta_product(4, 2, 2, rb) <= 0.01 ? 1 : 0;
  const double q = law_below / 1e5;
  CHECK(std::abs(static_cast<double>(below) / distractors - q) <= 3.0 * std::sqrt(q * (1 - q) / distractors));
  CHECK_FALSE(angle_decode(cb, y, 0.0).has_value());
}

TEST_CASE("noiseless decoding") {
  const auto p = params(60, 0.1);
  auto r = testing::stream(85);
  const auto cb = build_codebook(p, 6, r);
  const ComplexMatrix h = testing::random_matrix(2, 2, r);
  for (std::size_t w = 0; w < 6; ++w) {
    const ComplexMatrix y = cb.codewords[w] * h;
    CHECK(ml_decode(cb, y, h) == w);
    std::vector<ComplexMatrix> reordered{cb.codewords[w]};
    for (std::size_t k = 0; k < 6; ++k) {
      if (k != w) reordered.push_back(cb.codewords[k]);
    }
    const auto angle = angle_decode(make_codebook(reordered, cb.shell), y, 1e-10);
    REQUIRE(angle.has_value());
    CHECK(*angle == 0);
  }
}

TEST_CASE("zero threshold erases noisy observations") {
  const auto p = params(60, 0.1);
  auto r = testing::stream(86);
  const auto cb = build_codebook(p, 4, r);
  const ComplexMatrix h = testing::random_matrix(2, 2, r);
  for (int t = 0; t < 50; ++t) {
    CHECK_FALSE(angle_decode(cb, transmit(cb.codewords[0], h, r), 0.0).has_value());
  }
  ComplexMatrix flat = ComplexMatrix::Zero(60, 2);
  flat.col(0) = testing::random_matrix(60, 1, r);
  flat.col(1) = 2.0 * flat.col(0);
  CHECK_THROWS_AS(angle_decode(cb, flat, 0.5), Error);
}

TEST_CASE("ml decoding of two orthogonal codewords at high SNR") {
  const std::int64_t n = 20;
  ComplexMatrix x0 = ComplexMatrix::Zero(n, 2), x1 = ComplexMatrix::Zero(n, 2);
  for (std::int64_t i = 0; i < n / 2; ++i) {
    x0(i, i % 2) = 4.0;
    x1(n / 2 + i, i % 2) = 4.0;
  }
  const auto cb = make_codebook({x0, x1}, ShellSpec{});
  auto r = testing::stream(87);
  int errors = 0;
  for (int t = 0; t < 10000; ++t) {
    const ComplexMatrix h = testing::random_matrix(2, 2, r);
    const std::size_t w = t % 2;
    errors += ml_decode(cb, transmit(cb.codewords[w], h, r), h) != w ? 1 : 0;
  }
  CHECK(errors < 10);
}

TEST_CASE("warden log-likelihood ratio") {
  const std::int64_t n = 10;
  auto r = testing::stream(88);
  const ComplexMatrix h = testing::random_matrix(2, 2, r);
  const double psi = 0.3, rho = 0.9;
  const ComplexMatrix sigma = rho * psi * h.adjoint() * h + ComplexMatrix::Identity(2, 2);
  CHECK(warden_llr(ComplexMatrix::Zero(n, 2), h, psi, rho) ==
        doctest::Approx(-static_cast<double>(n) * logdet_psd(sigma)));
  CHECK(warden_llr(testing::random_matrix(n, 2, r), h, 0.0, rho) == 0.0);

  const ComplexMatrix root = sqrt_psd(sigma);
  MeanAccumulator under_noise, under_signal;
  for (int t = 0; t < 100000; ++t) {
    under_noise.add(warden_llr(sample_noise(n, 2, r), h, psi, rho));
    under_signal.add(warden_llr(sample_noise(n, 2, r) * root, h, psi, rho));
  }
  const ComplexMatrix inv = sigma.inverse();
  const double kl_noise_q = n * (logdet_psd(sigma) + inv.trace().real() - 2.0);
  const double kl_q_noise = kl_output_vs_noise(rho * psi * h.adjoint() * h, n);
  CHECK(std::abs(under_noise.mean() + kl_noise_q) <=
        3.0 * std::sqrt(under_noise.variance() / under_noise.count()));
  CHECK(std::abs(under_signal.mean() - kl_q_noise) <=
        3.0 * std::sqrt(under_signal.variance() / under_signal.count()));
}

TEST_CASE("min error sum") {
  const auto e = min_error_sum({0.0, 1.0, 2.0}, {3.0, 4.0, 5.0});
  CHECK(e.sum == 0.0);
  const auto same = min_error_sum({1.0, 2.0}, {1.0, 2.0});
  CHECK(same.sum == doctest::Approx(1.0));
  const auto rev = min_error_sum({3.0, 4.0}, {0.0, 1.0});
  CHECK(rev.sum == doctest::Approx(1.0));
}

TEST_CASE("warden channel sampling respects the uncertainty set") {
  auto r = testing::stream(89);
  std::uint64_t resamples = 0;
  for (int t = 0; t < 200; ++t) {
    CHECK(in_uncertainty_set(sample_warden_channel(FadingModel::rayleigh(2, 2), 1.0, r, resamples), 1.0));
  }
  CHECK(resamples > 0);
  ComplexMatrix big = ComplexMatrix::Identity(2, 2) * 3.0;
  CHECK_THROWS_AS(sample_warden_channel(FadingModel::fixed(big), 1.0, r, resamples), Error);
}

TEST_CASE("detection error sum") {
  const auto model_w = FadingModel::rayleigh(2, 2);
  const auto p = params(1000, 0.1);
  const McOptions mc{90, 2000, 1};

  const auto blind = detection_error_sum(p, model_w, mc, 0.0);
  const double se0 = blind.error_sum.ci_half_width / 1.96;
  CHECK(std::abs(blind.error_sum.value - 1.0) <= std::max(2.0 * se0, 2.0 / std::sqrt(2000.0)));

  const auto covert = detection_error_sum(p, model_w, mc);
  CHECK(covert.error_sum.value >= pinsker_floor(0.1) - 3.0 * covert.error_sum.ci_half_width / 1.96);
  CHECK(covert.psi == doctest::Approx(power_ach(p)));

  const auto loud = detection_error_sum(p, model_w, {91, 1000, 1}, 1.0);
  CHECK(loud.error_sum.value <= 0.05);
  CHECK_THROWS_AS(detection_error_sum(p, model_w, {1, 999, 1}), Error);
}

TEST_CASE("single-message link") {
  const auto p = params(100, 0.1);
  const auto ml = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 1, Decoder::ml(), {92, 200, 1});
  CHECK(ml.error_rate.value == 0.0);
  const auto angle =
      run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 1, Decoder::angle(0.9), {92, 200, 1});
  CHECK(angle.error_rate.value == doctest::Approx(static_cast<double>(angle.erasures) / 200.0));
}

TEST_CASE("zero power link is pure guessing") {
  const auto p = params(100, 0.1);
  LinkOptions opts;
  opts.psi = 0.0;
  const auto ml = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::ml(), {93, 4000, 1}, opts);
  CHECK(std::abs(ml.error_rate.value - 0.75) <= 3.0 * std::sqrt(0.75 * 0.25 / 4000));
  const auto angle =
      run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::angle(0.5), {93, 100, 1}, opts);
  CHECK(angle.erasures == 100);
}

TEST_CASE("reliable operating point: error rate within epsilon") {
  // log(8)/200 sits below the achievability rate at delta = 5.
  auto p = params(200, 5.0);
  p.gain = GainConvention::kEigenvalue;
  const auto model_b = rician();
  const McOptions mc{94, 1000, 1};
  CHECK(ach_rate_bound(p, model_b, {94, 100000, 1}).rate > std::log(8.0) / 200.0);
  const double gamma = ach_gamma(p, model_b, {94, 100000, 1}).value;
  const auto angle = run_link_trials(p, model_b, FadingModel::rayleigh(2, 2), 8, Decoder::angle(gamma), mc);
  const double se = std::sqrt(p.epsilon * (1 - p.epsilon) / mc.trials);
  CHECK(angle.error_rate.value <= p.epsilon + 3.0 * se);
  const auto ml = run_link_trials(p, model_b, FadingModel::rayleigh(2, 2), 8, Decoder::ml(), mc);
  const double se_ml = std::sqrt((ml.error_rate.value * (1 - ml.error_rate.value) +
                                  angle.error_rate.value * (1 - angle.error_rate.value)) / mc.trials);
  CHECK(ml.error_rate.value <= angle.error_rate.value + 2.0 * se_ml);
}

TEST_CASE("link results do not depend on worker count") {
  const auto p = params(80, 1.0);
  const auto a = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::angle(0.9), {95, 64, 1});
  const auto b = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::angle(0.9), {95, 64, 5});
  CHECK(a.error_rate.value == b.error_rate.value);
  CHECK(a.resamples == b.resamples);
  for (std::size_t t = 0; t < a.trials.size(); ++t) {
    CHECK(a.trials[t].sin_sq_true == b.trials[t].sin_sq_true);
    CHECK(a.trials[t].warden_llr == b.trials[t].warden_llr);
  }
  LinkOptions shared;
  shared.reuse_codebook = true;
  const auto c = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::ml(), {95, 64, 1}, shared);
  const auto d = run_link_trials(p, rician(), FadingModel::rayleigh(2, 2), 4, Decoder::ml(), {95, 64, 3}, shared);
  CHECK(c.error_rate.value == d.error_rate.value);
}

TEST_CASE("true-codeword statistic follows the T-product law") {
  auto p = CovertParams::with_defaults(200, 0.01, 1.0, 1.0, SystemDims{1, 1, 1});
  p.gain = GainConvention::kEigenvalue;
  const auto model_b = FadingModel::rician(10.0, ComplexMatrix::Ones(1, 1));
  const auto link = run_link_trials(p, model_b, FadingModel::rayleigh(1, 1), 1, Decoder::ml(), {96, 3000, 1});
  std::vector<double> observed;
  for (const auto& t : link.trials) observed.push_back(std::log(t.sin_sq_true));
  std::sort(observed.begin(), observed.end());
  auto law = sample_log_T_products(p, model_b, {97, 3000, 1});
  std::sort(law.begin(), law.end());
  CHECK(ks_pvalue(ks_two_sample(observed, law), 1500.0) > 0.01);
}

TEST_CASE("multi-antenna statistic carries the extra noise dimensions") {
  // Each receive column also captures N_a - 1 noise dimensions inside the codeword span.
  auto p = params(200, 1.0);
  p.gain = GainConvention::kEigenvalue;
  const auto model_b = rician();
  const auto link = run_link_trials(p, model_b, FadingModel::rayleigh(2, 2), 1, Decoder::ml(), {98, 3000, 1});
  MeanAccumulator observed, law;
  for (const auto& t : link.trials) observed.add(std::log(t.sin_sq_true));
  for (double v : sample_log_T_products(p, model_b, {99, 3000, 1})) law.add(v);
  const double bias = -2.0 * (2 - 1) / static_cast<double>(200 - 2);
  const double se = std::sqrt(observed.variance() / 3000 + law.variance() / 3000);
  CHECK(std::abs(observed.mean() - law.mean() - bias) <= 3.0 * se);
}
