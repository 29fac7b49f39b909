#include <cmath>
#include <vector>

#include "doctest.h"
#include "qscovert/channels.hpp"
#include "test_helpers.hpp"

using namespace qscovert;

namespace {

struct ZeroSource {
  Complex complex_normal() { return {0.0, 0.0}; }
};

}  // namespace

TEST_CASE("system dims validation") {
  SystemDims d;
  CHECK_NOTHROW(d.validate());
  d.n_b = 0;
  CHECK_THROWS_AS(d.validate(), Error);
}

TEST_CASE("fixed model returns its matrix") {
  auto r = testing::stream(31);
  const ComplexMatrix h = testing::random_matrix(2, 3, r);
  const auto model = FadingModel::fixed(h);
  CHECK(model.is_fixed());
  CHECK(model.rows() == 2);
  CHECK(model.cols() == 3);
  CHECK(sample_fading(model, r) == h);
}

TEST_CASE("rayleigh entry moments") {
  const auto model = FadingModel::rayleigh(2, 2);
  auto r = testing::stream(32);
  const int n = 100000;
  std::vector<Complex> sum(4, 0.0);
  std::vector<double> sum_sq(4, 0.0);
  for (int t = 0; t < n; ++t) {
    const ComplexMatrix h = sample_fading(model, r);
    for (int k = 0; k < 4; ++k) {
      sum[k] += h(k / 2, k % 2);
      sum_sq[k] += std::norm(h(k / 2, k % 2));
    }
  }
  for (int k = 0; k < 4; ++k) {
    const Complex mean = sum[k] / static_cast<double>(n);
    CHECK(std::abs(mean) <= 0.02);
    const double var = sum_sq[k] / n - std::norm(mean);
    CHECK(var >= 0.98);
    CHECK(var <= 1.02);
  }
}

TEST_CASE("rician line-of-sight limit") {
  ComplexMatrix los = ComplexMatrix::Constant(2, 2, Complex(1, 0));
  los(0, 1) = Complex(0, 1);
  const auto model = FadingModel::rician(1e9, los);
  auto r = testing::stream(33);
  for (int t = 0; t < 100; ++t) {
    CHECK((sample_fading(model, r) - los).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("nakagami power law") {
  const double m = 2.0, upsilon = 1.5;
  const auto model = FadingModel::nakagami(m, upsilon, 2, 2);
  auto r = testing::stream(34);
  MeanAccumulator p;
  Complex mean = 0.0;
  const int n = 50000;
  for (int t = 0; t < n; ++t) {
    const ComplexMatrix h = sample_fading(model, r);
    p.add(std::norm(h(0, 1)));
    mean += h(0, 1);
  }
  CHECK(std::abs(p.mean() - upsilon) < 4.0 * std::sqrt(upsilon * upsilon / m / n));
  CHECK(p.variance() == doctest::Approx(upsilon * upsilon / m).epsilon(0.05));
  CHECK(std::abs(mean / static_cast<double>(n)) < 0.02);
}

TEST_CASE("invalid fading parameters") {
  CHECK_THROWS_AS(FadingModel::rayleigh(0, 2), Error);
  CHECK_THROWS_AS(FadingModel::nakagami(0.3, 1.0, 2, 2), Error);
  CHECK_THROWS_AS(FadingModel::rician(-1.0, ComplexMatrix::Ones(2, 2)), Error);
}

TEST_CASE("noise variance and decorrelation") {
  auto r = testing::stream(35);
  const ComplexMatrix z = sample_noise(1000, 1000, r);
  const double var = z.cwiseAbs2().sum() / 1e6;
  CHECK(var >= 0.995);
  CHECK(var <= 1.005);
  CHECK(std::abs(z.sum() / 1e6) < 0.005);

  Complex cross = 0.0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const ComplexMatrix w = sample_noise(1, 2, r);
    cross += w(0, 0) * std::conj(w(0, 1));
  }
  CHECK(std::abs(cross) / n <= 0.01);
}

TEST_CASE("transmit") {
  auto r = testing::stream(36);
  const ComplexMatrix x = testing::random_matrix(20, 2, r);
  const ComplexMatrix h = testing::random_matrix(2, 3, r);
  ZeroSource zero;
  CHECK((transmit(x, h, zero) - x * h).cwiseAbs().maxCoeff() == 0.0);

  const ComplexMatrix y0 = transmit(ComplexMatrix::Zero(5000, 2), h, r);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(y0.col(j).squaredNorm() / 5000.0 == doctest::Approx(1.0).epsilon(0.06));
  }

  MeanAccumulator err;
  for (int t = 0; t < 10000; ++t) err.add((transmit(x, h, r) - x * h).squaredNorm());
  const double se = std::sqrt(err.variance() / err.count());
  CHECK(std::abs(err.mean() - 60.0) <= 3.0 * se);

  CHECK_THROWS_AS(transmit(x, testing::random_matrix(3, 3, r), r), Error);
}

TEST_CASE("uncertainty set") {
  CHECK(in_uncertainty_set(ComplexMatrix::Identity(2, 2), 1.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 0.1;
  CHECK_FALSE(in_uncertainty_set(d, 1.0));
  const auto norms = sample_spectral_norms(FadingModel::rayleigh(2, 2), {38, 10000, 1});
  std::size_t inside = 0;
  for (double s : norms) inside += s <= 5.0 ? 1 : 0;
  CHECK(static_cast<double>(inside) / norms.size() >= 0.999);
}

TEST_CASE("spectral tail threshold is the order statistic") {
  const auto model = FadingModel::rician(10.0, ComplexMatrix::Ones(2, 2));
  const McOptions mc{39, 20000, 1};
  const auto norms = sample_spectral_norms(model, mc);
  CHECK(spectral_tail_threshold(model, 1e-3, mc) == quantile(norms, 1.0 - 1e-3));
  CHECK(spectral_tail_threshold(model, 1e-3, {39, 20000, 4}) == spectral_tail_threshold(model, 1e-3, mc));
  CHECK(spectral_tail_threshold(model, 1e-2, mc) < spectral_tail_threshold(model, 1e-3, mc));
  CHECK_THROWS_AS(spectral_tail_threshold(model, 1e-6, mc), Error);
}
