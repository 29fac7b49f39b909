#include <cmath>
#include <vector>

#include "doctest.h"
#include "qscovert/errors.hpp"
#include "qscovert/linalg.hpp"
#include "test_helpers.hpp"

using namespace qscovert;
using testing::deg;

namespace {

// Eigenvalues of a 2x2 Hermitian matrix from its characteristic polynomial.
std::pair<double, double> eig2(const ComplexMatrix& g) {
  const double tr = (g(0, 0) + g(1, 1)).real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

Complex det3(const ComplexMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

TEST_CASE("spectral norm") {
  CHECK(spectral_norm(ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 4;
  CHECK(spectral_norm(d) == doctest::Approx(4.0));
  auto r = testing::stream(21);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix m = testing::random_matrix(3, 2, r);
    const auto [l1, l2] = eig2(m.adjoint() * m);
    CHECK(spectral_norm(m) == doctest::Approx(std::sqrt(l1)).epsilon(1e-10));
    const auto sv = singular_values(m);
    REQUIRE(sv.size() == 2);
    CHECK(sv[1] == doctest::Approx(std::sqrt(l2)).epsilon(1e-9));
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(l1 + l2)).epsilon(1e-10));
  }
}

TEST_CASE("non-finite input is rejected") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = Complex(std::nan(""), 0);
  try {
    spectral_norm(m);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
}

TEST_CASE("singular values") {
  const auto i2 = singular_values(ComplexMatrix::Identity(2, 2));
  CHECK(i2[0] == doctest::Approx(1.0));
  CHECK(i2[1] == doctest::Approx(1.0));
  Eigen::VectorXcd u(3), v(2);
  u << Complex(1, 1), Complex(0, 2), Complex(-1, 0);
  v << Complex(3, 0), Complex(0, -4);
  const auto sv = singular_values(u * v.adjoint());
  CHECK(sv[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
  CHECK(std::abs(sv[1]) < 1e-12);
}

TEST_CASE("orthonormalize") {
  const ComplexMatrix q = orthonormalize(ComplexMatrix::Identity(3, 3));
  CHECK((q - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

  auto r = testing::stream(22);
  const ComplexMatrix m = testing::random_matrix(6, 3, r);
  const ComplexMatrix qm = orthonormalize(m);
  CHECK((qm.adjoint() * qm - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((qm * (qm.adjoint() * m) - m).norm() < 1e-10 * m.norm());

  ComplexMatrix deficient(4, 2);
  deficient.col(0) = m.col(0).head(4);
  deficient.col(1) = Complex(2, -1) * m.col(0).head(4);
  try {
    orthonormalize(deficient);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateSpan);
  }
}

TEST_CASE("example 4 span is preserved") {
  const ComplexMatrix x = testing::example4_x();
  const ComplexMatrix q = orthonormalize(x);
  CHECK((q.adjoint() * q - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((q * (q.adjoint() * x) - x).norm() < 1e-12);
  CHECK(subspace_sin_sq(q, x) < 1e-20);
}

TEST_CASE("principal angles trivial cases") {
  auto r = testing::stream(23);
  const ComplexMatrix a = testing::random_matrix(5, 2, r);
  for (double t : principal_angles(a, a).angles) CHECK(t == 0.0);
  const ComplexMatrix i6 = ComplexMatrix::Identity(6, 6);
  const auto orth = principal_angles(i6.leftCols(3), i6.middleCols(3, 3)).angles;
  REQUIRE(orth.size() == 3);
  for (double t : orth) CHECK(t == doctest::Approx(M_PI / 2));
  CHECK(subspace_sin_sq(a, a) < 1e-20);
  CHECK(subspace_sin_sq(i6.leftCols(3), i6.middleCols(3, 3)) == doctest::Approx(1.0));
}

TEST_CASE("principal angles agree with the sine product") {
  auto r = testing::stream(24);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = testing::random_matrix(6, 2, r);
    const ComplexMatrix b = testing::random_matrix(6, 2, r);
    const auto ang = principal_angles(a, b).angles;
    CHECK(ang[0] <= ang[1]);
    double prod = 1.0;
    for (double t : ang) prod *= std::sin(t) * std::sin(t);
    CHECK(subspace_sin_sq(a, b) == doctest::Approx(prod).epsilon(1e-8));
    CHECK(subspace_sin_sq(a, b) == doctest::Approx(subspace_sin_sq(b, a)).epsilon(1e-10));
  }
}

TEST_CASE("example 4 principal angles, projection and statistic") {
  const ComplexMatrix qx = orthonormalize(testing::example4_x());
  const ComplexMatrix qy = orthonormalize(testing::example4_y());
  const auto ang = principal_angles(qx, qy).angles;
  REQUIRE(ang.size() == 2);
  CHECK(std::abs(deg(ang[0]) - 3.97) <= 0.05);
  CHECK(std::abs(deg(ang[1]) - 26.17) <= 0.05);
  const auto sv = singular_values(qx.adjoint() * qy);
  CHECK(std::abs(sv[0] - 0.998) <= 0.002);
  CHECK(std::abs(sv[1] - 0.898) <= 0.002);
  const double s = subspace_sin_sq(testing::example4_x(), testing::example4_y());
  CHECK(std::abs(s - 1.0e-3) <= 2.0e-4);
}

TEST_CASE("gsvd trivial and diagonal cases") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const auto g = gsvd(i2, i2);
  CHECK((g.l.cwiseAbs() - i2.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
  for (double v : g.lambda_b) CHECK(v == doctest::Approx(1.0));
  for (double v : g.lambda_w) CHECK(v == doctest::Approx(1.0));

  ComplexMatrix hb = ComplexMatrix::Zero(2, 2);
  hb(0, 0) = 2;
  hb(1, 1) = 3;
  const auto d = gsvd(hb, i2);
  std::vector<double> lb = d.lambda_b;
  std::sort(lb.begin(), lb.end());
  const double scale = lb[0] / 2.0;
  CHECK(lb[1] / scale == doctest::Approx(3.0));
}

TEST_CASE("gsvd reconstruction on random pairs") {
  auto r = testing::stream(25);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix hb = testing::random_matrix(2, 3, r);
    const ComplexMatrix hw = testing::random_matrix(2, 2, r);
    const auto g = gsvd(hb, hw);
    Eigen::VectorXd lb = Eigen::Map<const Eigen::VectorXd>(g.lambda_b.data(), g.lambda_b.size());
    Eigen::VectorXd lw = Eigen::Map<const Eigen::VectorXd>(g.lambda_w.data(), g.lambda_w.size());
    const ComplexMatrix rb = g.l * lb.cast<Complex>().asDiagonal() * g.v_b.adjoint();
    const ComplexMatrix rw = g.l * lw.cast<Complex>().asDiagonal() * g.v_w.adjoint();
    CHECK((rb - hb).norm() <= 1e-8 * hb.norm());
    CHECK((rw - hw).norm() <= 1e-8 * hw.norm());
    for (Eigen::Index j = 0; j < g.l.cols(); ++j) CHECK(g.l.col(j).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("gsvd rank deficiency") {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1;
  CHECK_THROWS_AS(gsvd(z, z), Error);
}

TEST_CASE("logdet_psd") {
  CHECK(logdet_psd(ComplexMatrix::Identity(3, 3)) == doctest::Approx(0.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = 1.25;
  CHECK(logdet_psd(d) == doctest::Approx(std::log(1.5) + std::log(1.25)));
  auto r = testing::stream(26);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix a2 = testing::random_matrix(4, 2, r);
    const ComplexMatrix g2 = a2.adjoint() * a2 + ComplexMatrix::Identity(2, 2);
    const auto [l1, l2] = eig2(g2);
    CHECK(logdet_psd(g2) == doctest::Approx(std::log(l1 * l2)).epsilon(1e-10));
    const ComplexMatrix a3 = testing::random_matrix(5, 3, r);
    const ComplexMatrix g3 = a3.adjoint() * a3;
    CHECK(logdet_psd(g3) == doctest::Approx(std::log(det3(g3).real())).epsilon(1e-10));
  }
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(1, 1) = -0.5;
  try {
    logdet_psd(neg);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
}

TEST_CASE("psd eigenvalues ascending") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 5;
  d(1, 1) = 1;
  d(2, 2) = 3;
  const auto e = psd_eigenvalues(d);
  CHECK(e[0] == doctest::Approx(1));
  CHECK(e[1] == doctest::Approx(3));
  CHECK(e[2] == doctest::Approx(5));
}
