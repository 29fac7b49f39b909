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

#include "qscovert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qscovert/errors.hpp"

namespace qscovert {
namespace {

void require_full_rank(const ComplexMatrix& m, const LinalgTolerances& tol, const char* name) {
  auto sv = singular_values(m);
  if (sv.front() <= 0.0 || sv.back() <= tol.rank_rel * sv.front()) {
    fail(ErrorKind::kDegenerateSpan, std::string(name) + " does not have full column rank");
  }
}

void require_hermitian(const ComplexMatrix& m, const LinalgTolerances& tol) {
  require_valid(m, "hermitian matrix");
  require(m.rows() == m.cols(), ErrorKind::kDimensionMismatch, "matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= tol.hermitian * scale, ErrorKind::kDomain, "matrix is not Hermitian");
}

}  // namespace

void require_valid(const ComplexMatrix& m, const char* name) {
  if (m.rows() < 1 || m.cols() < 1) {
    fail(ErrorKind::kInvalidInput, std::string(name) + " is empty");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        fail(ErrorKind::kInvalidInput, std::string(name) + " has non-finite entries");
      }
    }
  }
}

double frobenius_norm(const ComplexMatrix& m) {
  require_valid(m);
  return m.norm();
}

double spectral_norm(const ComplexMatrix& m) { return singular_values(m).front(); }

std::vector<double> singular_values(const ComplexMatrix& m) {
  require_valid(m);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

ComplexMatrix orthonormalize(const ComplexMatrix& m, const LinalgTolerances& tol) {
  require_valid(m);
  require(m.cols() <= m.rows(), ErrorKind::kDegenerateSpan, "more columns than rows");
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  const ComplexMatrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  require_full_rank(r, tol, "input");
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
  return q;
}

PrincipalAngles principal_angles(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const LinalgTolerances& tol) {
  require_valid(a, "a");
  require_valid(b, "b");
  require(a.rows() == b.rows(), ErrorKind::kDimensionMismatch, "row counts differ");
  require(a.cols() <= b.cols(), ErrorKind::kDimensionMismatch, "cols(a) must not exceed cols(b)");
  const ComplexMatrix qa = orthonormalize(a, tol);
  const ComplexMatrix qb = orthonormalize(b, tol);
  const auto cosines = singular_values(qa.adjoint() * qb);
  PrincipalAngles out;
  out.angles.reserve(cosines.size());
  for (double c : cosines) {
    double theta = std::acos(std::clamp(c, 0.0, 1.0));
    if (theta < tol.zero_angle) theta = 0.0;
    out.angles.push_back(theta);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

double subspace_sin_sq_orthonormal(const ComplexMatrix& qa, const ComplexMatrix& qb) {
  const ComplexMatrix e = qa - qb * (qb.adjoint() * qa);
  const ComplexMatrix g = e.adjoint() * e;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  double prod = 1.0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    prod *= std::clamp(es.eigenvalues()(j), 0.0, 1.0);
  }
  return prod;
}

double subspace_sin_sq(const ComplexMatrix& a, const ComplexMatrix& b, const LinalgTolerances& tol) {
  require_valid(a, "a");
  require_valid(b, "b");
  require(a.rows() == b.rows(), ErrorKind::kDimensionMismatch, "row counts differ");
  require(a.cols() <= b.cols(), ErrorKind::kDimensionMismatch, "cols(a) must not exceed cols(b)");
  return subspace_sin_sq_orthonormal(orthonormalize(a, tol), orthonormalize(b, tol));
}

GsvdResult gsvd(const ComplexMatrix& h_b, const ComplexMatrix& h_w, const LinalgTolerances& tol) {
  require_valid(h_b, "h_b");
  require_valid(h_w, "h_w");
  const Eigen::Index na = h_b.rows();
  const Eigen::Index nb = h_b.cols();
  const Eigen::Index nw = h_w.cols();
  require(h_w.rows() == na, ErrorKind::kDimensionMismatch, "h_b and h_w row counts differ");
  require(na <= nb && na <= nw, ErrorKind::kDimensionMismatch, "need N_a <= N_b and N_a <= N_w");

  ComplexMatrix stacked(nb + nw, na);
  stacked.topRows(nb) = h_b.adjoint();
  stacked.bottomRows(nw) = h_w.adjoint();
  Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
  const ComplexMatrix r = qr.matrixQR().topRows(na).triangularView<Eigen::Upper>();
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(nb + nw, na);

  Eigen::JacobiSVD<ComplexMatrix> svd(q.topRows(nb), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd c = svd.singularValues();
  const ComplexMatrix& z = svd.matrixV();
  ComplexMatrix u_w = q.bottomRows(nw) * z;
  Eigen::VectorXd s(na);
  for (Eigen::Index j = 0; j < na; ++j) {
    s(j) = u_w.col(j).norm();
  }
  const double scale = std::max(c.maxCoeff(), s.maxCoeff());
  require(c.minCoeff() > tol.rank_rel * scale && s.minCoeff() > tol.rank_rel * scale,
          ErrorKind::kDegenerateSpan, "h_b and h_w must both have rank N_a");
  for (Eigen::Index j = 0; j < na; ++j) u_w.col(j) /= s(j);

  ComplexMatrix l = r.adjoint() * z;
  GsvdResult out;
  out.lambda_b.resize(na);
  out.lambda_w.resize(na);
  for (Eigen::Index j = 0; j < na; ++j) {
    const double d = l.col(j).norm();
    require(d > 0.0, ErrorKind::kDegenerateSpan, "stacked matrix is rank deficient");
    l.col(j) /= d;
    out.lambda_b[j] = d * c(j);
    out.lambda_w[j] = d * s(j);
  }
  out.l = std::move(l);
  out.v_b = svd.matrixU();
  out.v_w = std::move(u_w);
  return out;
}

std::vector<double> psd_eigenvalues(const ComplexMatrix& m, const LinalgTolerances& tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  if (out.front() < -tol.psd_negative) {
    fail(ErrorKind::kDomain, "matrix is not positive semidefinite");
  }
  for (double& x : out) x = std::max(x, 0.0);
  return out;
}

double logdet_psd(const ComplexMatrix& m, const LinalgTolerances& tol) {
  double sum = 0.0;
  for (double x : psd_eigenvalues(m, tol)) sum += std::log(x);
  return sum;
}

}  // namespace qscovert
