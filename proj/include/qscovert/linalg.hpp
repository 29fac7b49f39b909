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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qscovert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct LinalgTolerances {
  double rank_rel = 1e-12;     // smallest/largest singular value for full rank
  double hermitian = 1e-10;    // ||m - m^H||_max relative to max(1, ||m||_max)
  double psd_negative = 1e-10; // eigenvalues below -psd_negative are rejected
  double zero_angle = 1e-7;    // principal angles below this are reported as 0
};

struct GsvdResult {
  ComplexMatrix l;
  std::vector<double> lambda_b;
  ComplexMatrix v_b;
  std::vector<double> lambda_w;
  ComplexMatrix v_w;
};

struct PrincipalAngles {
  std::vector<double> angles;  // ascending, radians
};

/// Throws kInvalidInput for empty matrices or non-finite entries.
void require_valid(const ComplexMatrix& m, const char* name = "matrix");

double frobenius_norm(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);

/// Descending, length min(rows, cols).
std::vector<double> singular_values(const ComplexMatrix& m);

/// Orthonormal basis (rows x cols) of the column span.
ComplexMatrix orthonormalize(const ComplexMatrix& m, const LinalgTolerances& tol = {});

PrincipalAngles principal_angles(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const LinalgTolerances& tol = {});

/// Product of sin^2 over the principal angles.
double subspace_sin_sq(const ComplexMatrix& a, const ComplexMatrix& b,
                       const LinalgTolerances& tol = {});

/// Same statistic for inputs that are already orthonormal bases.
double subspace_sin_sq_orthonormal(const ComplexMatrix& qa, const ComplexMatrix& qb);

/// h_b = L diag(lambda_b) V_b^H and h_w = L diag(lambda_w) V_w^H.
GsvdResult gsvd(const ComplexMatrix& h_b, const ComplexMatrix& h_w,
                const LinalgTolerances& tol = {});

double logdet_psd(const ComplexMatrix& m, const LinalgTolerances& tol = {});

/// Ascending eigenvalues of a Hermitian PSD matrix, clamped at 0.
std::vector<double> psd_eigenvalues(const ComplexMatrix& m, const LinalgTolerances& tol = {});

}  // namespace qscovert
