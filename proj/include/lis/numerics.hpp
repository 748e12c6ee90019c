// SPDX-License-Identifier: Apache-2.0
//
// lis-uplink: uplink detection simulator for panelized large intelligent surfaces
// Copyright (C) 2026 The lis-uplink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lis
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace numerics
{

/// Max absolute entry deviation allowed for Hermitian inputs and for Q^H Q = I checks.
inline constexpr double kOrthTol = 1e-10;

/// Default relative cut-off for orthonormal_range().
inline constexpr double kDefaultRankTol = 1e-10;

/// Eigen-decomposition of a Hermitian matrix, A = basis * diag(values) * basis^H.
/// Values are sorted descending; ties keep the order produced by the solver.
struct EigDecomp
{
    CMatrix basis;
    RVector values;
};

/// Thin SVD, A = left * diag(singulars) * right^H, singulars sorted descending.
struct SvdDecomp
{
    CMatrix left;
    RVector singulars;
    CMatrix right;
};

/// Largest |A(i,j) - conj(A(j,i))|; +inf for non-square input.
double hermitian_deviation(const CMatrix &A);

/// (A + A^H) / 2. Used to remove rounding asymmetry from accumulated Gram matrices.
CMatrix hermitian_part(const CMatrix &A);

/// Largest |Q^H Q - I| entry.
double orthonormality_error(const CMatrix &Q);

/// Throws DomainError if any entry is NaN or infinite.
void require_finite(const CMatrix &A, const char *what);

EigDecomp hermitian_eig(const CMatrix &A);

SvdDecomp svd(const CMatrix &A);

/// log2 det(A) for Hermitian positive-definite A, via Cholesky (never forms det(A)).
double logdet2_hpd(const CMatrix &A);

/// Orthonormal basis (m x r) of col(A); r counts singular values above rank_tol * s_max.
/// A zero matrix yields an m x 0 basis.
CMatrix orthonormal_range(const CMatrix &A, double rank_tol = kDefaultRankTol);

/// Hermitian B with B * A * B = I for Hermitian positive-definite A.
CMatrix inv_sqrt_hpd(const CMatrix &A);

/// Q * Q^H for a semi-unitary Q.
CMatrix projector(const CMatrix &Q);

/// Relative Frobenius error ||A - B|| / max(||A||, tiny).
double relative_error(const CMatrix &reference, const CMatrix &candidate);

} // namespace numerics
} // namespace lis
