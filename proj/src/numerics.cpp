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

#include "lis/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lis/errors.hpp"

#include <lapacke.h>

namespace lis::numerics
{

namespace
{

void require_square(const CMatrix &A, const char *what)
{
    if (A.rows() != A.cols())
        throw DimensionError(std::string(what) + ": matrix must be square, got " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()));
}

// Hermitian check scaled by the largest entry once it exceeds one, so that accumulated
// Gram matrices with large entries are judged on relative rounding.
void require_hermitian(const CMatrix &A, const char *what)
{
    require_square(A, what);
    require_finite(A, what);
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    const double dev = hermitian_deviation(A);
    if (dev > kOrthTol * scale)
        throw DomainError(std::string(what) + ": input is not Hermitian (max deviation " + std::to_string(dev) + ")");
}

} // namespace

double hermitian_deviation(const CMatrix &A)
{
    if (A.rows() != A.cols())
        return std::numeric_limits<double>::infinity();
    if (A.size() == 0)
        return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix &A)
{
    return (A + A.adjoint()) * 0.5;
}

double orthonormality_error(const CMatrix &Q)
{
    if (Q.cols() == 0)
        return 0.0;
    const CMatrix gram = Q.adjoint() * Q;
    return (gram - CMatrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
}

void require_finite(const CMatrix &A, const char *what)
{
    if (!A.allFinite())
        throw DomainError(std::string(what) + ": non-finite entry");
}

EigDecomp hermitian_eig(const CMatrix &A)
{
    require_hermitian(A, "hermitian_eig");
    const Eigen::Index n = A.rows();
    if (n == 0)
        return {CMatrix(0, 0), RVector(0)};

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(A);
    if (solver.info() != Eigen::Success)
        throw DomainError("hermitian_eig: eigen-solver did not converge");

    // Solver returns ascending values; reorder descending, stable among ties.
    const RVector &asc = solver.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return asc(a) > asc(b); });

    EigDecomp out{CMatrix(n, n), RVector(n)};
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const auto src = order[static_cast<std::size_t>(i)];
        out.values(i) = asc(src);
        out.basis.col(i) = solver.eigenvectors().col(src);
    }
    return out;
}

SvdDecomp svd(const CMatrix &A)
{
    require_finite(A, "svd");
    const Eigen::Index k = std::min(A.rows(), A.cols());
    if (k == 0)
        return {CMatrix(A.rows(), 0), RVector(0), CMatrix(A.cols(), 0)};

    // Divide-and-conquer driver; it reduces tall or wide inputs by QR internally.
    CMatrix work = A;
    SvdDecomp out{CMatrix(A.rows(), k), RVector(k), CMatrix(k, A.cols())};
    const auto m = static_cast<lapack_int>(A.rows());
    const auto n = static_cast<lapack_int>(A.cols());
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', m, n, reinterpret_cast<lapack_complex_double *>(work.data()), m,
        out.singulars.data(), reinterpret_cast<lapack_complex_double *>(out.left.data()), m,
        reinterpret_cast<lapack_complex_double *>(out.right.data()), static_cast<lapack_int>(k));
    if (info != 0)
        throw DomainError("svd: LAPACK zgesdd failed with info " + std::to_string(info));
    // zgesdd returns V^H; singular values come out descending.
    out.right.adjointInPlace();
    return out;
}

double logdet2_hpd(const CMatrix &A)
{
    require_hermitian(A, "logdet2_hpd");
    if (A.rows() == 0)
        return 0.0;

    Eigen::LLT<CMatrix> llt(A);
    if (llt.info() != Eigen::Success)
        throw DomainError("logdet2_hpd: matrix is not positive-definite");

    const CMatrix &L = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < L.rows(); ++i)
    {
        const double pivot = L(i, i).real();
        if (!(pivot > 0.0))
            throw DomainError("logdet2_hpd: non-positive Cholesky pivot");
        acc += std::log2(pivot);
    }
    return 2.0 * acc;
}

CMatrix orthonormal_range(const CMatrix &A, double rank_tol)
{
    if (!(rank_tol > 0.0))
        throw DomainError("orthonormal_range: rank_tol must be positive");
    const SvdDecomp d = svd(A);
    if (d.singulars.size() == 0 || d.singulars(0) <= 0.0)
        return CMatrix(A.rows(), 0);

    const double cutoff = rank_tol * d.singulars(0);
    Eigen::Index r = 0;
    while (r < d.singulars.size() && d.singulars(r) > cutoff)
        ++r;
    return d.left.leftCols(r);
}

CMatrix inv_sqrt_hpd(const CMatrix &A)
{
    const EigDecomp e = hermitian_eig(A);
    if (e.values.size() == 0)
        return CMatrix(0, 0);
    if (!(e.values.minCoeff() > 0.0))
        throw DomainError("inv_sqrt_hpd: matrix is not positive-definite");

    const RVector scale = e.values.cwiseSqrt().cwiseInverse();
    const CMatrix B = e.basis * scale.asDiagonal() * e.basis.adjoint();
    return hermitian_part(B);
}

CMatrix projector(const CMatrix &Q)
{
    return hermitian_part(Q * Q.adjoint());
}

double relative_error(const CMatrix &reference, const CMatrix &candidate)
{
    const double denom = std::max(reference.norm(), std::numeric_limits<double>::min());
    return (reference - candidate).norm() / denom;
}

} // namespace lis::numerics
