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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lis/errors.hpp"
#include "lis/numerics.hpp"
#include "support/oracles.hpp"

using namespace lis;
using namespace lis::numerics;
using Catch::Approx;

namespace
{

CMatrix diag2(double a, double b)
{
    CMatrix A = CMatrix::Zero(2, 2);
    A(0, 0) = a;
    A(1, 1) = b;
    return A;
}

CMatrix sym_2112()
{
    CMatrix A(2, 2);
    A << 2.0, 1.0, 1.0, 2.0;
    return A;
}

} // namespace

TEST_CASE("hermitian_eig - identity, diagonal and 2x2 symmetric")
{
    const auto id = hermitian_eig(CMatrix::Identity(2, 2));
    CHECK(id.values(0) == Approx(1.0));
    CHECK(id.values(1) == Approx(1.0));
    CHECK(orthonormality_error(id.basis) < kOrthTol);

    const auto d = hermitian_eig(diag2(4.0, 2.0));
    CHECK(d.values(0) == Approx(4.0));
    CHECK(d.values(1) == Approx(2.0));
    // Columns are the canonical vectors up to phase.
    CHECK(std::abs(d.basis(0, 0)) == Approx(1.0));
    CHECK(std::abs(d.basis(1, 1)) == Approx(1.0));

    // Characteristic polynomial (2 - l)^2 - 1 = 0 -> l = 3, 1.
    const auto s = hermitian_eig(sym_2112());
    CHECK(s.values(0) == Approx(3.0).margin(1e-12));
    CHECK(s.values(1) == Approx(1.0).margin(1e-12));

    // Ascending diagonal input comes back descending.
    const auto asc = hermitian_eig(diag2(1.0, 5.0));
    CHECK(asc.values(0) == Approx(5.0));
    CHECK(std::abs(asc.basis(1, 0)) == Approx(1.0));
}

TEST_CASE("hermitian_eig - rejects non-Hermitian input")
{
    CMatrix A(2, 2);
    A << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_eig(A), DomainError);
    CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), DimensionError);

    CMatrix B = CMatrix::Identity(2, 2);
    B(0, 1) = cdouble(0.0, 1e-12); // within tolerance
    CHECK_NOTHROW(hermitian_eig(B));
}

TEST_CASE("svd - zero, diagonal and unit column")
{
    const auto z = svd(CMatrix::Zero(2, 2));
    CHECK(z.singulars(0) == 0.0);
    CHECK(z.singulars(1) == 0.0);

    const auto d = svd(diag2(3.0, 1.0));
    CHECK(d.singulars(0) == Approx(3.0));
    CHECK(d.singulars(1) == Approx(1.0));

    CMatrix e1(2, 1);
    e1 << 1.0, 0.0;
    const auto u = svd(e1);
    REQUIRE(u.singulars.size() == 1);
    CHECK(u.singulars(0) == Approx(1.0));
    CHECK(std::abs(u.left(0, 0)) == Approx(1.0));
    CHECK(std::abs(u.left(1, 0)) == Approx(0.0).margin(1e-15));

    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), DomainError);
}

TEST_CASE("logdet2_hpd - identity, diagonal and cofactor oracle")
{
    CHECK(logdet2_hpd(CMatrix::Identity(5, 5)) == Approx(0.0).margin(1e-15));
    CHECK(logdet2_hpd(diag2(4.0, 2.0)) == Approx(3.0).margin(1e-14));
    // det = 2*2 - 1*1 = 3
    CHECK(logdet2_hpd(sym_2112()) == Approx(std::log2(3.0)).margin(1e-14));
    CHECK(logdet2_hpd(sym_2112()) == Approx(1.584963).margin(1e-6));
}

TEST_CASE("logdet2_hpd - rejects indefinite input")
{
    CHECK_THROWS_AS(logdet2_hpd(diag2(1.0, -1.0)), DomainError);
    CHECK_THROWS_AS(logdet2_hpd(diag2(1.0, 0.0)), DomainError);
    CMatrix A(2, 2);
    A << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3, -1
    CHECK_THROWS_AS(logdet2_hpd(A), DomainError);
}

TEST_CASE("orthonormal_range - rank detection")
{
    CMatrix A(2, 2);
    A << 1.0, 2.0, 0.0, 0.0;
    const CMatrix q = orthonormal_range(A);
    REQUIRE(q.cols() == 1);
    CHECK(std::abs(q(0, 0)) == Approx(1.0));
    CHECK(std::abs(q(1, 0)) == Approx(0.0).margin(1e-15));

    const CMatrix i3 = orthonormal_range(CMatrix::Identity(3, 3));
    CHECK(i3.cols() == 3);
    CHECK(relative_error(CMatrix::Identity(3, 3), projector(i3)) < 1e-14);

    // Two identical unit columns [1,1]^T / sqrt(2): singular values (sqrt(2), 0).
    CMatrix dup(2, 2);
    dup.setConstant(1.0 / std::sqrt(2.0));
    const auto sv = svd(dup);
    CHECK(sv.singulars(0) == Approx(std::sqrt(2.0)));
    CHECK(sv.singulars(1) == Approx(0.0).margin(1e-15));
    CHECK(orthonormal_range(dup).cols() == 1);

    CHECK(orthonormal_range(CMatrix::Zero(4, 2)).cols() == 0);
    CHECK(orthonormal_range(CMatrix::Zero(4, 2)).rows() == 4);
    CHECK_THROWS_AS(orthonormal_range(A, 0.0), DomainError);
}

TEST_CASE("inv_sqrt_hpd - defining identity")
{
    CHECK(relative_error(CMatrix::Identity(3, 3), inv_sqrt_hpd(CMatrix::Identity(3, 3))) < 1e-15);
    const CMatrix b = inv_sqrt_hpd(diag2(4.0, 9.0));
    CHECK(b(0, 0).real() == Approx(0.5));
    CHECK(b(1, 1).real() == Approx(1.0 / 3.0));
    CHECK(std::abs(b(0, 1)) == Approx(0.0).margin(1e-15));

    const CMatrix a = sym_2112();
    const CMatrix c = inv_sqrt_hpd(a);
    CHECK(relative_error(CMatrix::Identity(2, 2), c * a * c) < 1e-9);
    CHECK(hermitian_deviation(c) == 0.0);
    CHECK_THROWS_AS(inv_sqrt_hpd(diag2(1.0, 0.0)), DomainError);
}

TEST_CASE("numerics properties on random inputs")
{
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 100; ++trial)
    {
        const CMatrix A = testing::random_gaussian(8, 8, rng);
        const auto s = svd(A);
        const CMatrix rec = s.left * s.singulars.asDiagonal() * s.right.adjoint();
        REQUIRE(relative_error(A, rec) <= 1e-9);
        REQUIRE(orthonormality_error(s.left) <= kOrthTol);
        REQUIRE(orthonormality_error(s.right) <= kOrthTol);
        for (Eigen::Index i = 1; i < s.singulars.size(); ++i)
            REQUIRE(s.singulars(i - 1) >= s.singulars(i));

        const CMatrix H = testing::random_hpd(8, rng);
        const auto e = hermitian_eig(H);
        const CMatrix erec = e.basis * e.values.asDiagonal() * e.basis.adjoint();
        REQUIRE(relative_error(H, erec) <= 1e-9);
        REQUIRE(orthonormality_error(e.basis) <= kOrthTol);
        for (Eigen::Index i = 1; i < e.values.size(); ++i)
            REQUIRE(e.values(i - 1) >= e.values(i));

        // log-determinant against the eigenvalue sum and against LU.
        double eig_sum = 0.0;
        for (Eigen::Index i = 0; i < e.values.size(); ++i)
            eig_sum += std::log2(e.values(i));
        const double ld = logdet2_hpd(H);
        REQUIRE(std::abs(ld - eig_sum) <= 1e-9);
        REQUIRE(std::abs(ld - testing::log2_abs_det_lu(H)) <= 1e-9);

        const CMatrix B = inv_sqrt_hpd(H);
        REQUIRE(relative_error(CMatrix::Identity(8, 8), B * H * B) <= 1e-9);

        // Projector idempotence on a rank-deficient tall matrix.
        const CMatrix T = testing::random_gaussian(8, 3, rng) * testing::random_gaussian(3, 5, rng);
        const CMatrix q = orthonormal_range(T);
        REQUIRE(q.cols() == 3);
        const CMatrix P = projector(q);
        REQUIRE((P * P - P).cwiseAbs().maxCoeff() <= 1e-9);
        REQUIRE(relative_error(T, P * T) <= 1e-9);
    }
}
