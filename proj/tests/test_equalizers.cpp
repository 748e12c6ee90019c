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

#include "lis/capacity.hpp"
#include "lis/equalizers.hpp"
#include "lis/errors.hpp"
#include "support/oracles.hpp"

using namespace lis;
using namespace lis::equalizers;
using lis::chain::ChainMessage;
using Catch::Approx;

namespace
{

CMatrix column(std::initializer_list<cdouble> v)
{
    CMatrix c(static_cast<Eigen::Index>(v.size()), 1);
    Eigen::Index i = 0;
    for (auto x : v)
        c(i++, 0) = x;
    return c;
}

ChainMessage scalar_message(double z)
{
    return {CMatrix::Constant(1, 1, z), 0};
}

} // namespace

TEST_CASE("rmf_filter - strongest columns first")
{
    // Column norms^2 (4, 1, 9).
    CMatrix h = CMatrix::Zero(2, 3);
    h(0, 0) = 2.0;
    h(1, 1) = 1.0;
    h(0, 2) = 3.0;

    const auto two = rmf_filter(h, 2);
    REQUIRE(two.n_cols() == 2);
    CHECK(two.w.col(0) == h.col(2));
    CHECK(two.w.col(1) == h.col(0));
    CHECK(two.kind == FilterKind::Rmf);
    CHECK_FALSE(two.semi_unitary);

    const auto all = rmf_filter(h, 3);
    REQUIRE(all.n_cols() == 3);
    CHECK(all.w.col(0) == h.col(2));
    CHECK(all.w.col(1) == h.col(0));
    CHECK(all.w.col(2) == h.col(1));

    // More outputs than users: exactly K columns.
    CHECK(rmf_filter(h, 7).n_cols() == 3);
    CHECK(rmf_filter(h, 7).w == all.w);

    CHECK_THROWS_AS(rmf_filter(h, 0), DomainError);
}

TEST_CASE("rmf_filter - ties by ascending index, scale invariance")
{
    CMatrix h = CMatrix::Zero(2, 3);
    h(0, 0) = 1.0;
    h(1, 1) = cdouble(0.0, 1.0);
    h(0, 2) = -1.0;
    const auto w = rmf_filter(h, 2).w;
    CHECK(w.col(0) == h.col(0));
    CHECK(w.col(1) == h.col(1));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix g = testing::random_gaussian(16, 20, rng);
        const auto a = rmf_filter(g, 5);
        const auto b = rmf_filter(g * 37.5, 5);
        REQUIRE((a.w * 37.5 - b.w).norm() < 1e-12);
    }
}

TEST_CASE("single_panel_filter - dominant left singular vectors")
{
    const auto e = single_panel_filter(column({1.0, 0.0}), 1);
    REQUIRE(e.n_cols() == 1);
    CHECK(std::abs(e.w(0, 0)) == Approx(1.0));
    CHECK(e.semi_unitary);
    CHECK(e.kind == FilterKind::SvdOpt);

    std::mt19937_64 rng(17);
    const CMatrix h = testing::random_gaussian(6, 3, rng);
    const auto full = single_panel_filter(h, 5);
    CHECK(full.n_cols() == 3);
    const CMatrix p_ref = numerics::projector(numerics::orthonormal_range(h));
    CHECK((full.selection() - p_ref).cwiseAbs().maxCoeff() < 1e-9);

    // Zero channel: canonical unit vectors.
    const auto zero = single_panel_filter(CMatrix::Zero(3, 2), 2);
    REQUIRE(zero.n_cols() == 2);
    CHECK(zero.w == CMatrix::Identity(3, 2));

    CHECK_THROWS_AS(single_panel_filter(h, 7), DimensionError);
}

TEST_CASE("iic_local_step - scalar chain algebra")
{
    const CMatrix h = column({1.0, 0.0});
    const auto s1 = iic_local_step(h, scalar_message(1.0), 1.0, 1);
    CHECK(std::abs(s1.equalizer.w(0, 0)) == Approx(1.0));
    CHECK(s1.delta_c == Approx(1.0).margin(1e-14));
    CHECK(s1.z_next.z(0, 0).real() == Approx(2.0));
    CHECK(s1.z_next.hop_index == 1);

    const auto s2 = iic_local_step(h, s1.z_next, 1.0, 1);
    CHECK(s2.delta_c == Approx(std::log2(1.5)).margin(1e-14));
    CHECK(s2.delta_c == Approx(0.58496).margin(1e-5));
    CHECK(s2.z_next.z(0, 0).real() == Approx(3.0));
    CHECK(s1.delta_c + s2.delta_c == Approx(std::log2(3.0)).margin(1e-14));
}

TEST_CASE("iic_local_step - zero channel and errors")
{
    const auto z_prev = ChainMessage{CMatrix::Identity(2, 2) * 3.0, 4};
    const auto s = iic_local_step(CMatrix::Zero(4, 2), z_prev, 2.0, 3);
    CHECK(s.delta_c == 0.0);
    CHECK(s.z_next.z == z_prev.z);
    CHECK(s.equalizer.n_cols() == 3);
    CHECK(numerics::orthonormality_error(s.equalizer.w) < 1e-12);

    CHECK_THROWS_AS(iic_local_step(CMatrix::Zero(4, 2), ChainMessage{CMatrix::Identity(2, 2) * -1.0, 0}, 1.0, 1),
                    DomainError);
    CHECK_THROWS_AS(iic_local_step(CMatrix::Zero(4, 3), z_prev, 1.0, 1), DimensionError);
    CHECK_THROWS_AS(iic_local_step(CMatrix::Zero(4, 2), z_prev, 0.0, 1), DomainError);
}

TEST_CASE("iic_local_step - rank-deficient whitened channel is padded")
{
    std::mt19937_64 rng(5);
    // Mp = 10, K = 2: at most 2 useful directions, ask for 6.
    const CMatrix h = testing::random_gaussian(10, 2, rng);
    const auto s = iic_local_step(h, ChainMessage::initial(2), 1.0, 6);
    REQUIRE(s.equalizer.n_cols() == 6);
    CHECK(numerics::orthonormality_error(s.equalizer.w) < 1e-9);
    // The padded filter captures the whole channel.
    CHECK(s.delta_c == Approx(capacity::channel_capacity(h, 1.0)).margin(1e-9));
    // Width is capped at Mp.
    CHECK(iic_local_step(h, ChainMessage::initial(2), 1.0, 40).equalizer.n_cols() == 10);
}

TEST_CASE("complete_with_unit_vectors - orthonormal completion")
{
    std::mt19937_64 rng(8);
    const CMatrix q = numerics::orthonormal_range(testing::random_gaussian(7, 3, rng));
    const CMatrix full = complete_with_unit_vectors(q, 7, 7);
    CHECK(full.leftCols(3) == q);
    CHECK(numerics::orthonormality_error(full) < 1e-12);
    CHECK(complete_with_unit_vectors(CMatrix(5, 0), 5, 2) == CMatrix::Identity(5, 2));
    CHECK_THROWS_AS(complete_with_unit_vectors(q, 7, 8), DimensionError);
}

TEST_CASE("equalizer properties on random instances")
{
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 50; ++t)
    {
        const int mp = 4 + t % 13;
        const int k = 1 + t % 7;
        const int np = 1 + t % mp;
        const CMatrix h = testing::random_gaussian(mp, k, rng);
        const CMatrix g = testing::random_gaussian(k, k, rng);
        const ChainMessage z{CMatrix::Identity(k, k) + numerics::hermitian_part(g.adjoint() * g), 0};

        const auto s = iic_local_step(h, z, 2.5, np);
        REQUIRE(numerics::orthonormality_error(s.equalizer.w) <= 1e-9);
        const CMatrix S = s.equalizer.selection();
        REQUIRE(numerics::hermitian_deviation(S) <= 1e-12);
        REQUIRE((S * S - S).cwiseAbs().maxCoeff() <= 1e-9);
        REQUIRE(S.trace().real() == Approx(s.equalizer.n_cols()).margin(1e-9));
        REQUIRE(s.delta_c >= 0.0);

        const auto sp = single_panel_filter(h, std::min(np, mp));
        REQUIRE(numerics::orthonormality_error(sp.w) <= 1e-9);
    }
}

TEST_CASE("iic_local_step - optimality against sampled unit vectors (Mp=2, K=2, Np=1)")
{
    std::mt19937_64 rng(777);
    for (int t = 0; t < 10; ++t)
    {
        const CMatrix h = testing::random_gaussian(2, 2, rng);
        const CMatrix g = testing::random_gaussian(2, 2, rng);
        const ChainMessage z{CMatrix::Identity(2, 2) + numerics::hermitian_part(g.adjoint() * g), 0};
        const double rho = 1.5;
        const auto s = iic_local_step(h, z, rho, 1);

        // Candidate objective: log2 det(rho h^H v v^H h + Z) - log2 det(Z).
        const double base = testing::log2_abs_det_lu(z.z);
        double best = -1.0;
        for (int c = 0; c < 10000; ++c)
        {
            const CVector v = testing::random_unit_vector(2, rng);
            const CMatrix hv = v.adjoint() * h;
            best = std::max(best, testing::log2_abs_det_lu(z.z + rho * hv.adjoint() * hv) - base);
        }
        REQUIRE(s.delta_c >= best - 1e-9);
    }
}

TEST_CASE("apply_equalizers - block-diagonal multiply")
{
    EqualizerSet id;
    id.per_panel.push_back({CMatrix::Identity(2, 2), FilterKind::Iic, true});
    id.per_panel.push_back({CMatrix::Identity(3, 3), FilterKind::Iic, true});
    std::mt19937_64 rng(1);
    const CVector y = testing::random_gaussian(5, 1, rng);
    CHECK(apply_equalizers(id, y) == y);
    CHECK(apply_equalizers(id, CVector::Zero(5)).isZero());

    EqualizerSet two;
    two.per_panel.push_back({testing::random_gaussian(2, 1, rng), FilterKind::Rmf, false});
    two.per_panel.push_back({testing::random_gaussian(2, 1, rng), FilterKind::Rmf, false});
    const CVector y4 = testing::random_gaussian(4, 1, rng);
    const CMatrix W = testing::dense_block_diagonal({two.per_panel[0].w, two.per_panel[1].w});
    CHECK((apply_equalizers(two, y4) - W.adjoint() * y4).norm() < 1e-14);
    CHECK(two.block_diagonal() == W);

    CHECK_THROWS_AS(apply_equalizers(two, CVector::Zero(3)), DimensionError);
}
