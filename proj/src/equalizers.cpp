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

#include "lis/equalizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lis/errors.hpp"

namespace lis::equalizers
{

using numerics::hermitian_part;

std::string_view to_string(FilterKind kind)
{
    switch (kind)
    {
    case FilterKind::Rmf:
        return "rmf";
    case FilterKind::SvdOpt:
        return "svd_opt";
    case FilterKind::Iic:
        return "iic";
    }
    return "unknown";
}

CMatrix PanelEqualizer::range_basis() const
{
    return semi_unitary ? w : numerics::orthonormal_range(w);
}

CMatrix PanelEqualizer::selection() const
{
    return numerics::projector(range_basis());
}

int EqualizerSet::total_inputs() const
{
    int m = 0;
    for (const auto &p : per_panel)
        m += p.n_rows();
    return m;
}

int EqualizerSet::total_outputs() const
{
    int n = 0;
    for (const auto &p : per_panel)
        n += p.n_cols();
    return n;
}

CMatrix EqualizerSet::block_diagonal() const
{
    CMatrix W = CMatrix::Zero(total_inputs(), total_outputs());
    Eigen::Index r = 0, c = 0;
    for (const auto &p : per_panel)
    {
        W.block(r, c, p.w.rows(), p.w.cols()) = p.w;
        r += p.w.rows();
        c += p.w.cols();
    }
    return W;
}

CMatrix complete_with_unit_vectors(const CMatrix &basis, Eigen::Index rows, Eigen::Index target_cols)
{
    if (basis.cols() > 0 && basis.rows() != rows)
        throw DimensionError("complete_with_unit_vectors: basis row count mismatch");
    if (target_cols > rows)
        throw DimensionError("complete_with_unit_vectors: more columns than rows requested");
    if (basis.cols() >= target_cols)
        return basis;

    // Any remaining complement direction has some e_j with |P e_j| >= 1/sqrt(rows), so this
    // threshold never exhausts the candidates.
    constexpr double kAcceptNorm = 1e-3;

    CMatrix out(rows, target_cols);
    Eigen::Index filled = basis.cols();
    if (filled > 0)
        out.leftCols(filled) = basis;

    for (Eigen::Index j = 0; j < rows && filled < target_cols; ++j)
    {
        CVector v = CVector::Zero(rows);
        v(j) = 1.0;
        if (filled > 0)
        {
            const auto Q = out.leftCols(filled);
            v -= Q * Q.row(j).adjoint();
            v -= Q * (Q.adjoint() * v);
        }
        const double nrm = v.norm();
        if (nrm < kAcceptNorm)
            continue;
        out.col(filled++) = v / nrm;
    }
    return out;
}

PanelEqualizer rmf_filter(const CMatrix &h_panel, int np_outputs)
{
    if (np_outputs < 1)
        throw DomainError("rmf_filter: np_outputs must be >= 1");
    if (h_panel.cols() < 1)
        throw DimensionError("rmf_filter: channel block has no user columns");
    numerics::require_finite(h_panel, "rmf_filter");

    const RVector strength = h_panel.colwise().squaredNorm().transpose();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(h_panel.cols()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return strength(a) > strength(b); });

    const Eigen::Index take = std::min<Eigen::Index>(np_outputs, h_panel.cols());
    PanelEqualizer eq;
    eq.kind = FilterKind::Rmf;
    eq.semi_unitary = false;
    eq.w.resize(h_panel.rows(), take);
    for (Eigen::Index c = 0; c < take; ++c)
        eq.w.col(c) = h_panel.col(order[static_cast<std::size_t>(c)]);
    return eq;
}

PanelEqualizer single_panel_filter(const CMatrix &h, int n_outputs)
{
    if (n_outputs < 1 || n_outputs > h.rows())
        throw DimensionError("single_panel_filter: n_outputs must lie in [1, M], got " + std::to_string(n_outputs));

    PanelEqualizer eq;
    eq.kind = FilterKind::SvdOpt;
    eq.semi_unitary = true;

    const CMatrix range = numerics::orthonormal_range(h);
    if (range.cols() == 0)
        eq.w = complete_with_unit_vectors(CMatrix(h.rows(), 0), h.rows(), n_outputs);
    else
        eq.w = range.leftCols(std::min<Eigen::Index>(n_outputs, range.cols()));
    return eq;
}

LocalStep iic_local_step(const CMatrix &h_panel, const chain::ChainMessage &z_prev, double rho, int np_outputs)
{
    if (!(rho > 0.0))
        throw DomainError("iic_local_step: rho must be positive");
    if (np_outputs < 1)
        throw DomainError("iic_local_step: np_outputs must be >= 1");
    if (z_prev.z.rows() != h_panel.cols())
        throw DimensionError("iic_local_step: message is " + std::to_string(z_prev.z.rows()) + "x" +
                             std::to_string(z_prev.z.cols()) + " but channel block has " +
                             std::to_string(h_panel.cols()) + " users");
    numerics::require_finite(h_panel, "iic_local_step");

    const numerics::EigDecomp zd = numerics::hermitian_eig(z_prev.z);
    if (zd.values.size() > 0 && !(zd.values.minCoeff() > 0.0))
        throw DomainError("iic_local_step: incoming accumulator is not positive-definite");

    const RVector whiten = zd.values.cwiseSqrt().cwiseInverse();
    const CMatrix h_hat = std::sqrt(rho) * (h_panel * zd.basis) * whiten.asDiagonal();

    const Eigen::Index mp = h_panel.rows();
    const Eigen::Index width = std::min<Eigen::Index>(np_outputs, mp);
    const CMatrix dominant = numerics::orthonormal_range(h_hat);
    const Eigen::Index keep = std::min(width, dominant.cols());

    LocalStep out;
    out.equalizer.kind = FilterKind::Iic;
    out.equalizer.semi_unitary = true;
    out.equalizer.w = complete_with_unit_vectors(dominant.leftCols(keep), mp, width);

    const CMatrix &w = out.equalizer.w;
    const Eigen::Index k = h_panel.cols();
    const CMatrix proj_hat = w.adjoint() * h_hat;
    out.delta_c = numerics::logdet2_hpd(CMatrix::Identity(k, k) + hermitian_part(proj_hat.adjoint() * proj_hat));

    const CMatrix proj = w.adjoint() * h_panel;
    out.z_next.z = z_prev.z + rho * hermitian_part(proj.adjoint() * proj);
    out.z_next.hop_index = z_prev.hop_index + 1;
    return out;
}

CVector apply_equalizers(const EqualizerSet &eq, const CVector &y)
{
    if (y.size() != eq.total_inputs())
        throw DimensionError("apply_equalizers: received vector has " + std::to_string(y.size()) +
                             " entries, filters expect " + std::to_string(eq.total_inputs()));
    CVector z(eq.total_outputs());
    Eigen::Index in = 0, out = 0;
    for (const auto &p : eq.per_panel)
    {
        z.segment(out, p.w.cols()) = p.w.adjoint() * y.segment(in, p.w.rows());
        in += p.w.rows();
        out += p.w.cols();
    }
    return z;
}

} // namespace lis::equalizers
