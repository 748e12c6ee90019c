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

#include "lis/capacity.hpp"

#include <cmath>
#include <string>

#include "lis/errors.hpp"

namespace lis::capacity
{

namespace
{

void require_rho(double rho, const char *what)
{
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw DomainError(std::string(what) + ": rho must be positive and finite");
}

void require_matching(const std::vector<CMatrix> &blocks, const equalizers::EqualizerSet &eq, const char *what)
{
    if (static_cast<int>(blocks.size()) != eq.num_panels())
        throw DimensionError(std::string(what) + ": " + std::to_string(blocks.size()) + " channel blocks but " +
                             std::to_string(eq.num_panels()) + " panel filters");
    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        if (blocks[i].rows() != eq.per_panel[i].w.rows())
            throw DimensionError(std::string(what) + ": panel " + std::to_string(i) + " filter/channel row mismatch");
        if (blocks[i].cols() != blocks.front().cols())
            throw DimensionError(std::string(what) + ": inconsistent user count across panels");
    }
}

Eigen::Index user_count(const std::vector<CMatrix> &blocks)
{
    return blocks.empty() ? 0 : blocks.front().cols();
}

} // namespace

CMatrix panel_gram(const CMatrix &block, const equalizers::PanelEqualizer &eq)
{
    const CMatrix q = eq.range_basis();
    if (q.cols() == 0)
        return CMatrix::Zero(block.cols(), block.cols());
    const CMatrix proj = q.adjoint() * block;
    return numerics::hermitian_part(proj.adjoint() * proj);
}

double sum_rate_full(const CMatrix &h, const CMatrix &w, double rho)
{
    require_rho(rho, "sum_rate_full");
    numerics::require_finite(h, "sum_rate_full");
    numerics::require_finite(w, "sum_rate_full");
    if (h.rows() != w.rows())
        throw DimensionError("sum_rate_full: channel and filter row counts differ");
    if (w.size() == 0 || w.cwiseAbs().maxCoeff() == 0.0)
        throw DomainError("sum_rate_full: filter matrix is zero");

    const CMatrix q = numerics::orthonormal_range(w);
    const CMatrix proj = q.adjoint() * h;
    const Eigen::Index k = h.cols();
    return numerics::logdet2_hpd(CMatrix::Identity(k, k) + rho * numerics::hermitian_part(proj.adjoint() * proj));
}

double sum_rate_panelized(const std::vector<CMatrix> &blocks, const equalizers::EqualizerSet &eq, double rho)
{
    require_rho(rho, "sum_rate_panelized");
    require_matching(blocks, eq, "sum_rate_panelized");
    const Eigen::Index k = user_count(blocks);
    CMatrix acc = CMatrix::Zero(k, k);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        acc += panel_gram(blocks[i], eq.per_panel[i]);
    return numerics::logdet2_hpd(CMatrix::Identity(k, k) + rho * acc);
}

double channel_capacity(const CMatrix &h, double rho)
{
    require_rho(rho, "channel_capacity");
    const Eigen::Index k = h.cols();
    return numerics::logdet2_hpd(CMatrix::Identity(k, k) + rho * numerics::hermitian_part(h.adjoint() * h));
}

double channel_capacity(const std::vector<CMatrix> &blocks, double rho)
{
    require_rho(rho, "channel_capacity");
    const Eigen::Index k = user_count(blocks);
    CMatrix acc = CMatrix::Zero(k, k);
    for (const auto &b : blocks)
    {
        if (b.cols() != k)
            throw DimensionError("channel_capacity: inconsistent user count across panels");
        acc += numerics::hermitian_part(b.adjoint() * b);
    }
    return numerics::logdet2_hpd(CMatrix::Identity(k, k) + rho * acc);
}

std::vector<double> chain_capacity_trace(const std::vector<CMatrix> &blocks, const equalizers::EqualizerSet &eq,
                                         double rho)
{
    require_rho(rho, "chain_capacity_trace");
    require_matching(blocks, eq, "chain_capacity_trace");
    const Eigen::Index k = user_count(blocks);
    CMatrix acc = CMatrix::Identity(k, k);
    std::vector<double> trace;
    trace.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        acc += rho * panel_gram(blocks[i], eq.per_panel[i]);
        trace.push_back(numerics::logdet2_hpd(acc));
    }
    return trace;
}

} // namespace lis::capacity
