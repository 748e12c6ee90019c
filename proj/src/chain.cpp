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

#include "lis/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lis/errors.hpp"

namespace lis::chain
{

ChainMessage ChainMessage::initial(int num_users)
{
    return {CMatrix::Identity(num_users, num_users), 0};
}

void ChainMessage::validate() const
{
    if (z.rows() != z.cols())
        throw DimensionError("chain message must be square");
    numerics::require_finite(z, "chain message");
    if (z.size() == 0)
        return;
    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    if (numerics::hermitian_deviation(z) > numerics::kOrthTol * scale)
        throw DomainError("chain message is not Hermitian at hop " + std::to_string(hop_index));
    const double smallest = numerics::hermitian_eig(z).values.minCoeff();
    if (smallest < 1.0 - 1e-9)
        throw DomainError("chain message has eigenvalue " + std::to_string(smallest) + " < 1 at hop " +
                          std::to_string(hop_index));
}

std::string_view to_string(Algorithm algorithm)
{
    return algorithm == Algorithm::Iic ? "iic" : "rmf";
}

std::string_view to_string(ExecutionMode mode)
{
    return mode == ExecutionMode::Decentralized ? "decentralized" : "centralized";
}

namespace
{

constexpr double kMonotoneTol = 1e-9;

void require_blocks(const std::vector<CMatrix> &blocks, int np_outputs, const char *what)
{
    if (blocks.empty())
        throw DimensionError(std::string(what) + ": no panels");
    const Eigen::Index k = blocks.front().cols();
    if (k < 1)
        throw DimensionError(std::string(what) + ": no users");
    for (const auto &b : blocks)
    {
        if (b.cols() != k)
            throw DimensionError(std::string(what) + ": inconsistent user count across panels");
        if (np_outputs > b.rows())
            throw DimensionError(std::string(what) + ": np_outputs " + std::to_string(np_outputs) +
                                 " exceeds panel size " + std::to_string(b.rows()));
    }
    if (np_outputs < 1)
        throw DomainError(std::string(what) + ": np_outputs must be >= 1");
}

std::int64_t total_antennas(const std::vector<CMatrix> &blocks)
{
    std::int64_t m = 0;
    for (const auto &b : blocks)
        m += b.rows();
    return m;
}

void fill_common_traffic(TrafficReport &t, const ChainResult &r, std::int64_t k)
{
    t.backplane_scalars_per_use = r.equalizers.total_outputs();
    t.cpu_scalars_per_use = k;
}

// Pass 1 plus optional leave-one-out passes. Shared by both execution modes so their
// arithmetic is identical.
ChainResult fold_iic(const std::vector<CMatrix> &blocks, double rho, int np_outputs, int passes,
                     const MessageObserver &observer)
{
    if (passes < 1)
        throw DomainError("run_iic_chain: passes must be >= 1");
    const auto p = blocks.size();
    const auto k = static_cast<int>(blocks.front().cols());

    ChainResult out;
    out.equalizers.per_panel.reserve(p);
    out.first_pass_increments.reserve(p);

    ChainMessage msg = ChainMessage::initial(k);
    for (std::size_t i = 0; i < p; ++i)
    {
        auto step = equalizers::iic_local_step(blocks[i], msg, rho, np_outputs);
        out.equalizers.per_panel.push_back(std::move(step.equalizer));
        out.first_pass_increments.push_back(step.delta_c);
        msg = std::move(step.z_next);
        if (observer)
            observer(msg);
    }

    if (passes > 1)
    {
        std::vector<CMatrix> grams;
        grams.reserve(p);
        for (std::size_t i = 0; i < p; ++i)
            grams.push_back(capacity::panel_gram(blocks[i], out.equalizers.per_panel[i]));

        for (int pass = 2; pass <= passes; ++pass)
        {
            for (std::size_t i = 0; i < p; ++i)
            {
                ChainMessage others{CMatrix::Identity(k, k), static_cast<int>(i)};
                for (std::size_t j = 0; j < p; ++j)
                    if (j != i)
                        others.z += rho * grams[j];
                auto step = equalizers::iic_local_step(blocks[i], others, rho, np_outputs);
                if (observer)
                    observer(step.z_next);
                out.equalizers.per_panel[i] = std::move(step.equalizer);
                grams[i] = capacity::panel_gram(blocks[i], out.equalizers.per_panel[i]);
            }
        }
    }
    out.passes_executed = passes;

    out.report.per_panel_cumulative = capacity::chain_capacity_trace(blocks, out.equalizers, rho);
    out.report.sum_rate_bits = out.report.per_panel_cumulative.back();
    out.report.channel_capacity_bits = capacity::channel_capacity(blocks, rho);

    const auto &trace = out.report.per_panel_cumulative;
    double previous = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i)
    {
        const double diff = trace[i] - previous;
        if (diff < -kMonotoneTol)
            throw DomainError("IIC chain capacity decreased at panel " + std::to_string(i));
        if (passes == 1)
            out.increment_residual = std::max(out.increment_residual, std::abs(diff - out.first_pass_increments[i]));
        previous = trace[i];
    }
    return out;
}

ChainResult fold_rmf(const std::vector<CMatrix> &blocks, int np_outputs, double rho)
{
    ChainResult out;
    out.equalizers.per_panel.reserve(blocks.size());
    for (const auto &b : blocks)
        out.equalizers.per_panel.push_back(equalizers::rmf_filter(b, np_outputs));
    out.passes_executed = 1;
    out.report.sum_rate_bits = capacity::sum_rate_panelized(blocks, out.equalizers, rho);
    out.report.channel_capacity_bits = capacity::channel_capacity(blocks, rho);
    return out;
}

} // namespace

ChainResult run_iic_chain(const std::vector<CMatrix> &blocks, double rho, int np_outputs, int passes,
                          const MessageObserver &observer)
{
    require_blocks(blocks, np_outputs, "run_iic_chain");
    ChainResult out = fold_iic(blocks, rho, np_outputs, passes, observer);

    const std::int64_t k = blocks.front().cols();
    const auto hops = static_cast<std::int64_t>(blocks.size()) - 1;
    out.traffic.chain_complex_scalars = passes * hops * k * k;
    out.traffic.chain_hermitian_scalars = passes * hops * k * (k + 1) / 2;
    fill_common_traffic(out.traffic, out, k);
    return out;
}

ChainResult run_rmf(const std::vector<CMatrix> &blocks, int np_outputs, double rho)
{
    require_blocks(blocks, np_outputs, "run_rmf");
    ChainResult out = fold_rmf(blocks, np_outputs, rho);
    fill_common_traffic(out.traffic, out, blocks.front().cols());
    return out;
}

ChainResult run_centralized(const std::vector<CMatrix> &blocks, double rho, int np_outputs, Algorithm algorithm,
                            int passes)
{
    require_blocks(blocks, np_outputs, "run_centralized");
    ChainResult out = algorithm == Algorithm::Iic ? fold_iic(blocks, rho, np_outputs, passes, {})
                                                  : fold_rmf(blocks, np_outputs, rho);
    const std::int64_t k = blocks.front().cols();
    out.traffic.centralized_csi_scalars = total_antennas(blocks) * k;
    fill_common_traffic(out.traffic, out, k);
    return out;
}

ChainResult run_algorithm(const std::vector<CMatrix> &blocks, double rho, int np_outputs, Algorithm algorithm,
                          ExecutionMode mode, int passes)
{
    if (mode == ExecutionMode::Centralized)
        return run_centralized(blocks, rho, np_outputs, algorithm, passes);
    if (algorithm == Algorithm::Iic)
        return run_iic_chain(blocks, rho, np_outputs, passes);
    return run_rmf(blocks, np_outputs, rho);
}

} // namespace lis::chain
