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

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "lis/capacity.hpp"
#include "lis/chain_message.hpp"
#include "lis/equalizers.hpp"

namespace lis::chain
{

enum class Algorithm
{
    Iic,
    Rmf,
};

enum class ExecutionMode
{
    Decentralized, ///< each panel runs its own step, Z travels along the daisy chain
    Centralized,   ///< the CPU gathers every H_i and runs the same fold
};

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(ExecutionMode mode);

/// Interconnect accounting in complex scalars (16 bytes each as two doubles).
struct TrafficReport
{
    static constexpr std::int64_t kBytesPerScalar = 16;

    std::int64_t chain_complex_scalars = 0;   ///< panel-to-panel total, uncompressed K x K per hop
    std::int64_t chain_hermitian_scalars = 0; ///< same traffic with K(K+1)/2 per hop
    std::int64_t backplane_scalars_per_use = 0; ///< N
    std::int64_t cpu_scalars_per_use = 0;       ///< K
    std::int64_t centralized_csi_scalars = 0;   ///< M K when the CPU gathers CSI

    [[nodiscard]] std::int64_t chain_bytes() const { return chain_complex_scalars * kBytesPerScalar; }
    [[nodiscard]] std::int64_t csi_bytes() const { return centralized_csi_scalars * kBytesPerScalar; }
};

struct ChainResult
{
    equalizers::EqualizerSet equalizers;
    capacity::CapacityReport report;
    TrafficReport traffic;
    int passes_executed = 0;

    /// delta_c of every panel in the first pass (IIC only).
    std::vector<double> first_pass_increments;
    /// max |(trace[i] - trace[i-1]) - delta_c[i]| for single-pass IIC runs, else 0.
    double increment_residual = 0.0;
};

/// Called with every message leaving a panel, in chain order.
using MessageObserver = std::function<void(const ChainMessage &)>;

/// Iterative interference cancellation along the daisy chain.
///
/// Pass 1 starts from Z_0 = I_K and folds iic_local_step over the panels in order. Every
/// further pass revisits each panel against the leave-one-out accumulator
/// I + rho sum_{j != i} H_j^H S_j H_j. One K x K message is counted per hop and pass.
ChainResult run_iic_chain(const std::vector<CMatrix> &blocks, double rho, int np_outputs, int passes = 1,
                          const MessageObserver &observer = {});

/// Reduced matched filter on every panel independently; no chain traffic. rho is only used
/// to fill the capacity report.
ChainResult run_rmf(const std::vector<CMatrix> &blocks, int np_outputs, double rho);

/// Same arithmetic as the decentralized runs (bit-identical filters); only the traffic
/// accounting differs: M K CSI scalars are shipped to the CPU and nothing travels the chain.
ChainResult run_centralized(const std::vector<CMatrix> &blocks, double rho, int np_outputs, Algorithm algorithm,
                            int passes = 1);

/// Dispatch helper used by the experiment driver.
ChainResult run_algorithm(const std::vector<CMatrix> &blocks, double rho, int np_outputs, Algorithm algorithm,
                          ExecutionMode mode = ExecutionMode::Decentralized, int passes = 1);

} // namespace lis::chain
