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

#include <vector>

#include "lis/equalizers.hpp"
#include "lis/numerics.hpp"

namespace lis::capacity
{

/// Sum-rate figures for one realization [bits/s/Hz].
struct CapacityReport
{
    double sum_rate_bits = 0.0;
    std::vector<double> per_panel_cumulative; ///< IIC chains only, otherwise empty
    double channel_capacity_bits = 0.0;
};

/// log2 det(I_K + rho H^H Q Q^H H) with Q an orthonormal basis of col(w). For full column
/// rank w this is the mutual information between the user vector and z = W^H y.
double sum_rate_full(const CMatrix &h, const CMatrix &w, double rho);

/// log2 det(I_K + rho sum_i H_i^H S_i H_i), S_i the projector onto col(w_i).
double sum_rate_panelized(const std::vector<CMatrix> &blocks, const equalizers::EqualizerSet &eq, double rho);

/// log2 det(I_K + rho H^H H): the unfiltered ceiling.
double channel_capacity(const CMatrix &h, double rho);

/// Same ceiling evaluated from per-panel blocks without stacking them.
double channel_capacity(const std::vector<CMatrix> &blocks, double rho);

/// Entry i = log2 det(I_K + rho sum_{j<=i} H_j^H S_j H_j). Consecutive differences are the
/// per-panel increments of the chain.
std::vector<double> chain_capacity_trace(const std::vector<CMatrix> &blocks, const equalizers::EqualizerSet &eq,
                                         double rho);

/// K x K Gram contribution H_i^H S_i H_i of one panel, exactly Hermitian.
CMatrix panel_gram(const CMatrix &block, const equalizers::PanelEqualizer &eq);

} // namespace lis::capacity
