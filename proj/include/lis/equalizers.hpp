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

#include <string_view>
#include <vector>

#include "lis/chain_message.hpp"
#include "lis/numerics.hpp"

namespace lis::equalizers
{

enum class FilterKind
{
    Rmf,
    SvdOpt,
    Iic,
};

std::string_view to_string(FilterKind kind);

/// Linear filter W_i of one panel (Mp x n_cols). The panel output is W_i^H y_i.
struct PanelEqualizer
{
    CMatrix w;
    FilterKind kind = FilterKind::Rmf;
    bool semi_unitary = false;

    [[nodiscard]] int n_cols() const { return static_cast<int>(w.cols()); }
    [[nodiscard]] int n_rows() const { return static_cast<int>(w.rows()); }

    /// Orthonormal basis of col(w). Semi-unitary filters are returned as they are.
    [[nodiscard]] CMatrix range_basis() const;

    /// Orthogonal projector S_i onto col(w).
    [[nodiscard]] CMatrix selection() const;
};

/// Per-panel filters; together they form the block-diagonal W.
struct EqualizerSet
{
    std::vector<PanelEqualizer> per_panel;

    [[nodiscard]] int num_panels() const { return static_cast<int>(per_panel.size()); }
    [[nodiscard]] int total_inputs() const;
    [[nodiscard]] int total_outputs() const;

    /// Dense M x N block-diagonal assembly, zero off the diagonal blocks.
    [[nodiscard]] CMatrix block_diagonal() const;
};

/// Reduced matched filter: the min(np_outputs, K) columns of h_panel with the largest
/// squared norm, strongest first, ties by ascending user index.
PanelEqualizer rmf_filter(const CMatrix &h_panel, int np_outputs);

/// Dominant left singular vectors of h (at most rank(h) of them). A zero h falls back to
/// the first min(n_outputs, M) canonical unit vectors.
PanelEqualizer single_panel_filter(const CMatrix &h, int n_outputs);

struct LocalStep
{
    PanelEqualizer equalizer;
    double delta_c = 0.0; ///< capacity increment contributed by this panel [bits]
    chain::ChainMessage z_next;
};

/// One panel of the iterative interference cancellation chain.
///
/// Whitens the local channel against the incoming accumulator, Z = U S U^H,
///   H_hat = sqrt(rho) * h_panel * U * S^{-1/2},
/// and keeps the min(np_outputs, Mp) dominant left singular vectors of H_hat. When H_hat has
/// fewer non-negligible singular values than that, the filter is completed with canonical
/// unit vectors orthogonalized against the chosen columns.
///
/// delta_c = log2 det(I + H_hat^H S H_hat) and z_next = z_prev + rho * h^H S h with
/// S = w w^H.
LocalStep iic_local_step(const CMatrix &h_panel, const chain::ChainMessage &z_prev, double rho, int np_outputs);

/// z = W^H y for the block-diagonal W, i.e. the concatenation of w_i^H y_i.
CVector apply_equalizers(const EqualizerSet &eq, const CVector &y);

/// Extends the orthonormal columns of basis to target_cols columns with canonical unit
/// vectors e_1, e_2, ... projected onto the orthogonal complement (two Gram-Schmidt passes).
CMatrix complete_with_unit_vectors(const CMatrix &basis, Eigen::Index rows, Eigen::Index target_cols);

} // namespace lis::equalizers
