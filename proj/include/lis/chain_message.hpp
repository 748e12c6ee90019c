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

#include "lis/numerics.hpp"

namespace lis::chain
{

/// K x K Hermitian accumulator Z = I + rho * sum_j H_j^H S_j H_j handed from panel to panel.
struct ChainMessage
{
    CMatrix z;
    int hop_index = 0;

    /// Z_0 = I_K, the message entering the first panel.
    static ChainMessage initial(int num_users);

    [[nodiscard]] int num_users() const { return static_cast<int>(z.rows()); }

    /// Throws DomainError unless z is Hermitian (1e-10, scaled by the largest entry above one)
    /// and every eigenvalue is >= 1 - 1e-9.
    void validate() const;
};

} // namespace lis::chain
