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
#include <random>
#include <vector>

#include "lis/numerics.hpp"

namespace lis::channel
{

/// Point in the room frame. The surface lies in the z = 0 plane; users have z > 0.
struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct ScenarioConfig
{
    double lis_width_m = 10.0;
    double lis_height_m = 1.0;
    double room_width_m = 30.0;
    double room_height_m = 3.0;
    double room_depth_m = 30.0;
    double panel_side_m = 0.2;
    int users_k = 20;
    double wavelength_m = 0.05;
    double snr_rho = 1.0; ///< linear SNR
    double min_user_depth_m = 0.5;
    std::uint64_t seed = 42;

    /// Throws ConfigError on any violated field constraint.
    void validate() const;
};

struct Panel
{
    int index = 0;
    Position center;
    std::vector<Position> antennas; ///< row-major over the panel's square grid
};

/// Panel layout of the surface. Panel order is row-major over the surface and doubles as
/// the daisy-chain order.
struct Scenario
{
    std::vector<Panel> panels;
    int antennas_per_panel = 0; // Mp
    double panel_side_m = 0.0;
    double antenna_spacing_m = 0.0;

    [[nodiscard]] int num_panels() const { return static_cast<int>(panels.size()); }
    [[nodiscard]] int total_antennas() const { return num_panels() * antennas_per_panel; }
};

struct UserSet
{
    std::vector<Position> positions;

    [[nodiscard]] int size() const { return static_cast<int>(positions.size()); }
};

/// Per-panel channel blocks H_i (Mp x K) after global normalization.
struct ChannelRealization
{
    std::vector<CMatrix> blocks;
    double norm_scale = 1.0;

    [[nodiscard]] int num_panels() const { return static_cast<int>(blocks.size()); }
    [[nodiscard]] int num_users() const;
    [[nodiscard]] int total_antennas() const;

    /// Vertically stacked H = [H_1; ...; H_P].
    [[nodiscard]] CMatrix stacked() const;
};

/// Random streams used per trial; distinct tags give independent sequences.
enum class Stream : std::uint64_t
{
    Users = 1,
    Noise = 2,
};

/// Generator for (seed, trial index, stream). Deterministic across runs and threads.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t trial_index, Stream stream);

Scenario build_scenario(const ScenarioConfig &cfg, int antennas_per_panel);

UserSet sample_users(const Scenario &scenario, const ScenarioConfig &cfg, std::mt19937_64 &rng);

/// Line-of-sight gain between a user and an antenna in the z = 0 plane:
/// sqrt(z) / (2 sqrt(pi) d^{3/2}) * exp(-2 pi j d / lambda).
cdouble los_gain(const Position &user, const Position &antenna, double wavelength_m);

/// Unnormalized Mp x K block of one panel.
CMatrix panel_channel(const Panel &panel, const UserSet &users, double wavelength_m);

/// All panel blocks, scaled by one constant so that sum_i ||H_i||_F^2 = M K.
ChannelRealization realize_channel(const Scenario &scenario, const UserSet &users, double wavelength_m);

/// Noise-free received vector y = sqrt(rho) H x.
CVector simulate_uplink(const ChannelRealization &chan, const CVector &x, double rho);

/// y = sqrt(rho) H x + n with n ~ CN(0, I).
CVector simulate_uplink(const ChannelRealization &chan, const CVector &x, double rho, std::mt19937_64 &rng);

} // namespace lis::channel
