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

#include "lis/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lis/errors.hpp"

namespace lis::channel
{

namespace
{

// Ratio a / b rounded to an integer, or -1 when b does not divide a.
long whole_multiple(double a, double b)
{
    const double q = a / b;
    const double r = std::round(q);
    if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, r))
        return -1;
    return static_cast<long>(r);
}

int integer_sqrt(int n)
{
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return (r * r == n) ? r : -1;
}

void require_positive(double v, const char *name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be a positive finite number");
}

} // namespace

void ScenarioConfig::validate() const
{
    require_positive(lis_width_m, "lis_width_m");
    require_positive(lis_height_m, "lis_height_m");
    require_positive(room_width_m, "room_width_m");
    require_positive(room_height_m, "room_height_m");
    require_positive(room_depth_m, "room_depth_m");
    require_positive(panel_side_m, "panel_side_m");
    require_positive(wavelength_m, "wavelength_m");
    require_positive(snr_rho, "snr_rho");
    require_positive(min_user_depth_m, "min_user_depth_m");
    if (users_k < 1)
        throw ConfigError("users_k must be >= 1");
    if (lis_width_m > room_width_m || lis_height_m > room_height_m)
        throw ConfigError("surface does not fit on the room wall");
    if (min_user_depth_m >= room_depth_m)
        throw ConfigError("min_user_depth_m must be below room_depth_m");
    if (whole_multiple(lis_width_m, panel_side_m) < 0 || whole_multiple(lis_height_m, panel_side_m) < 0)
        throw ConfigError("surface dimensions must be integer multiples of panel_side_m");
}

int ChannelRealization::num_users() const
{
    return blocks.empty() ? 0 : static_cast<int>(blocks.front().cols());
}

int ChannelRealization::total_antennas() const
{
    Eigen::Index m = 0;
    for (const auto &b : blocks)
        m += b.rows();
    return static_cast<int>(m);
}

CMatrix ChannelRealization::stacked() const
{
    CMatrix H(total_antennas(), num_users());
    Eigen::Index row = 0;
    for (const auto &b : blocks)
    {
        H.middleRows(row, b.rows()) = b;
        row += b.rows();
    }
    return H;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t trial_index, Stream stream)
{
    const auto tag = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32),
                      static_cast<std::uint32_t>(tag)};
    return std::mt19937_64(seq);
}

Scenario build_scenario(const ScenarioConfig &cfg, int antennas_per_panel)
{
    cfg.validate();
    if (antennas_per_panel < 1)
        throw ConfigError("antennas per panel must be >= 1");
    const int side_count = integer_sqrt(antennas_per_panel);
    if (side_count < 0)
        throw ConfigError("antennas per panel must be a perfect square, got " + std::to_string(antennas_per_panel));

    const long cols = whole_multiple(cfg.lis_width_m, cfg.panel_side_m);
    const long rows = whole_multiple(cfg.lis_height_m, cfg.panel_side_m);

    Scenario sc;
    sc.antennas_per_panel = antennas_per_panel;
    sc.panel_side_m = cfg.panel_side_m;
    sc.antenna_spacing_m = cfg.panel_side_m / side_count;

    // Surface centered horizontally on the wall and vertically in the room height.
    const double x0 = -0.5 * cfg.lis_width_m;
    const double y0 = 0.5 * (cfg.room_height_m - cfg.lis_height_m);
    const double side = cfg.panel_side_m;
    const double sp = sc.antenna_spacing_m;

    sc.panels.reserve(static_cast<std::size_t>(rows * cols));
    for (long r = 0; r < rows; ++r)
    {
        for (long c = 0; c < cols; ++c)
        {
            Panel p;
            p.index = static_cast<int>(r * cols + c);
            const double px = x0 + static_cast<double>(c) * side;
            const double py = y0 + static_cast<double>(r) * side;
            p.center = {px + 0.5 * side, py + 0.5 * side, 0.0};
            p.antennas.reserve(static_cast<std::size_t>(antennas_per_panel));
            for (int u = 0; u < side_count; ++u)
                for (int v = 0; v < side_count; ++v)
                    p.antennas.push_back({px + (v + 0.5) * sp, py + (u + 0.5) * sp, 0.0});
            sc.panels.push_back(std::move(p));
        }
    }
    return sc;
}

UserSet sample_users(const Scenario &, const ScenarioConfig &cfg, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> ux(-0.5 * cfg.room_width_m, 0.5 * cfg.room_width_m);
    std::uniform_real_distribution<double> uy(0.0, cfg.room_height_m);
    std::uniform_real_distribution<double> uz(cfg.min_user_depth_m, cfg.room_depth_m);

    UserSet users;
    users.positions.reserve(static_cast<std::size_t>(cfg.users_k));
    for (int k = 0; k < cfg.users_k; ++k)
    {
        // Explicit sequencing; argument evaluation order is unspecified.
        const double x = ux(rng);
        const double y = uy(rng);
        const double z = uz(rng);
        users.positions.push_back({x, y, z});
    }
    return users;
}

cdouble los_gain(const Position &user, const Position &antenna, double wavelength_m)
{
    if (!(user.z > 0.0))
        throw DomainError("los_gain: user must be in front of the surface (z > 0)");
    if (!(wavelength_m > 0.0))
        throw DomainError("los_gain: wavelength must be positive");

    const double dx = user.x - antenna.x;
    const double dy = user.y - antenna.y;
    const double d = std::sqrt(user.z * user.z + dx * dx + dy * dy);
    const double magnitude = std::sqrt(user.z) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(d, 1.5));

    // Reduce d / lambda to its fractional part before scaling by 2 pi.
    const double cycles = d / wavelength_m;
    const double phase = -2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    return std::polar(magnitude, phase);
}

CMatrix panel_channel(const Panel &panel, const UserSet &users, double wavelength_m)
{
    const auto mp = static_cast<Eigen::Index>(panel.antennas.size());
    CMatrix H(mp, users.size());
    for (Eigen::Index k = 0; k < H.cols(); ++k)
        for (Eigen::Index m = 0; m < mp; ++m)
            H(m, k) = los_gain(users.positions[static_cast<std::size_t>(k)], panel.antennas[static_cast<std::size_t>(m)],
                               wavelength_m);
    return H;
}

ChannelRealization realize_channel(const Scenario &scenario, const UserSet &users, double wavelength_m)
{
    ChannelRealization chan;
    chan.blocks.reserve(scenario.panels.size());
    double energy = 0.0;
    for (const auto &panel : scenario.panels)
    {
        chan.blocks.push_back(panel_channel(panel, users, wavelength_m));
        energy += chan.blocks.back().squaredNorm();
    }
    if (!(energy > 0.0))
        throw DegenerateChannelError("realize_channel: stacked channel is identically zero");

    const double mk = static_cast<double>(chan.total_antennas()) * users.size();
    chan.norm_scale = std::sqrt(mk / energy);
    for (auto &b : chan.blocks)
        b *= chan.norm_scale;
    return chan;
}

namespace
{

CVector received_signal(const ChannelRealization &chan, const CVector &x, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("simulate_uplink: rho must be positive");
    if (x.size() != chan.num_users())
        throw DimensionError("simulate_uplink: user vector has " + std::to_string(x.size()) + " entries, channel has " +
                             std::to_string(chan.num_users()) + " users");
    CVector y(chan.total_antennas());
    const double amp = std::sqrt(rho);
    Eigen::Index row = 0;
    for (const auto &b : chan.blocks)
    {
        y.segment(row, b.rows()) = amp * (b * x);
        row += b.rows();
    }
    return y;
}

} // namespace

CVector simulate_uplink(const ChannelRealization &chan, const CVector &x, double rho)
{
    return received_signal(chan, x, rho);
}

CVector simulate_uplink(const ChannelRealization &chan, const CVector &x, double rho, std::mt19937_64 &rng)
{
    CVector y = received_signal(chan, x, rho);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    for (Eigen::Index i = 0; i < y.size(); ++i)
    {
        const double re = gauss(rng);
        const double im = gauss(rng);
        y(i) += cdouble(re, im);
    }
    return y;
}

} // namespace lis::channel
