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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lis/capacity.hpp"
#include "lis/chain.hpp"
#include "lis/channel.hpp"

namespace lis::experiment
{

enum class PanelProfile
{
    Small, ///< 0.2 m panels, 16 antennas each
    Large, ///< 1.0 m panels, 400 antennas each
};

struct ProfileGeometry
{
    double panel_side_m;
    int antennas_per_panel;
};

ProfileGeometry geometry(PanelProfile profile);
std::string_view to_string(PanelProfile profile);
PanelProfile parse_profile(std::string_view name);
chain::Algorithm parse_algorithm(std::string_view name);

enum class SweepAxis
{
    NpPerPanel,
    TotalN,
};

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

/// Default Np grid of a profile when a sweep lists no values.
std::vector<int> default_np_values(PanelProfile profile);

struct SweepSpec
{
    SweepAxis axis = SweepAxis::NpPerPanel;
    std::vector<int> values; ///< empty: per-profile defaults
    std::vector<chain::Algorithm> algorithms{chain::Algorithm::Iic, chain::Algorithm::Rmf};
    std::vector<PanelProfile> panel_profiles{PanelProfile::Small, PanelProfile::Large};
    int trials = 100;
    std::uint64_t seed = 42;
    double rho = 1.0;
    int passes = 1;
    unsigned workers = 0; ///< 0: one per hardware thread

    void validate() const;
};

struct SweepRow
{
    PanelProfile profile = PanelProfile::Small;
    chain::Algorithm algorithm = chain::Algorithm::Iic;
    int np = 0;
    int n_total = 0;
    double rho = 0.0;
    int trials = 0;
    double mean_sum_rate_bits = 0.0;
    double std_sum_rate_bits = 0.0;
    double mean_channel_capacity_bits = 0.0;
    std::int64_t chain_scalars = 0;
    std::uint64_t seed = 0;
};

/// Contents of a configuration file: scenario fields plus sweep fields.
struct ExperimentConfig
{
    channel::ScenarioConfig scenario;
    SweepSpec sweep;
    std::optional<int> antennas_per_panel; ///< explicit Mp for single trials
};

/// Parses a flat JSON object whose keys are ScenarioConfig / SweepSpec field names.
/// Unknown keys, wrong types and invalid values raise ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Antennas per panel used for single trials: explicit value or (panel_side / wavelength)^2.
int trial_antennas_per_panel(const ExperimentConfig &cfg);

struct TrialResult
{
    capacity::CapacityReport report;
    chain::TrafficReport traffic;
};

/// Normalized channel of trial trial_index; users drawn from stream (cfg.seed, trial_index).
channel::ChannelRealization realize_trial(const channel::Scenario &scenario, const channel::ScenarioConfig &cfg,
                                          std::uint64_t trial_index);

/// One Monte Carlo trial at rho = cfg.snr_rho.
TrialResult run_trial(const channel::Scenario &scenario, const channel::ScenarioConfig &cfg,
                      chain::Algorithm algorithm, int np_outputs, std::uint64_t trial_index, int passes = 1,
                      chain::ExecutionMode mode = chain::ExecutionMode::Decentralized);

/// One row per (profile, algorithm, axis value), ordered by profile, algorithm, value.
/// Scenario fields other than the panel geometry, seed and rho come from base.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, const channel::ScenarioConfig &base = {});

std::string csv_header();
std::string format_csv(const std::vector<SweepRow> &rows);

/// Writes format_csv(rows) to path; IoError on failure.
void emit_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &path);

/// Decimal text with 15 significant digits, independent of the global locale.
std::string format_real(double value);

} // namespace lis::experiment
