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

// Command-line front end.
//
//   lis_sim sweep --config cfg.json --axis np --algos iic,rmf --profiles small,large \
//                 --trials 100 --seed 42 --rho 1 --passes 1 --out sweep.csv
//   lis_sim trial --config cfg.json --algo iic --np 4 --seed 42
//
// Exit codes: 0 success, 2 configuration error, 3 numerical domain error, 4 I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lis/errors.hpp"
#include "lis/experiment.hpp"

namespace
{

using namespace lis;

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

struct SweepOptions
{
    std::string config;
    std::optional<std::string> axis, algos, profiles, values;
    std::optional<int> trials, passes;
    std::optional<std::uint64_t> seed;
    std::optional<double> rho;
    unsigned workers = 0;
    std::string out;
};

struct TrialOptions
{
    std::string config;
    std::string algo = "iic";
    std::string mode = "decentralized";
    std::optional<std::string> profile;
    int np = 1;
    std::optional<std::uint64_t> seed;
    std::optional<double> rho;
    std::uint64_t trial_index = 0;
    int passes = 1;
};

experiment::ExperimentConfig base_config(const std::string &path)
{
    return path.empty() ? experiment::ExperimentConfig{} : experiment::load_config(path);
}

int run_sweep_command(const SweepOptions &o)
{
    auto cfg = base_config(o.config);
    auto &spec = cfg.sweep;
    if (o.axis)
        spec.axis = experiment::parse_axis(*o.axis);
    if (o.algos)
    {
        spec.algorithms.clear();
        for (const auto &a : split_list(*o.algos))
            spec.algorithms.push_back(experiment::parse_algorithm(a));
    }
    if (o.profiles)
    {
        spec.panel_profiles.clear();
        for (const auto &p : split_list(*o.profiles))
            spec.panel_profiles.push_back(experiment::parse_profile(p));
    }
    if (o.values)
    {
        spec.values.clear();
        for (const auto &v : split_list(*o.values))
        {
            try
            {
                spec.values.push_back(std::stoi(v));
            }
            catch (const std::exception &)
            {
                throw ConfigError("sweep value '" + v + "' is not an integer");
            }
        }
    }
    if (o.trials)
        spec.trials = *o.trials;
    if (o.passes)
        spec.passes = *o.passes;
    if (o.seed)
        spec.seed = *o.seed;
    if (o.rho)
        spec.rho = *o.rho;
    spec.workers = o.workers;

    const auto rows = experiment::run_sweep(spec, cfg.scenario);
    if (o.out.empty())
        std::cout << experiment::format_csv(rows);
    else
        experiment::emit_csv(rows, o.out);
    return 0;
}

int run_trial_command(const TrialOptions &o)
{
    auto cfg = base_config(o.config);
    auto &sc = cfg.scenario;
    if (o.profile)
    {
        const auto geo = experiment::geometry(experiment::parse_profile(*o.profile));
        sc.panel_side_m = geo.panel_side_m;
        cfg.antennas_per_panel = geo.antennas_per_panel;
    }
    if (o.seed)
        sc.seed = *o.seed;
    if (o.rho)
        sc.snr_rho = *o.rho;
    sc.validate();

    const auto algorithm = experiment::parse_algorithm(o.algo);
    chain::ExecutionMode mode;
    if (o.mode == "decentralized")
        mode = chain::ExecutionMode::Decentralized;
    else if (o.mode == "centralized")
        mode = chain::ExecutionMode::Centralized;
    else
        throw ConfigError("unknown mode '" + o.mode + "' (expected decentralized or centralized)");

    const int mp = experiment::trial_antennas_per_panel(cfg);
    const auto scenario = channel::build_scenario(sc, mp);
    if (o.np < 1 || o.np > mp)
        throw ConfigError("--np must lie in [1, " + std::to_string(mp) + "]");
    if (o.passes < 1)
        throw ConfigError("--passes must be >= 1");

    const auto r = experiment::run_trial(scenario, sc, algorithm, o.np, o.trial_index, o.passes, mode);

    auto &out = std::cout;
    out << "algorithm=" << chain::to_string(algorithm) << '\n'
        << "mode=" << chain::to_string(mode) << '\n'
        << "panel_side_m=" << experiment::format_real(sc.panel_side_m) << '\n'
        << "antennas_per_panel=" << mp << '\n'
        << "num_panels=" << scenario.num_panels() << '\n'
        << "total_antennas=" << scenario.total_antennas() << '\n'
        << "users_k=" << sc.users_k << '\n'
        << "np=" << o.np << '\n'
        << "n_total=" << o.np * scenario.num_panels() << '\n'
        << "rho=" << experiment::format_real(sc.snr_rho) << '\n'
        << "seed=" << sc.seed << '\n'
        << "trial_index=" << o.trial_index << '\n'
        << "passes=" << o.passes << '\n'
        << "sum_rate_bits=" << experiment::format_real(r.report.sum_rate_bits) << '\n'
        << "channel_capacity_bits=" << experiment::format_real(r.report.channel_capacity_bits) << '\n'
        << "chain_complex_scalars=" << r.traffic.chain_complex_scalars << '\n'
        << "chain_hermitian_scalars=" << r.traffic.chain_hermitian_scalars << '\n'
        << "chain_bytes=" << r.traffic.chain_bytes() << '\n'
        << "backplane_scalars_per_use=" << r.traffic.backplane_scalars_per_use << '\n'
        << "cpu_scalars_per_use=" << r.traffic.cpu_scalars_per_use << '\n'
        << "centralized_csi_scalars=" << r.traffic.centralized_csi_scalars << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Uplink detection simulator for panelized large intelligent surfaces"};
    app.require_subcommand(1);

    SweepOptions sw;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sum-rate sweep, written as CSV");
    sweep->add_option("--config", sw.config, "JSON configuration file");
    sweep->add_option("--axis", sw.axis, "np (outputs per panel) or n (total outputs)");
    sweep->add_option("--values", sw.values, "comma-separated axis values (default: per-profile grid)");
    sweep->add_option("--algos", sw.algos, "comma-separated subset of iic,rmf");
    sweep->add_option("--profiles", sw.profiles, "comma-separated subset of small,large");
    sweep->add_option("--trials", sw.trials, "channel realizations per point");
    sweep->add_option("--seed", sw.seed, "base seed");
    sweep->add_option("--rho", sw.rho, "linear SNR");
    sweep->add_option("--passes", sw.passes, "IIC passes over the chain");
    sweep->add_option("--workers", sw.workers, "worker threads (0: hardware concurrency)");
    sweep->add_option("--out", sw.out, "output CSV path (default: stdout)");

    TrialOptions tr;
    auto *trial = app.add_subcommand("trial", "Single realization, printed as key=value lines");
    trial->add_option("--config", tr.config, "JSON configuration file");
    trial->add_option("--algo", tr.algo, "iic or rmf");
    trial->add_option("--np", tr.np, "outputs per panel");
    trial->add_option("--seed", tr.seed, "seed");
    trial->add_option("--rho", tr.rho, "linear SNR");
    trial->add_option("--profile", tr.profile, "small or large; overrides the config panel geometry");
    trial->add_option("--trial-index", tr.trial_index, "realization index within the seed's stream");
    trial->add_option("--passes", tr.passes, "IIC passes over the chain");
    trial->add_option("--mode", tr.mode, "decentralized or centralized");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        if (sweep->parsed())
            return run_sweep_command(sw);
        return run_trial_command(tr);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const DomainError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitDomain;
    }
    catch (const IoError &e)
    {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
}
