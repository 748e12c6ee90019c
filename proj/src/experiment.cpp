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

#include "lis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lis/errors.hpp"

namespace lis::experiment
{

using chain::Algorithm;
using json = nlohmann::json;

ProfileGeometry geometry(PanelProfile profile)
{
    return profile == PanelProfile::Small ? ProfileGeometry{0.2, 16} : ProfileGeometry{1.0, 400};
}

std::string_view to_string(PanelProfile profile)
{
    return profile == PanelProfile::Small ? "small" : "large";
}

namespace
{

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

PanelProfile parse_profile(std::string_view name)
{
    const auto n = lower(name);
    if (n == "small")
        return PanelProfile::Small;
    if (n == "large")
        return PanelProfile::Large;
    throw ConfigError("unknown panel profile '" + std::string(name) + "' (expected small or large)");
}

Algorithm parse_algorithm(std::string_view name)
{
    const auto n = lower(name);
    if (n == "iic")
        return Algorithm::Iic;
    if (n == "rmf")
        return Algorithm::Rmf;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected iic or rmf)");
}

std::string_view to_string(SweepAxis axis)
{
    return axis == SweepAxis::NpPerPanel ? "np" : "n";
}

SweepAxis parse_axis(std::string_view name)
{
    const auto n = lower(name);
    if (n == "np" || n == "np_per_panel")
        return SweepAxis::NpPerPanel;
    if (n == "n" || n == "total_n")
        return SweepAxis::TotalN;
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected np or n)");
}

std::vector<int> default_np_values(PanelProfile profile)
{
    if (profile == PanelProfile::Small)
        return {1, 2, 4, 8, 12, 16};
    return {1, 2, 4, 8, 12, 16, 20};
}

void SweepSpec::validate() const
{
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (passes < 1)
        throw ConfigError("passes must be >= 1");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw ConfigError("rho must be positive");
    if (algorithms.empty())
        throw ConfigError("at least one algorithm is required");
    if (panel_profiles.empty())
        throw ConfigError("at least one panel profile is required");
    for (int v : values)
        if (v < 1)
            throw ConfigError("sweep values must be positive integers");
}

// ---------------------------------------------------------------------------------------
// Configuration file

namespace
{

double get_real(const json &v, const std::string &key)
{
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::int64_t get_integer(const json &v, const std::string &key)
{
    if (v.is_number_integer())
        return v.get<std::int64_t>();
    if (v.is_number_float())
    {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 9.0e15)
            return static_cast<std::int64_t>(d);
    }
    throw ConfigError("config key '" + key + "' must be an integer");
}

std::uint64_t get_unsigned(const json &v, const std::string &key)
{
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    const auto i = get_integer(v, key);
    if (i < 0)
        throw ConfigError("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(i);
}

int get_int(const json &v, const std::string &key)
{
    const auto i = get_integer(v, key);
    if (i < INT32_MIN || i > INT32_MAX)
        throw ConfigError("config key '" + key + "' is out of range");
    return static_cast<int>(i);
}

// Accepts ["a", "b"] or "a,b".
std::vector<std::string> get_names(const json &v, const std::string &key)
{
    std::vector<std::string> out;
    if (v.is_string())
    {
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(item);
    }
    else if (v.is_array())
    {
        for (const auto &e : v)
        {
            if (!e.is_string())
                throw ConfigError("config key '" + key + "' must list strings");
            out.push_back(e.get<std::string>());
        }
    }
    else
        throw ConfigError("config key '" + key + "' must be a string or an array of strings");
    return out;
}

} // namespace

ExperimentConfig parse_config(std::string_view json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text.begin(), json_text.end());
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg;
    auto &sc = cfg.scenario;
    auto &sw = cfg.sweep;
    std::optional<double> snr_rho, rho;

    for (const auto &[key, v] : doc.items())
    {
        if (key == "lis_width_m")
            sc.lis_width_m = get_real(v, key);
        else if (key == "lis_height_m")
            sc.lis_height_m = get_real(v, key);
        else if (key == "room_width_m")
            sc.room_width_m = get_real(v, key);
        else if (key == "room_height_m")
            sc.room_height_m = get_real(v, key);
        else if (key == "room_depth_m")
            sc.room_depth_m = get_real(v, key);
        else if (key == "panel_side_m")
            sc.panel_side_m = get_real(v, key);
        else if (key == "users_k")
            sc.users_k = get_int(v, key);
        else if (key == "wavelength_m")
            sc.wavelength_m = get_real(v, key);
        else if (key == "snr_rho")
            snr_rho = get_real(v, key);
        else if (key == "min_user_depth_m")
            sc.min_user_depth_m = get_real(v, key);
        else if (key == "seed")
            sc.seed = sw.seed = get_unsigned(v, key);
        else if (key == "antennas_per_panel")
            cfg.antennas_per_panel = get_int(v, key);
        else if (key == "axis")
        {
            if (!v.is_string())
                throw ConfigError("config key 'axis' must be a string");
            sw.axis = parse_axis(v.get<std::string>());
        }
        else if (key == "values")
        {
            if (!v.is_array())
                throw ConfigError("config key 'values' must be an array of integers");
            sw.values.clear();
            for (const auto &e : v)
                sw.values.push_back(get_int(e, key));
        }
        else if (key == "algorithms")
        {
            sw.algorithms.clear();
            for (const auto &n : get_names(v, key))
                sw.algorithms.push_back(parse_algorithm(n));
        }
        else if (key == "panel_profiles")
        {
            sw.panel_profiles.clear();
            for (const auto &n : get_names(v, key))
                sw.panel_profiles.push_back(parse_profile(n));
        }
        else if (key == "trials")
            sw.trials = get_int(v, key);
        else if (key == "rho")
            rho = get_real(v, key);
        else if (key == "passes")
            sw.passes = get_int(v, key);
        else
            throw ConfigError("unknown config key '" + key + "'");
    }

    // snr_rho (scenario) and rho (sweep) name the same quantity.
    if (snr_rho && rho && *snr_rho != *rho)
        throw ConfigError("config sets both snr_rho and rho to different values");
    if (snr_rho || rho)
        sc.snr_rho = sw.rho = snr_rho ? *snr_rho : *rho;

    sc.validate();
    sw.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading config file '" + path.string() + "'");
    return parse_config(text.str());
}

int trial_antennas_per_panel(const ExperimentConfig &cfg)
{
    if (cfg.antennas_per_panel)
        return *cfg.antennas_per_panel;
    const double per_side = cfg.scenario.panel_side_m / cfg.scenario.wavelength_m;
    const long r = std::lround(per_side);
    if (r < 1 || std::abs(per_side - static_cast<double>(r)) > 1e-9 * static_cast<double>(r))
        throw ConfigError("panel_side_m is not a whole number of wavelengths; set antennas_per_panel explicitly");
    return static_cast<int>(r * r);
}

// ---------------------------------------------------------------------------------------
// Trials

channel::ChannelRealization realize_trial(const channel::Scenario &scenario, const channel::ScenarioConfig &cfg,
                                          std::uint64_t trial_index)
{
    auto rng = channel::make_rng(cfg.seed, trial_index, channel::Stream::Users);
    const auto users = channel::sample_users(scenario, cfg, rng);
    return channel::realize_channel(scenario, users, cfg.wavelength_m);
}

TrialResult run_trial(const channel::Scenario &scenario, const channel::ScenarioConfig &cfg, Algorithm algorithm,
                      int np_outputs, std::uint64_t trial_index, int passes, chain::ExecutionMode mode)
{
    const auto chan = realize_trial(scenario, cfg, trial_index);
    auto result = chain::run_algorithm(chan.blocks, cfg.snr_rho, np_outputs, algorithm, mode, passes);
    return {std::move(result.report), result.traffic};
}

// ---------------------------------------------------------------------------------------
// Sweeps

namespace
{

struct ProfilePlan
{
    PanelProfile profile;
    channel::ScenarioConfig cfg;
    channel::Scenario scenario;
    std::vector<int> np_values; // ascending, unique
};

template <typename T>
std::vector<T> canonical(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

ProfilePlan plan_profile(const SweepSpec &spec, const channel::ScenarioConfig &base, PanelProfile profile)
{
    const auto geo = geometry(profile);
    ProfilePlan plan{profile, base, {}, {}};
    plan.cfg.panel_side_m = geo.panel_side_m;
    plan.cfg.seed = spec.seed;
    plan.cfg.snr_rho = spec.rho;
    plan.scenario = channel::build_scenario(plan.cfg, geo.antennas_per_panel);

    const int p = plan.scenario.num_panels();
    const int mp = geo.antennas_per_panel;
    std::vector<int> values = spec.values;
    if (values.empty())
    {
        values = default_np_values(profile);
        if (spec.axis == SweepAxis::TotalN)
            for (int &v : values)
                v *= p;
    }

    for (int v : values)
    {
        int np = v;
        if (spec.axis == SweepAxis::TotalN)
        {
            if (v % p != 0)
                throw ConfigError("total N " + std::to_string(v) + " is not divisible by P = " + std::to_string(p) +
                                  " of the " + std::string(to_string(profile)) + " profile");
            np = v / p;
        }
        if (np < 1 || np > mp)
            throw ConfigError("Np " + std::to_string(np) + " outside [1, " + std::to_string(mp) + "] for the " +
                              std::string(to_string(profile)) + " profile");
        plan.np_values.push_back(np);
    }
    plan.np_values = canonical(std::move(plan.np_values));
    return plan;
}

// Per-trial results of one profile: sum_rate[algorithm][np index], capacity, chain scalars.
struct TrialCells
{
    std::vector<std::vector<double>> sum_rate;
    std::vector<std::vector<std::int64_t>> chain_scalars;
    double channel_capacity = 0.0;
};

TrialCells evaluate_trial(const ProfilePlan &plan, const std::vector<Algorithm> &algorithms, int passes,
                          std::uint64_t trial)
{
    const auto chan = realize_trial(plan.scenario, plan.cfg, trial);
    TrialCells cells;
    cells.channel_capacity = capacity::channel_capacity(chan.blocks, plan.cfg.snr_rho);
    for (Algorithm a : algorithms)
    {
        auto &rates = cells.sum_rate.emplace_back();
        auto &scalars = cells.chain_scalars.emplace_back();
        for (int np : plan.np_values)
        {
            const auto r = chain::run_algorithm(chan.blocks, plan.cfg.snr_rho, np, a,
                                                chain::ExecutionMode::Decentralized, passes);
            rates.push_back(r.report.sum_rate_bits);
            scalars.push_back(r.traffic.chain_complex_scalars);
        }
    }
    return cells;
}

// Fans trials out over worker threads. Results land in per-trial slots so aggregation order
// (and therefore the output) does not depend on scheduling.
std::vector<TrialCells> run_trials(const ProfilePlan &plan, const SweepSpec &spec,
                                   const std::vector<Algorithm> &algorithms)
{
    const auto n = static_cast<std::size_t>(spec.trials);
    std::vector<TrialCells> out(n);
    unsigned workers = spec.workers != 0 ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t t = next++; t < n; t = next++)
        {
            try
            {
                out[t] = evaluate_trial(plan, algorithms, spec.passes, t);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };

    if (workers <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec &spec, const channel::ScenarioConfig &base)
{
    spec.validate();
    const auto profiles = canonical(spec.panel_profiles);
    const auto algorithms = canonical(spec.algorithms);

    // Validate every profile before spending time on any trial.
    std::vector<ProfilePlan> plans;
    for (PanelProfile profile : profiles)
        plans.push_back(plan_profile(spec, base, profile));

    std::vector<SweepRow> rows;
    for (const auto &plan : plans)
    {
        const auto cells = run_trials(plan, spec, algorithms);
        const double trials = spec.trials;

        double cap_sum = 0.0;
        for (const auto &c : cells)
            cap_sum += c.channel_capacity;

        for (std::size_t a = 0; a < algorithms.size(); ++a)
        {
            for (std::size_t v = 0; v < plan.np_values.size(); ++v)
            {
                double sum = 0.0;
                for (const auto &c : cells)
                    sum += c.sum_rate[a][v];
                const double mean = sum / trials;
                double sq = 0.0;
                for (const auto &c : cells)
                    sq += (c.sum_rate[a][v] - mean) * (c.sum_rate[a][v] - mean);

                SweepRow row;
                row.profile = plan.profile;
                row.algorithm = algorithms[a];
                row.np = plan.np_values[v];
                row.n_total = row.np * plan.scenario.num_panels();
                row.rho = spec.rho;
                row.trials = spec.trials;
                row.mean_sum_rate_bits = mean;
                row.std_sum_rate_bits = spec.trials > 1 ? std::sqrt(sq / (trials - 1.0)) : 0.0;
                row.mean_channel_capacity_bits = cap_sum / trials;
                row.chain_scalars = cells.front().chain_scalars[a][v];
                row.seed = spec.seed;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------------------
// CSV

std::string format_real(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

std::string csv_header()
{
    return "profile,algorithm,np,n_total,rho,trials,mean_sum_rate_bits,std_sum_rate_bits,"
           "mean_channel_capacity_bits,chain_scalars,seed";
}

std::string format_csv(const std::vector<SweepRow> &rows)
{
    std::string out = csv_header() + "\n";
    for (const auto &r : rows)
    {
        out += std::string(to_string(r.profile)) + ',' + std::string(chain::to_string(r.algorithm)) + ',' +
               std::to_string(r.np) + ',' + std::to_string(r.n_total) + ',' + format_real(r.rho) + ',' +
               std::to_string(r.trials) + ',' + format_real(r.mean_sum_rate_bits) + ',' +
               format_real(r.std_sum_rate_bits) + ',' + format_real(r.mean_channel_capacity_bits) + ',' +
               std::to_string(r.chain_scalars) + ',' + std::to_string(r.seed) + '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << format_csv(rows);
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

} // namespace lis::experiment
