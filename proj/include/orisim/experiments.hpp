// SPDX-License-Identifier: Apache-2.0
//
// orisim - indoor VLC simulator with mirror-array reflectors and angle-diversity receivers
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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orisim/allocation.hpp"
#include "orisim/channel.hpp"
#include "orisim/scenario.hpp"

namespace orisim {

enum class ExperimentKind { Cdf, Heatmap, Usage, SumRate };
std::string_view to_string(ExperimentKind kind);

/// Fully resolved experiment settings. Angles here are degrees because they
/// are echoed verbatim into the output files.
struct ExperimentConfig {
    SceneConfig scene;
    LinkBudget budget;
    int trials = 1;
    std::vector<double> fov_deg{45.0};
    std::vector<int> tiers{1};
    bool oris_enabled = true;
    bool blockage_enabled = false;
    std::vector<int> user_counts{1, 2, 3, 4};
    double grid_step = 0.1;
    std::uint64_t seed = 1;
    SolverKind solver = SolverKind::Greedy;
    std::uint64_t exact_node_limit = 2'000'000;  // size cap for the exact solver
    unsigned jobs = 0;                            // 0 = hardware concurrency
};

/// Defaults for each experiment (trial counts, sweeps, blockage on/off).
ExperimentConfig default_experiment_config(ExperimentKind kind);

struct CdfRow {
    double fov_deg = 0.0;
    int tier = 0;
    bool oris = false;
    int trial = 0;
    double snr_db = 0.0;  // -inf for a zero SNR
    bool operator==(const CdfRow&) const = default;
};

struct HeatmapRow {
    double x_m = 0.0;
    double y_m = 0.0;
    std::string receiver;  // "pd" or "adr"
    bool oris = false;
    double snr_db = 0.0;
    bool operator==(const HeatmapRow&) const = default;
};

struct UsageRow {
    double fov_deg = 0.0;
    int tier = 0;
    double mean_used = 0.0;
    bool operator==(const UsageRow&) const = default;
};

struct SumRateRow {
    int users = 0;
    std::string receiver;
    bool oris = false;
    double mean_sum_rate_bps_hz = 0.0;
    bool operator==(const SumRateRow&) const = default;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::Cdf;
    std::vector<CdfRow> cdf;
    std::vector<HeatmapRow> heatmap;
    std::vector<UsageRow> usage;
    std::vector<SumRateRow> sumrate;
    std::vector<std::string> summary;  // one line per sweep point
    std::size_t solves = 0;
    std::size_t verification_failures = 0;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Single user, no blockage: select-best SNR per (fov, tier, mirrors on/off, trial).
ExperimentResult run_cdf(const ExperimentConfig& config);
/// Mean number of mirror elements feeding the selected photodiode per (fov, tier).
ExperimentResult run_usage(const ExperimentConfig& config);
/// SNR over a floor grid for {pd, adr} x {mirrors, none}; users face +x.
ExperimentResult run_heatmap(const ExperimentConfig& config);
/// Mean sum rate of the max-min allocation per user count with blockage.
ExperimentResult run_sum_rate(const ExperimentConfig& config);

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config);

/// Writes the CSV to `path` and the metadata sidecar to `sidecar_path(path)`.
/// Throws std::runtime_error naming the path on I/O failure.
void write_results(const ExperimentResult& result, const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);
std::string results_csv(const ExperimentResult& result);
ExperimentResult read_results(ExperimentKind kind, const std::filesystem::path& path);

/// Value at the p-th percentile (nearest rank, 0 < p <= 100) of `samples`.
double percentile(std::vector<double> samples, double p);

/// Runs fn(i) for i in [0, count) on `jobs` workers (0 = hardware concurrency).
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace orisim
