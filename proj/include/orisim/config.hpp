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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orisim/experiments.hpp"

namespace orisim {

/// Schema or validation failure; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config: '" + key + "' " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Experiment settings given explicitly; anything left empty takes the
/// per-experiment default when resolved.
struct ExperimentOverrides {
    std::optional<int> trials;
    std::optional<std::vector<double>> fov_deg;
    std::optional<std::vector<int>> tiers;
    std::optional<bool> oris_enabled;
    std::optional<bool> blockage_enabled;
    std::optional<std::vector<int>> user_counts;
    std::optional<double> grid_step;
    std::optional<std::uint64_t> seed;
    std::optional<SolverKind> solver;
    std::optional<std::uint64_t> exact_node_limit;
    std::optional<unsigned> jobs;
    std::optional<std::string> output;
};

struct RunConfig {
    SceneConfig scene;
    LinkBudget budget;
    ExperimentOverrides experiment;
};

/// Validates `doc` against the config schema and applies defaults for
/// omitted fields. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Re-checks value ranges after command-line overrides were merged in.
void validate_config(const RunConfig& config);

/// Concrete settings for `kind`: overrides on top of the experiment defaults.
ExperimentConfig resolve_experiment(const RunConfig& config, ExperimentKind kind);

/// Settings for the single-scene `solve` command (two users by default).
ExperimentConfig resolve_solve(const RunConfig& config);

/// Complete config document; parse_config(config_to_json(c)) reproduces c.
nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

/// Short hex digest of a JSON document, used as a run identifier.
std::string run_id(const nlohmann::json& doc);

}  // namespace orisim
