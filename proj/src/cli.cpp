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

#include "orisim/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "orisim/config.hpp"

namespace orisim {

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::vector<double> fov;
    std::vector<int> tiers;
    std::vector<int> users;
    bool no_oris = false;
    bool no_blockage = false;
    std::optional<std::string> solver;
    std::optional<std::string> out;
    std::optional<unsigned> jobs;
};

std::optional<std::uint64_t> seed_from_env() {
    const char* v = std::getenv(kSeedEnvVar);
    if (v == nullptr || *v == '\0') return std::nullopt;
    try {
        std::size_t pos = 0;
        const unsigned long long s = std::stoull(v, &pos, 10);
        if (pos != std::string(v).size()) throw std::invalid_argument(v);
        return s;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string(kSeedEnvVar) + " must be a non-negative integer, got '" + v + "'");
    }
}

RunConfig merge(const Flags& f) {
    RunConfig c = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    ExperimentOverrides& e = c.experiment;
    if (f.seed) e.seed = *f.seed;
    else if (!e.seed) e.seed = seed_from_env();
    if (f.trials) e.trials = *f.trials;
    if (!f.fov.empty()) e.fov_deg = f.fov;
    if (!f.tiers.empty()) e.tiers = f.tiers;
    if (!f.users.empty()) e.user_counts = f.users;
    if (f.no_oris) e.oris_enabled = false;
    if (f.no_blockage) e.blockage_enabled = false;
    if (f.solver) e.solver = solver_kind_from_string(*f.solver);
    if (f.out) e.output = *f.out;
    if (f.jobs) e.jobs = *f.jobs;
    validate_config(c);
    return c;
}

std::string default_output(const std::string& command) { return command + ".csv"; }

int run_experiment_command(ExperimentKind kind, const std::string& command, const RunConfig& rc, std::ostream& out) {
    const ExperimentConfig config = resolve_experiment(rc, kind);
    const std::string path = rc.experiment.output.value_or(default_output(command));

    ExperimentResult result = run_experiment(kind, config);
    nlohmann::json resolved = experiment_config_to_json(config);
    result.metadata["config"] = resolved;
    result.metadata["run_id"] = run_id(resolved);
    result.metadata["command"] = command;
    write_results(result, path);

    for (const std::string& line : result.summary) out << line << '\n';
    out << "solves=" << result.solves << " verification_failures=" << result.verification_failures << '\n';
    out << "wrote " << path << " and " << sidecar_path(path).string() << '\n';
    return result.verification_failures == 0 ? kExitOk : kExitRuntime;
}

int run_solve_command(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    const ExperimentConfig config = resolve_solve(rc);
    SceneConfig scene = config.scene;
    scene.oris.enabled = config.oris_enabled;
    scene.receiver.fov = deg_to_rad(config.fov_deg.front());
    scene.receiver.tiers = config.tiers.front();
    const auto count = static_cast<std::size_t>(config.user_counts.front());

    Scenario scenario =
        build_scenario(scene, sample_users(count, scene.room, scene.receiver, config.seed), config.blockage_enabled);
    const GainTables tables = compute_gain_tables(scenario);
    const AllocationProblem problem = build_problem(tables, config.budget);
    const SolverResult result =
        solve(problem, config.solver, BranchAndBoundOptions{1e-9, config.exact_node_limit});
    const VerificationReport report = verify_solution(problem, result);

    nlohmann::json resolved = experiment_config_to_json(config);
    nlohmann::json doc = {
        {"run_id", run_id(resolved)},
        {"config", resolved},
        {"scenario", scenario_to_json(scenario)},
        {"solver", std::string(to_string(config.solver))},
        {"result", solver_result_to_json(result)},
        {"verified", report.ok},
        {"violations", report.violations},
        {"diagnostics", tables.diagnostics()},
    };

    if (rc.experiment.output) {
        std::ofstream file(*rc.experiment.output);
        if (!file) throw std::runtime_error("cannot open " + *rc.experiment.output + " for writing");
        file << doc.dump(2) << '\n';
        if (!file) throw std::runtime_error("write failed for " + *rc.experiment.output);
    }
    // Without --out the JSON owns stdout, so the summary goes to stderr.
    std::ostream& summary = rc.experiment.output ? out : err;
    if (!rc.experiment.output) out << doc.dump(2) << '\n';

    summary << "solve users=" << count << " solver=" << to_string(config.solver) << " status=" << to_string(result.status)
        << " objective=" << result.objective << " min_snr_db=" << to_db(result.objective * result.objective)
        << (report.ok ? " verified" : " VERIFICATION FAILED") << '\n';
    return report.ok ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Indoor VLC simulator with mirror-array reflectors and angle-diversity receivers", "orisim"};
    app.require_subcommand(1, 1);

    Flags f;
    app.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--seed", f.seed, std::string("Base RNG seed (fallback: $") + kSeedEnvVar + ", then 1)");
    app.add_option("--trials", f.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--fov", f.fov, "Receiver field of view in degrees (repeatable)")->allow_extra_args(false);
    app.add_option("--tiers", f.tiers, "ADR tier count 0..3 (repeatable)")->allow_extra_args(false)->check(CLI::Range(0, 3));
    app.add_option("--users", f.users, "User counts (repeatable; solve uses the first)")->allow_extra_args(false);
    app.add_flag("--no-oris", f.no_oris, "Disable the mirror array");
    app.add_flag("--no-blockage", f.no_blockage, "Disable body blockage");
    app.add_option("--solver", f.solver, "Allocation solver")->check(CLI::IsMember({"oracle", "exact", "greedy"}));
    app.add_option("--out", f.out, "Output path (CSV for experiments, JSON for solve)");
    app.add_option("--jobs", f.jobs, "Worker threads (0 = available parallelism)");

    struct Command {
        const char* name;
        const char* help;
        std::optional<ExperimentKind> kind;
    };
    const Command commands[] = {
        {"cdf", "SNR samples for the CDF sweep over FoV, tiers and mirrors on/off", ExperimentKind::Cdf},
        {"heatmap", "SNR over a floor grid for single PD and ADR", ExperimentKind::Heatmap},
        {"usage", "Mean number of mirror elements used per FoV and tier", ExperimentKind::Usage},
        {"sum-rate", "Mean sum rate versus user count with blockage", ExperimentKind::SumRate},
        {"solve", "Allocate one sampled scene and dump the result as JSON", std::nullopt},
    };
    for (const Command& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        const RunConfig rc = merge(f);
        for (const Command& c : commands) {
            if (!app.got_subcommand(c.name)) continue;
            if (c.kind) return run_experiment_command(*c.kind, c.name, rc, out);
            return run_solve_command(rc, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace orisim
