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

#include "orisim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "orisim/random.hpp"

namespace orisim {

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Cdf: return "cdf";
        case ExperimentKind::Heatmap: return "heatmap";
        case ExperimentKind::Usage: return "usage";
        case ExperimentKind::SumRate: return "sumrate";
    }
    return "unknown";
}

ExperimentConfig default_experiment_config(ExperimentKind kind) {
    ExperimentConfig c;
    switch (kind) {
        case ExperimentKind::Cdf:
            c.trials = 2000;
            c.fov_deg = {15.0, 45.0, 75.0};
            c.tiers = {0, 1, 2, 3};
            c.blockage_enabled = false;
            break;
        case ExperimentKind::Usage:
            c.trials = 500;
            c.fov_deg = {15.0, 45.0, 75.0};
            c.tiers = {0, 1, 2, 3};
            c.blockage_enabled = false;
            break;
        case ExperimentKind::Heatmap:
            c.trials = 1;
            c.fov_deg = {45.0};
            c.tiers = {1};
            c.blockage_enabled = false;
            break;
        case ExperimentKind::SumRate:
            c.trials = 500;
            c.fov_deg = {45.0};
            c.tiers = {1};
            c.blockage_enabled = true;
            break;
    }
    return c;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
}

double percentile(std::vector<double> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("percentile: no samples");
    if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("percentile: p must be in (0, 100]");
    std::sort(samples.begin(), samples.end());
    const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(samples.size())));
    return samples[std::clamp<std::size_t>(rank, 1, samples.size()) - 1];
}

namespace {

struct Reflectors {
    std::vector<OrisElement> oris;
    std::vector<WallElement> walls;
};

Reflectors make_reflectors(const SceneConfig& scene, bool with_oris) {
    SceneConfig c = scene;
    c.oris.enabled = with_oris;
    const Scenario s = build_scenario(c, {}, false);
    return {s.oris, s.walls};
}

Scenario assemble(const RoomConfig& room, const Reflectors& r, std::vector<User> users, bool blockage) {
    Scenario s;
    s.room = room;
    s.oris = r.oris;
    s.walls = r.walls;
    s.users = std::move(users);
    s.blockage = compute_blockage(s.users, s.room.ap_positions, s.oris, s.walls, blockage);
    return s;
}

std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    return RandomStream(seed, keys).next();
}

// Only the per-user figures survive a trial; allocations are dropped to keep
// memory flat across thousands of trials.
struct Outcome {
    std::vector<double> snr;  // electrical, per user
    std::size_t used = 0;     // elements feeding a selected photodiode
    bool verified = false;
};

Outcome evaluate(const Scenario& scene, const ExperimentConfig& config) {
    const GainTables tables = compute_gain_tables(scene);
    const AllocationProblem problem = build_problem(tables, config.budget);
    const SolverResult solution = solve(problem, config.solver, BranchAndBoundOptions{1e-9, config.exact_node_limit});
    Outcome out;
    out.verified = static_cast<bool>(verify_solution(problem, solution));
    out.used = elements_used(problem, solution);
    for (std::size_t u = 0; u < scene.users.size(); ++u)
        out.snr.push_back(user_snr(u, solution.allocation, config.budget, tables).snr);
    return out;
}

ReceiverConfig receiver_for(const ExperimentConfig& config, double fov_deg, int tier) {
    ReceiverConfig r = config.scene.receiver;
    r.fov = deg_to_rad(fov_deg);
    r.tiers = tier;
    return r;
}

void validate(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (!(config.grid_step > 0.0)) throw std::invalid_argument("experiment: grid_step must be positive");
    if (config.fov_deg.empty()) throw std::invalid_argument("experiment: at least one FoV is required");
    if (config.tiers.empty()) throw std::invalid_argument("experiment: at least one tier count is required");
    config.budget.validate();
}

std::string fmt_db(double db) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    if (std::isinf(db)) s << "-inf";
    else s << db;
    return s.str();
}

std::string on_off(bool v) { return v ? "on" : "off"; }

struct SweepPoint {
    bool oris;
    double fov_deg;
    int tier;
};

// One sampled user per trial, evaluated under every sweep point so that all
// configurations see identical positions.
struct SingleUserSweep {
    std::vector<SweepPoint> points;
    std::vector<std::vector<Outcome>> outcomes;  // [trial][point]
};

SingleUserSweep single_user_sweep(const ExperimentConfig& config, const std::vector<bool>& oris_flags) {
    validate(config);
    SingleUserSweep sweep;
    for (bool o : oris_flags)
        for (double f : config.fov_deg)
            for (int t : config.tiers) sweep.points.push_back({o, f, t});

    const Reflectors with = make_reflectors(config.scene, true);
    const Reflectors without = make_reflectors(config.scene, false);

    const auto trials = static_cast<std::size_t>(config.trials);
    sweep.outcomes.assign(trials, {});
    parallel_for(trials, config.jobs, [&](std::size_t trial) {
        const std::uint64_t user_seed = stream_seed(config.seed, {trial});
        std::vector<Outcome>& row = sweep.outcomes[trial];
        row.reserve(sweep.points.size());
        for (const SweepPoint& p : sweep.points) {
            auto users = sample_users(1, config.scene.room, receiver_for(config, p.fov_deg, p.tier), user_seed);
            const Scenario scene = assemble(config.scene.room, p.oris ? with : without, std::move(users), false);
            row.push_back(evaluate(scene, config));
        }
    });
    return sweep;
}

void tally(ExperimentResult& result, const Outcome& o) {
    ++result.solves;
    if (!o.verified) ++result.verification_failures;
}

}  // namespace

ExperimentResult run_cdf(const ExperimentConfig& config) {
    std::vector<bool> flags;
    if (config.oris_enabled) flags.push_back(true);
    flags.push_back(false);
    const SingleUserSweep sweep = single_user_sweep(config, flags);

    ExperimentResult result;
    result.kind = ExperimentKind::Cdf;
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const SweepPoint& p = sweep.points[i];
        std::vector<double> samples;
        std::size_t outages = 0;
        for (std::size_t t = 0; t < sweep.outcomes.size(); ++t) {
            const Outcome& o = sweep.outcomes[t][i];
            tally(result, o);
            const double db = to_db(o.snr.front());
            if (std::isinf(db)) ++outages;
            samples.push_back(db);
            result.cdf.push_back({p.fov_deg, p.tier, p.oris, static_cast<int>(t), db});
        }
        std::ostringstream line;
        line << "cdf fov=" << p.fov_deg << " tier=" << p.tier << " oris=" << on_off(p.oris)
             << ": median " << fmt_db(percentile(samples, 50.0)) << " dB, outages " << outages << "/"
             << samples.size();
        result.summary.push_back(line.str());
    }
    return result;
}

ExperimentResult run_usage(const ExperimentConfig& config) {
    ExperimentResult result;
    result.kind = ExperimentKind::Usage;
    const SingleUserSweep sweep = single_user_sweep(config, {config.oris_enabled});

    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const SweepPoint& p = sweep.points[i];
        double total = 0.0;
        for (const auto& trial : sweep.outcomes) {
            const Outcome& o = trial[i];
            tally(result, o);
            total += static_cast<double>(o.used);
        }
        const double mean = total / static_cast<double>(sweep.outcomes.size());
        result.usage.push_back({p.fov_deg, p.tier, mean});
        std::ostringstream line;
        line << "usage fov=" << p.fov_deg << " tier=" << p.tier << ": mean elements used " << mean;
        result.summary.push_back(line.str());
    }
    return result;
}

ExperimentResult run_heatmap(const ExperimentConfig& config) {
    validate(config);
    const RoomConfig& room = config.scene.room;
    const auto cells = [&](double extent, const char* name) {
        const double n = extent / config.grid_step;
        const double r = std::round(n);
        if (r < 1.0 || std::abs(n - r) > 1e-9 * std::max(1.0, r))
            throw std::invalid_argument(std::string("heatmap: grid_step must divide the room ") + name);
        return static_cast<std::size_t>(r);
    };
    const std::size_t nx = cells(room.width, "width");
    const std::size_t ny = cells(room.depth, "depth");

    const double fov = config.fov_deg.front();
    const int adr_tier = config.tiers.front();
    struct Combo {
        std::string receiver;
        int tier;
        bool oris;
    };
    std::vector<Combo> combos;
    for (const auto& [name, tier] : {std::pair<std::string, int>{"pd", 0}, {"adr", adr_tier}}) {
        if (config.oris_enabled) combos.push_back({name, tier, true});
        combos.push_back({name, tier, false});
    }

    const Reflectors with = make_reflectors(config.scene, true);
    const Reflectors without = make_reflectors(config.scene, false);
    std::vector<std::vector<Outcome>> grid(nx * ny);
    parallel_for(nx * ny, config.jobs, [&](std::size_t cell) {
        const double x = (static_cast<double>(cell / ny) + 0.5) * config.grid_step;
        const double y = (static_cast<double>(cell % ny) + 0.5) * config.grid_step;
        for (const Combo& c : combos) {
            std::vector<User> users{place_user(x, y, 0.0, receiver_for(config, fov, c.tier))};
            grid[cell].push_back(evaluate(assemble(room, c.oris ? with : without, std::move(users), false), config));
        }
    });

    ExperimentResult result;
    result.kind = ExperimentKind::Heatmap;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t cell = 0; cell < grid.size(); ++cell) {
            const Outcome& o = grid[cell][ci];
            tally(result, o);
            const double db = to_db(o.snr.front());
            const double x = (static_cast<double>(cell / ny) + 0.5) * config.grid_step;
            const double y = (static_cast<double>(cell % ny) + 0.5) * config.grid_step;
            result.heatmap.push_back({x, y, combos[ci].receiver, combos[ci].oris, db});
            sum += db, lo = std::min(lo, db), hi = std::max(hi, db);
        }
        std::ostringstream line;
        line << "heatmap " << combos[ci].receiver << " oris=" << on_off(combos[ci].oris) << ": mean "
             << fmt_db(sum / static_cast<double>(grid.size())) << " dB, range [" << fmt_db(lo) << ", " << fmt_db(hi)
             << "] dB";
        result.summary.push_back(line.str());
    }
    return result;
}

ExperimentResult run_sum_rate(const ExperimentConfig& config) {
    validate(config);
    const double fov = config.fov_deg.front();
    const int adr_tier = config.tiers.front();
    struct Combo {
        std::string receiver;
        int tier;
        bool oris;
    };
    std::vector<Combo> combos;
    for (const auto& [name, tier] : {std::pair<std::string, int>{"pd", 0}, {"adr", adr_tier}}) {
        if (config.oris_enabled) combos.push_back({name, tier, true});
        combos.push_back({name, tier, false});
    }
    const Reflectors with = make_reflectors(config.scene, true);
    const Reflectors without = make_reflectors(config.scene, false);

    const auto trials = static_cast<std::size_t>(config.trials);
    const std::size_t jobs_total = config.user_counts.size() * trials;
    std::vector<std::vector<double>> rates(jobs_total);
    std::vector<std::vector<char>> verified(jobs_total);
    parallel_for(jobs_total, config.jobs, [&](std::size_t job) {
        const int count = config.user_counts[job / trials];
        const std::size_t trial = job % trials;
        if (count < 0) throw std::invalid_argument("sum-rate: user counts must be non-negative");
        const std::uint64_t seed = stream_seed(config.seed, {static_cast<std::uint64_t>(count), trial});
        for (const Combo& c : combos) {
            if (count == 0) {
                rates[job].push_back(0.0);
                verified[job].push_back(1);
                continue;
            }
            auto users = sample_users(static_cast<std::size_t>(count), config.scene.room,
                                      receiver_for(config, fov, c.tier), seed);
            const Outcome o = evaluate(assemble(config.scene.room, c.oris ? with : without, std::move(users),
                                                config.blockage_enabled),
                                       config);
            double sum = 0.0;
            for (double g : o.snr) sum += rate(g);
            rates[job].push_back(sum);
            verified[job].push_back(o.verified);
        }
    });

    ExperimentResult result;
    result.kind = ExperimentKind::SumRate;
    for (std::size_t ui = 0; ui < config.user_counts.size(); ++ui) {
        for (std::size_t ci = 0; ci < combos.size(); ++ci) {
            double total = 0.0;
            for (std::size_t t = 0; t < trials; ++t) {
                const std::size_t job = ui * trials + t;
                total += rates[job][ci];
                if (config.user_counts[ui] > 0) {
                    ++result.solves;
                    if (!verified[job][ci]) ++result.verification_failures;
                }
            }
            const double mean = total / static_cast<double>(trials);
            result.sumrate.push_back({config.user_counts[ui], combos[ci].receiver, combos[ci].oris, mean});
            std::ostringstream line;
            line << "sum-rate users=" << config.user_counts[ui] << " " << combos[ci].receiver
                 << " oris=" << on_off(combos[ci].oris) << ": " << mean << " bit/s/Hz";
            result.summary.push_back(line.str());
        }
    }
    return result;
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
    switch (kind) {
        case ExperimentKind::Cdf: return run_cdf(config);
        case ExperimentKind::Heatmap: return run_heatmap(config);
        case ExperimentKind::Usage: return run_usage(config);
        case ExperimentKind::SumRate: return run_sum_rate(config);
    }
    throw std::invalid_argument("run_experiment: unknown kind");
}

// ----------------------------------------------------------------------------
// CSV

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const char* flag(bool v) { return v ? "true" : "false"; }

double parse_num(std::string_view s) {
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("malformed number '" + std::string(s) + "'");
    return v;
}

bool parse_flag(std::string_view s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::runtime_error("malformed boolean '" + std::string(s) + "'");
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

const char* header(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Cdf: return "fov_deg,tier,oris,trial,snr_db";
        case ExperimentKind::Heatmap: return "x_m,y_m,receiver,oris,snr_db";
        case ExperimentKind::Usage: return "fov_deg,tier,mean_used";
        case ExperimentKind::SumRate: return "users,receiver,oris,mean_sum_rate_bps_hz";
    }
    return "";
}

}  // namespace

std::string results_csv(const ExperimentResult& r) {
    std::ostringstream out;
    out << header(r.kind) << '\n';
    switch (r.kind) {
        case ExperimentKind::Cdf:
            for (const CdfRow& row : r.cdf)
                out << num(row.fov_deg) << ',' << row.tier << ',' << flag(row.oris) << ',' << row.trial << ','
                    << num(row.snr_db) << '\n';
            break;
        case ExperimentKind::Heatmap:
            for (const HeatmapRow& row : r.heatmap)
                out << num(row.x_m) << ',' << num(row.y_m) << ',' << row.receiver << ',' << flag(row.oris) << ','
                    << num(row.snr_db) << '\n';
            break;
        case ExperimentKind::Usage:
            for (const UsageRow& row : r.usage)
                out << num(row.fov_deg) << ',' << row.tier << ',' << num(row.mean_used) << '\n';
            break;
        case ExperimentKind::SumRate:
            for (const SumRateRow& row : r.sumrate)
                out << row.users << ',' << row.receiver << ',' << flag(row.oris) << ','
                    << num(row.mean_sum_rate_bps_hz) << '\n';
            break;
    }
    return out.str();
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p += ".meta.json";
    return p;
}

void write_results(const ExperimentResult& result, const std::filesystem::path& path) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << results_csv(result);
        if (!out) throw std::runtime_error("write failed for " + path.string());
    }
    nlohmann::json meta = result.metadata;
    meta["kind"] = std::string(to_string(result.kind));
    meta["solves"] = result.solves;
    meta["verification_failures"] = result.verification_failures;
    meta["summary"] = result.summary;
    const std::filesystem::path side = sidecar_path(path);
    std::ofstream out(side);
    if (!out) throw std::runtime_error("cannot open " + side.string() + " for writing");
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + side.string());
}

ExperimentResult read_results(ExperimentKind kind, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    ExperimentResult r;
    r.kind = kind;
    std::string line;
    if (!std::getline(in, line) || line != header(kind))
        throw std::runtime_error(path.string() + ": unexpected header for " + std::string(to_string(kind)));
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        const auto need = [&](std::size_t n) {
            if (f.size() != n)
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(n) + " fields");
        };
        switch (kind) {
            case ExperimentKind::Cdf:
                need(5);
                r.cdf.push_back({parse_num(f[0]), static_cast<int>(parse_num(f[1])), parse_flag(f[2]),
                                 static_cast<int>(parse_num(f[3])), parse_num(f[4])});
                break;
            case ExperimentKind::Heatmap:
                need(5);
                r.heatmap.push_back(
                    {parse_num(f[0]), parse_num(f[1]), std::string(f[2]), parse_flag(f[3]), parse_num(f[4])});
                break;
            case ExperimentKind::Usage:
                need(3);
                r.usage.push_back({parse_num(f[0]), static_cast<int>(parse_num(f[1])), parse_num(f[2])});
                break;
            case ExperimentKind::SumRate:
                need(4);
                r.sumrate.push_back(
                    {static_cast<int>(parse_num(f[0])), std::string(f[1]), parse_flag(f[2]), parse_num(f[3])});
                break;
        }
    }
    return r;
}

}  // namespace orisim
