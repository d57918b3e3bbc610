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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orisim/cli.hpp"
#include "orisim/config.hpp"

using namespace orisim;
using doctest::Approx;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ORISIM_TEST_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("orisim_cli_" + name); }

std::string config_error_key(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value) setenv(kSeedEnvVar, value, 1);
        else unsetenv(kSeedEnvVar);
    }
    ~EnvGuard() { unsetenv(kSeedEnvVar); }
};

}  // namespace

TEST_CASE("empty config yields the defaults") {
    const RunConfig rc = parse_config_text("{}");
    CHECK(rc.scene.room.width == 4.0);
    CHECK(rc.scene.room.ap_positions.size() == 4);
    CHECK(rc.scene.room.ap_positions[0].z == 3.0);
    CHECK(rc.budget.per_subcarrier_power() == Approx(1.0 / std::sqrt(62.0)));
    const ExperimentConfig sr = resolve_experiment(rc, ExperimentKind::SumRate);
    CHECK(sr.trials == 500);
    CHECK(sr.seed == 1);
}

TEST_CASE("link budget follows the subcarrier count") {
    const RunConfig rc = parse_config_text(R"({"link": {"n_subcarriers": 256}})");
    CHECK(rc.budget.per_subcarrier_power() == Approx(1.0 / std::sqrt(254.0)).epsilon(1e-12));
    CHECK(config_error_key(R"({"link": {"n_subcarriers": 7}})") == "link.n_subcarriers");
}

TEST_CASE("config errors name the offending key") {
    CHECK(config_error_key(R"({"receiver": {"fov_deg": -5}})") == "receiver.fov_deg");
    CHECK(config_error_key(R"({"experiment": {"fov_deg": [45, -5]}})") == "experiment.fov_deg");
    CHECK(config_error_key(R"({"room": {"widht": 4}})") == "room.widht");
    CHECK(config_error_key(R"({"bogus": 1})") == "bogus");
    CHECK(config_error_key(R"({"oris": {"enabled": "yes"}})") == "oris.enabled");
    CHECK(config_error_key(R"({"experiment": {"trials": 2.5}})") == "experiment.trials");
    CHECK(config_error_key(R"({"experiment": {"solver": "magic"}})") == "experiment.solver");
    CHECK(config_error_key(R"({"room": {"ap_positions": [[5, 1]]}})") == "room.ap_positions");
    CHECK(config_error_key("{not json") == "<root>");
    CHECK(config_error_key("[1, 2]") == "<root>");
    try {
        parse_config_text(R"({"receiver": {"fov_deg": -5}})");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("receiver.fov_deg") != std::string::npos);
    }
}

TEST_CASE("config survives a round trip through JSON") {
    const RunConfig rc = parse_config_text(slurp(kData / "tiny_scene.json"));
    const json once = config_to_json(rc);
    const json twice = config_to_json(parse_config(once));
    CHECK(once == twice);
    CHECK(run_id(once) == run_id(twice));
    CHECK(run_id(once).size() == 16);
}

TEST_CASE("help lists every subcommand and flag") {
    const Run r = cli({"--help"});
    CHECK(r.code == kExitOk);
    for (const char* word : {"cdf", "heatmap", "usage", "sum-rate", "solve", "--config", "--seed", "--trials", "--fov",
                             "--tiers", "--users", "--no-oris", "--no-blockage", "--solver", "--out", "--jobs"})
        CHECK_MESSAGE(r.out.find(word) != std::string::npos, word);
}

TEST_CASE("usage errors exit 2, runtime errors exit 1") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"cdf", "--bogus"}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"solve", "--solver", "magic"}).code == kExitUsage);
    CHECK(cli({"cdf", "--tiers", "5"}).code == kExitUsage);
    CHECK(cli({"cdf", "--config", "/no/such/file.json"}).code == kExitUsage);

    const Run bad = cli({"cdf", "--trials", "1", "--fov", "120", "--out", temp_file("never.csv").string()});
    CHECK(bad.code == kExitRuntime);
    CHECK(bad.err.find("fov_deg") != std::string::npos);
    const Run unwritable = cli({"usage", "--trials", "1", "--tiers", "0", "--fov", "15", "--out", "/no/such/dir/x.csv"});
    CHECK(unwritable.code == kExitRuntime);
}

TEST_CASE("cdf runs are reproducible byte for byte") {
    const fs::path a = temp_file("cdf_a.csv"), b = temp_file("cdf_b.csv");
    const std::vector<std::string> common{"cdf", "--trials", "10", "--seed", "7", "--fov", "45", "--tiers", "1"};
    auto with_out = [&](const fs::path& p) {
        auto v = common;
        v.insert(v.end(), {"--out", p.string()});
        return v;
    };
    REQUIRE(cli(with_out(a)).code == kExitOk);
    REQUIRE(cli(with_out(b)).code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() > 100);

    const json meta = json::parse(slurp(sidecar_path(a)));
    CHECK(meta["command"] == "cdf");
    CHECK(meta["config"]["experiment"]["seed"] == 7);
    CHECK(meta["config"]["experiment"]["trials"] == 10);
    CHECK(meta["run_id"].get<std::string>().size() == 16);
    CHECK(meta["run_id"] == json::parse(slurp(sidecar_path(b)))["run_id"]);
    for (const auto& p : {a, b}) {
        fs::remove(p);
        fs::remove(sidecar_path(p));
    }
}

TEST_CASE("sum-rate --no-oris writes only mirror-free rows") {
    const fs::path p = temp_file("sr.csv");
    const Run r = cli({"sum-rate", "--no-oris", "--trials", "3", "--users", "1", "--users", "2", "--out", p.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("wrote") != std::string::npos);
    std::istringstream csv(slurp(p));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "users,receiver,oris,mean_sum_rate_bps_hz");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(line.find(",false,") != std::string::npos);
    }
    CHECK(rows == 4);
    fs::remove(p);
    fs::remove(sidecar_path(p));
}

TEST_CASE("flags override the config file; the environment seeds when nothing else does") {
    const fs::path cfg = temp_file("cfg.json"), out = temp_file("ov.csv");
    std::ofstream(cfg) << R"({"experiment": {"trials": 2, "seed": 5, "fov_deg": [15], "tiers": [0]}})";

    auto meta_after = [&](std::vector<std::string> args) {
        args.insert(args.end(), {"--config", cfg.string(), "--out", out.string()});
        REQUIRE(cli(args).code == kExitOk);
        return json::parse(slurp(sidecar_path(out)))["config"]["experiment"];
    };
    {
        EnvGuard env("99");
        CHECK(meta_after({"usage"})["seed"] == 5);
        CHECK(meta_after({"usage"})["trials"] == 2);
        CHECK(meta_after({"usage", "--seed", "11", "--trials", "3"})["seed"] == 11);
        CHECK(meta_after({"usage", "--trials", "3"})["trials"] == 3);
    }
    std::ofstream(cfg) << R"({"experiment": {"trials": 1, "fov_deg": [15], "tiers": [0]}})";
    {
        EnvGuard env("99");
        CHECK(meta_after({"usage"})["seed"] == 99);
    }
    {
        EnvGuard env(nullptr);
        CHECK(meta_after({"usage"})["seed"] == 1);
    }
    {
        EnvGuard env("not-a-number");
        CHECK(cli({"usage", "--config", cfg.string(), "--out", out.string()}).code == kExitRuntime);
    }
    fs::remove(cfg);
    fs::remove(out);
    fs::remove(sidecar_path(out));
}

TEST_CASE("solve on the bundled scene reproduces the brute-force optimum") {
    const json expected = json::parse(slurp(kData / "tiny_scene_expected.json"));
    const std::string cfg = (kData / "tiny_scene.json").string();
    for (const char* solver : {"exact", "oracle"}) {
        const Run r = cli({"solve", "--config", cfg, "--solver", solver});
        REQUIRE(r.code == kExitOk);
        const json got = json::parse(r.out);
        CHECK(got["verified"] == true);
        CHECK(got["result"]["status"] == "optimal");
        CHECK(got["result"]["objective"].get<double>() ==
              Approx(expected["result"]["objective"].get<double>()).epsilon(1e-9));
        CHECK(got["scenario"] == expected["scenario"]);
        CHECK(r.err.find("verified") != std::string::npos);
    }
    const Run g = cli({"solve", "--config", cfg, "--solver", "greedy"});
    REQUIRE(g.code == kExitOk);
    CHECK(json::parse(g.out)["result"]["objective"].get<double>() <=
          expected["result"]["objective"].get<double>() * (1 + 1e-9));
}

TEST_CASE("solve --out writes the document and keeps stdout for the summary") {
    const fs::path p = temp_file("solve.json");
    const Run r = cli({"solve", "--config", (kData / "tiny_scene.json").string(), "--out", p.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("solve users=2", 0) == 0);
    const json doc = json::parse(slurp(p));
    for (const char* key : {"run_id", "config", "scenario", "solver", "result", "verified", "violations", "diagnostics"})
        CHECK_MESSAGE(doc.contains(key), key);
    fs::remove(p);
}
