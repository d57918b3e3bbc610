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

#include "orisim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace orisim {

namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so that
// anything left over can be reported as unknown.
class Section {
public:
    Section(const json& doc, std::string path) : path_(std::move(path)) {
        if (doc.is_null()) return;
        if (!doc.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
        doc_ = &doc;
    }

    ~Section() noexcept(false) {
        if (doc_ == nullptr || std::uncaught_exceptions() > 0) return;
        for (const auto& [key, value] : doc_->items())
            if (!seen_.count(key)) throw ConfigError(full(key), "is not a recognised key");
    }

    std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        if (doc_ == nullptr) return nullptr;
        const auto it = doc_->find(key);
        return it == doc_->end() ? nullptr : &*it;
    }

    const json& child(const std::string& key) {
        static const json null_doc;
        const json* v = find(key);
        return v ? *v : null_doc;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError(full(key), "must be a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError(full(key), "must be an integer");
            out = v->get<int>();
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(full(key), "must be true or false");
            out = v->get<bool>();
        }
    }

    template <class T>
    void optional_scalar(const std::string& key, std::optional<T>& out) {
        if (const json* v = find(key)) {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v->is_boolean()) throw ConfigError(full(key), "must be true or false");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v->is_number_integer()) throw ConfigError(full(key), "must be an integer");
                if (std::is_unsigned_v<T> && v->get<long long>() < 0)
                    throw ConfigError(full(key), "must be non-negative");
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v->is_number()) throw ConfigError(full(key), "must be a number");
            } else {
                if (!v->is_string()) throw ConfigError(full(key), "must be a string");
            }
            out = v->get<T>();
        }
    }

    /// Accepts a scalar or an array of scalars.
    template <class T>
    void optional_list(const std::string& key, std::optional<std::vector<T>>& out) {
        const json* v = find(key);
        if (!v) return;
        const auto check = [&](const json& e) {
            if constexpr (std::is_integral_v<T>) {
                if (!e.is_number_integer()) throw ConfigError(full(key), "must contain integers");
            } else {
                if (!e.is_number()) throw ConfigError(full(key), "must contain numbers");
            }
            return e.get<T>();
        };
        std::vector<T> values;
        if (v->is_array()) {
            for (const json& e : *v) values.push_back(check(e));
        } else {
            values.push_back(check(*v));
        }
        out = std::move(values);
    }

private:
    const json* doc_ = nullptr;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key, what);
}

void check_fov(double deg, const std::string& key) {
    require(std::isfinite(deg) && deg > 0.0 && deg <= 90.0, key, "must be in (0, 90] degrees");
}

}  // namespace

RunConfig parse_config(const json& doc) {
    RunConfig c;
    Section root(doc, "");

    {
        Section s(root.child("room"), "room");
        RoomConfig& room = c.scene.room;
        s.number("width", room.width);
        s.number("depth", room.depth);
        s.number("height", room.height);
        double half_angle = rad_to_deg(room.led_half_power_semi_angle);
        s.number("led_half_power_semi_angle_deg", half_angle);
        room.led_half_power_semi_angle = deg_to_rad(half_angle);
        bool explicit_aps = false;
        if (const json* aps = s.find("ap_positions")) {
            require(aps->is_array() && !aps->empty(), "room.ap_positions", "must be a non-empty array");
            room.ap_positions.clear();
            for (const json& p : *aps) {
                require(p.is_array() && (p.size() == 2 || p.size() == 3), "room.ap_positions",
                        "entries must be [x, y] or [x, y, z]");
                for (const json& e : p) require(e.is_number(), "room.ap_positions", "entries must be numeric");
                room.ap_positions.push_back(
                    {p[0].get<double>(), p[1].get<double>(), p.size() == 3 ? p[2].get<double>() : room.height});
            }
            explicit_aps = true;
        }
        // Default APs hang from the ceiling of whatever room height was given.
        if (!explicit_aps)
            for (Vec3& ap : room.ap_positions) ap.z = room.height;
    }
    {
        Section s(root.child("oris"), "oris");
        s.boolean("enabled", c.scene.oris.enabled);
        s.integer("cols", c.scene.oris.cols);
        s.integer("rows", c.scene.oris.rows);
        s.number("band_fraction", c.scene.oris.band_fraction);
        s.number("reflectivity", c.scene.oris.reflectivity);
    }
    {
        Section s(root.child("wall"), "wall");
        s.number("cell_size", c.scene.wall.cell_size);
        s.number("reflectivity", c.scene.wall.reflectivity);
    }
    {
        Section s(root.child("receiver"), "receiver");
        ReceiverConfig& r = c.scene.receiver;
        double fov = rad_to_deg(r.fov);
        s.number("fov_deg", fov);
        r.fov = deg_to_rad(fov);
        s.integer("tiers", r.tiers);
        s.number("pd_area_m2", r.pd_area);
        s.number("responsivity", r.responsivity);
        s.number("device_height", r.device_height);
        s.number("body_offset", r.body_offset);
        s.number("body_height", r.body_height);
        s.number("body_radius", r.body_radius);
    }
    {
        Section s(root.child("link"), "link");
        s.number("total_power_w", c.budget.total_power);
        s.integer("n_subcarriers", c.budget.n_subcarriers);
        s.number("noise_psd", c.budget.noise_psd);
        s.number("bandwidth_hz", c.budget.bandwidth);
    }
    {
        Section s(root.child("experiment"), "experiment");
        ExperimentOverrides& e = c.experiment;
        s.optional_scalar("trials", e.trials);
        s.optional_list("fov_deg", e.fov_deg);
        s.optional_list("tiers", e.tiers);
        s.optional_scalar("oris_enabled", e.oris_enabled);
        s.optional_scalar("blockage_enabled", e.blockage_enabled);
        s.optional_list("user_counts", e.user_counts);
        s.optional_scalar("grid_step", e.grid_step);
        s.optional_scalar("seed", e.seed);
        std::optional<std::string> solver;
        s.optional_scalar("solver", solver);
        if (solver) {
            try {
                e.solver = solver_kind_from_string(*solver);
            } catch (const std::invalid_argument&) {
                throw ConfigError("experiment.solver", "must be one of oracle, exact, greedy");
            }
        }
        s.optional_scalar("exact_node_limit", e.exact_node_limit);
        s.optional_scalar("jobs", e.jobs);
        s.optional_scalar("output", e.output);
    }

    validate_config(c);
    return c;
}

void validate_config(const RunConfig& c) {
    const RoomConfig& room = c.scene.room;
    require(room.width > 0.0, "room.width", "must be positive");
    require(room.depth > 0.0, "room.depth", "must be positive");
    require(room.height > 0.0, "room.height", "must be positive");
    const double half = rad_to_deg(room.led_half_power_semi_angle);
    require(half > 0.0 && half < 90.0, "room.led_half_power_semi_angle_deg", "must be in (0, 90) degrees");
    for (const Vec3& ap : room.ap_positions)
        require(ap.finite() && ap.x >= 0.0 && ap.x <= room.width && ap.y >= 0.0 && ap.y <= room.depth && ap.z > 0.0 &&
                    ap.z <= room.height,
                "room.ap_positions", "must lie inside the room");

    const OrisLayout& o = c.scene.oris;
    require(o.cols >= 1, "oris.cols", "must be >= 1");
    require(o.rows >= 1, "oris.rows", "must be >= 1");
    require(o.band_fraction > 0.0 && o.band_fraction < 1.0, "oris.band_fraction", "must be in (0, 1)");
    require(o.reflectivity > 0.0 && o.reflectivity <= 1.0, "oris.reflectivity", "must be in (0, 1]");

    require(c.scene.wall.cell_size > 0.0, "wall.cell_size", "must be positive");
    require(c.scene.wall.reflectivity >= 0.0 && c.scene.wall.reflectivity <= 1.0, "wall.reflectivity",
            "must be in [0, 1]");

    const ReceiverConfig& r = c.scene.receiver;
    check_fov(rad_to_deg(r.fov), "receiver.fov_deg");
    require(r.tiers >= 0 && r.tiers <= 3, "receiver.tiers", "must be in 0..3");
    require(r.pd_area > 0.0, "receiver.pd_area_m2", "must be positive");
    require(r.responsivity > 0.0, "receiver.responsivity", "must be positive");
    require(r.device_height > 0.0 && r.device_height < room.height, "receiver.device_height",
            "must be positive and below the ceiling");
    require(r.body_offset >= 0.0, "receiver.body_offset", "must be non-negative");
    require(r.body_height > 0.0, "receiver.body_height", "must be positive");
    require(r.body_radius > 0.0, "receiver.body_radius", "must be positive");
    require(r.body_offset > r.body_radius, "receiver.body_offset", "must exceed receiver.body_radius");

    require(c.budget.total_power > 0.0, "link.total_power_w", "must be positive");
    require(c.budget.n_subcarriers >= 4 && c.budget.n_subcarriers % 2 == 0, "link.n_subcarriers",
            "must be even and >= 4");
    require(c.budget.noise_psd > 0.0, "link.noise_psd", "must be positive");
    require(c.budget.bandwidth > 0.0, "link.bandwidth_hz", "must be positive");

    const ExperimentOverrides& e = c.experiment;
    if (e.trials) require(*e.trials >= 1, "experiment.trials", "must be >= 1");
    if (e.fov_deg) {
        require(!e.fov_deg->empty(), "experiment.fov_deg", "must not be empty");
        for (double f : *e.fov_deg) check_fov(f, "experiment.fov_deg");
    }
    if (e.tiers) {
        require(!e.tiers->empty(), "experiment.tiers", "must not be empty");
        for (int t : *e.tiers) require(t >= 0 && t <= 3, "experiment.tiers", "entries must be in 0..3");
    }
    if (e.user_counts) {
        require(!e.user_counts->empty(), "experiment.user_counts", "must not be empty");
        for (int u : *e.user_counts) require(u >= 0, "experiment.user_counts", "entries must be non-negative");
    }
    if (e.grid_step) require(*e.grid_step > 0.0, "experiment.grid_step", "must be positive");
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

ExperimentConfig apply(const RunConfig& c, ExperimentConfig out) {
    out.scene = c.scene;
    out.budget = c.budget;
    const ExperimentOverrides& e = c.experiment;
    if (e.trials) out.trials = *e.trials;
    if (e.fov_deg) out.fov_deg = *e.fov_deg;
    if (e.tiers) out.tiers = *e.tiers;
    if (e.oris_enabled) out.oris_enabled = *e.oris_enabled;
    if (e.blockage_enabled) out.blockage_enabled = *e.blockage_enabled;
    if (e.user_counts) out.user_counts = *e.user_counts;
    if (e.grid_step) out.grid_step = *e.grid_step;
    if (e.seed) out.seed = *e.seed;
    if (e.solver) out.solver = *e.solver;
    if (e.exact_node_limit) out.exact_node_limit = *e.exact_node_limit;
    if (e.jobs) out.jobs = *e.jobs;
    return out;
}

}  // namespace

ExperimentConfig resolve_experiment(const RunConfig& c, ExperimentKind kind) {
    return apply(c, default_experiment_config(kind));
}

ExperimentConfig resolve_solve(const RunConfig& c) {
    ExperimentConfig d = default_experiment_config(ExperimentKind::SumRate);
    d.trials = 1;
    d.user_counts = {2};
    d.fov_deg = {rad_to_deg(c.scene.receiver.fov)};
    d.tiers = {c.scene.receiver.tiers};
    return apply(c, d);
}

namespace {

json scene_json(const SceneConfig& s, const LinkBudget& b) {
    json aps = json::array();
    for (const Vec3& ap : s.room.ap_positions) aps.push_back({ap.x, ap.y, ap.z});
    return {
        {"room",
         {{"width", s.room.width},
          {"depth", s.room.depth},
          {"height", s.room.height},
          {"ap_positions", aps},
          {"led_half_power_semi_angle_deg", rad_to_deg(s.room.led_half_power_semi_angle)}}},
        {"oris",
         {{"enabled", s.oris.enabled},
          {"cols", s.oris.cols},
          {"rows", s.oris.rows},
          {"band_fraction", s.oris.band_fraction},
          {"reflectivity", s.oris.reflectivity}}},
        {"wall", {{"cell_size", s.wall.cell_size}, {"reflectivity", s.wall.reflectivity}}},
        {"receiver",
         {{"fov_deg", rad_to_deg(s.receiver.fov)},
          {"tiers", s.receiver.tiers},
          {"pd_area_m2", s.receiver.pd_area},
          {"responsivity", s.receiver.responsivity},
          {"device_height", s.receiver.device_height},
          {"body_offset", s.receiver.body_offset},
          {"body_height", s.receiver.body_height},
          {"body_radius", s.receiver.body_radius}}},
        {"link",
         {{"total_power_w", b.total_power},
          {"n_subcarriers", b.n_subcarriers},
          {"per_subcarrier_power_w", b.per_subcarrier_power()},
          {"noise_psd", b.noise_psd},
          {"bandwidth_hz", b.bandwidth}}},
    };
}

}  // namespace

json config_to_json(const RunConfig& c) {
    json j = scene_json(c.scene, c.budget);
    j["link"].erase("per_subcarrier_power_w");
    json e = json::object();
    const ExperimentOverrides& o = c.experiment;
    if (o.trials) e["trials"] = *o.trials;
    if (o.fov_deg) e["fov_deg"] = *o.fov_deg;
    if (o.tiers) e["tiers"] = *o.tiers;
    if (o.oris_enabled) e["oris_enabled"] = *o.oris_enabled;
    if (o.blockage_enabled) e["blockage_enabled"] = *o.blockage_enabled;
    if (o.user_counts) e["user_counts"] = *o.user_counts;
    if (o.grid_step) e["grid_step"] = *o.grid_step;
    if (o.seed) e["seed"] = *o.seed;
    if (o.solver) e["solver"] = std::string(to_string(*o.solver));
    if (o.exact_node_limit) e["exact_node_limit"] = *o.exact_node_limit;
    if (o.jobs) e["jobs"] = *o.jobs;
    if (o.output) e["output"] = *o.output;
    j["experiment"] = e;
    return j;
}

json experiment_config_to_json(const ExperimentConfig& c) {
    json j = scene_json(c.scene, c.budget);
    j["experiment"] = {{"trials", c.trials},
                       {"fov_deg", c.fov_deg},
                       {"tiers", c.tiers},
                       {"oris_enabled", c.oris_enabled},
                       {"blockage_enabled", c.blockage_enabled},
                       {"user_counts", c.user_counts},
                       {"grid_step", c.grid_step},
                       {"seed", c.seed},
                       {"solver", std::string(to_string(c.solver))},
                       {"exact_node_limit", c.exact_node_limit}};
    return j;
}

std::string run_id(const json& doc) {
    // FNV-1a over the canonical dump.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace orisim
