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

#include "orisim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orisim/random.hpp"

namespace orisim {

BlockageIndicators::BlockageIndicators(std::size_t aps, std::size_t oris, std::size_t walls, std::size_t users)
    : aps_(aps),
      oris_(oris),
      walls_(walls),
      users_(users),
      los_(aps * users, 1),
      oris_flags_(aps * oris * users, 1),
      wall_flags_(aps * walls * users, 1) {}

WallFrame wall_frame(const RoomConfig& room, int wall_id) {
    const double w = room.width;
    const double d = room.depth;
    switch (wall_id) {
        case 0: return {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, w, {0.0, 1.0, 0.0}};
        case 1: return {{w, 0.0, 0.0}, {0.0, 1.0, 0.0}, d, {-1.0, 0.0, 0.0}};
        case 2: return {{w, d, 0.0}, {-1.0, 0.0, 0.0}, w, {0.0, -1.0, 0.0}};
        case 3: return {{0.0, d, 0.0}, {0.0, -1.0, 0.0}, d, {1.0, 0.0, 0.0}};
        default: throw std::out_of_range("wall_frame: wall id must be 0..3, got " + std::to_string(wall_id));
    }
}

std::vector<OrisElement> build_crown_molding(const RoomConfig& room, int cols, int rows, double band_fraction,
                                             double reflectivity) {
    if (cols < 1 || rows < 1) throw std::invalid_argument("build_crown_molding: cols and rows must be >= 1");
    if (!(band_fraction > 0.0 && band_fraction < 1.0))
        throw std::invalid_argument("build_crown_molding: band_fraction must be in (0, 1)");

    const double band_bottom = (1.0 - band_fraction) * room.height;
    const double band_height = band_fraction * room.height;
    std::vector<OrisElement> out;
    out.reserve(static_cast<std::size_t>(4 * cols * rows));
    for (int wall = 0; wall < 4; ++wall) {
        const WallFrame f = wall_frame(room, wall);
        for (int r = 0; r < rows; ++r) {
            const double z = band_bottom + (r + 0.5) * band_height / rows;
            for (int c = 0; c < cols; ++c) {
                const double s = (c + 0.5) * f.length / cols;
                Vec3 p = f.origin + f.along * s;
                p.z = z;
                out.push_back({p, wall, reflectivity});
            }
        }
    }
    return out;
}

std::vector<WallElement> build_wall_grid(const RoomConfig& room, double cell_size, double band_fraction,
                                         double reflectivity) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("build_wall_grid: cell_size must be positive");
    if (!(band_fraction >= 0.0 && band_fraction < 1.0))
        throw std::invalid_argument("build_wall_grid: band_fraction must be in [0, 1)");

    const double region_height = (1.0 - band_fraction) * room.height;
    // Floor division with a small guard against 4.0 / 0.1 = 39.999...
    const auto cells_along = [cell_size](double len) {
        return std::max(1, static_cast<int>(std::floor(len / cell_size + 1e-9)));
    };
    const int rows = cells_along(region_height);
    const double cell_h = region_height / rows;

    std::vector<WallElement> out;
    for (int wall = 0; wall < 4; ++wall) {
        const WallFrame f = wall_frame(room, wall);
        const int cols = cells_along(f.length);
        const double cell_w = f.length / cols;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                Vec3 p = f.origin + f.along * ((c + 0.5) * cell_w);
                p.z = (r + 0.5) * cell_h;
                out.push_back({p, cell_w * cell_h, f.normal, reflectivity, wall});
            }
        }
    }
    return out;
}

User place_user(double x, double y, double heading, const ReceiverConfig& receiver) {
    User u;
    u.orientation = std::fmod(heading, 2.0 * kPi);
    if (u.orientation < 0.0) u.orientation += 2.0 * kPi;
    u.device_position = {x, y, receiver.device_height};
    u.body.axis_base = {x - receiver.body_offset * std::cos(u.orientation),
                        y - receiver.body_offset * std::sin(u.orientation), 0.0};
    u.body.height = receiver.body_height;
    u.body.radius = receiver.body_radius;
    u.adr = adr_layout(receiver.tiers, u.orientation);
    u.fov = receiver.fov;
    u.pd_area = receiver.pd_area;
    u.responsivity = receiver.responsivity;
    return u;
}

std::vector<User> sample_users(std::size_t count, const RoomConfig& room, const ReceiverConfig& receiver,
                               std::uint64_t rng_seed) {
    const double inset = receiver.body_offset + receiver.body_radius;
    if (2.0 * inset >= room.width || 2.0 * inset >= room.depth)
        throw std::invalid_argument("sample_users: room too small for the body clearance");

    RandomStream rng(rng_seed);
    std::vector<User> users;
    users.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform(inset, room.width - inset);
        const double y = rng.uniform(inset, room.depth - inset);
        const double heading = rng.uniform(0.0, 2.0 * kPi);
        users.push_back(place_user(x, y, heading, receiver));
    }
    return users;
}

namespace {

bool any_body_blocks(const Vec3& a, const Vec3& b, std::span<const User> users) {
    return std::any_of(users.begin(), users.end(), [&](const User& u) { return segment_blocked(a, b, u.body); });
}

template <class Reflector>
void two_hop_flags(std::span<const User> users, std::span<const Vec3> aps, std::span<const Reflector> reflectors,
                   std::vector<std::uint8_t>& first_hop_clear, std::vector<std::uint8_t>& second_hop_clear) {
    const std::size_t n = reflectors.size();
    first_hop_clear.assign(aps.size() * n, 1);
    second_hop_clear.assign(n * users.size(), 1);
    for (std::size_t l = 0; l < aps.size(); ++l)
        for (std::size_t k = 0; k < n; ++k)
            first_hop_clear[l * n + k] = !any_body_blocks(aps[l], reflectors[k].center, users);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t u = 0; u < users.size(); ++u)
            second_hop_clear[k * users.size() + u] =
                !any_body_blocks(reflectors[k].center, users[u].device_position, users);
}

}  // namespace

BlockageIndicators compute_blockage(std::span<const User> users, std::span<const Vec3> aps,
                                    std::span<const OrisElement> oris, std::span<const WallElement> walls,
                                    bool enabled) {
    BlockageIndicators ind(aps.size(), oris.size(), walls.size(), users.size());
    if (!enabled) return ind;

    for (std::size_t l = 0; l < aps.size(); ++l)
        for (std::size_t u = 0; u < users.size(); ++u)
            ind.set_los(l, u, !any_body_blocks(aps[l], users[u].device_position, users));

    std::vector<std::uint8_t> hop1, hop2;
    two_hop_flags(users, aps, oris, hop1, hop2);
    for (std::size_t l = 0; l < aps.size(); ++l)
        for (std::size_t k = 0; k < oris.size(); ++k)
            for (std::size_t u = 0; u < users.size(); ++u)
                ind.set_oris(l, k, u, hop1[l * oris.size() + k] && hop2[k * users.size() + u]);

    two_hop_flags(users, aps, walls, hop1, hop2);
    for (std::size_t l = 0; l < aps.size(); ++l)
        for (std::size_t w = 0; w < walls.size(); ++w)
            for (std::size_t u = 0; u < users.size(); ++u)
                ind.set_wall(l, w, u, hop1[l * walls.size() + w] && hop2[w * users.size() + u]);
    return ind;
}

Scenario build_scenario(const SceneConfig& config, std::vector<User> users, bool blockage_enabled) {
    Scenario s;
    s.room = config.room;
    if (config.oris.enabled) {
        s.oris = build_crown_molding(config.room, config.oris.cols, config.oris.rows, config.oris.band_fraction,
                                     config.oris.reflectivity);
        s.walls = build_wall_grid(config.room, config.wall.cell_size, config.oris.band_fraction,
                                  config.wall.reflectivity);
    } else {
        s.walls = build_wall_grid(config.room, config.wall.cell_size, 0.0, config.wall.reflectivity);
    }
    s.users = std::move(users);
    s.blockage = compute_blockage(s.users, s.room.ap_positions, s.oris, s.walls, blockage_enabled);
    return s;
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

}  // namespace

nlohmann::json scenario_to_json(const Scenario& s) {
    using nlohmann::json;
    json j;
    j["room"] = {{"width", s.room.width},
                 {"depth", s.room.depth},
                 {"height", s.room.height},
                 {"led_half_power_semi_angle_deg", rad_to_deg(s.room.led_half_power_semi_angle)}};
    json aps = json::array();
    for (const Vec3& ap : s.room.ap_positions) aps.push_back(vec_json(ap));
    j["room"]["ap_positions"] = aps;

    json oris = json::array();
    for (const OrisElement& e : s.oris)
        oris.push_back({{"center", vec_json(e.center)}, {"wall_id", e.wall_id}, {"reflectivity", e.reflectivity}});
    j["oris"] = oris;

    json walls = json::array();
    for (const WallElement& e : s.walls)
        walls.push_back({{"center", vec_json(e.center)},
                         {"area", e.area},
                         {"normal", vec_json(e.normal)},
                         {"reflectivity", e.reflectivity},
                         {"wall_id", e.wall_id}});
    j["walls"] = walls;

    json users = json::array();
    for (const User& u : s.users) {
        json adr = json::array();
        for (const PhotodiodeOrientation& pd : u.adr)
            adr.push_back({{"azimuth_deg", rad_to_deg(pd.azimuth)}, {"elevation_deg", rad_to_deg(pd.elevation)}});
        users.push_back({{"device_position", vec_json(u.device_position)},
                         {"body_axis_base", vec_json(u.body.axis_base)},
                         {"body_height", u.body.height},
                         {"body_radius", u.body.radius},
                         {"orientation_deg", rad_to_deg(u.orientation)},
                         {"fov_deg", rad_to_deg(u.fov)},
                         {"pd_area_m2", u.pd_area},
                         {"responsivity", u.responsivity},
                         {"photodiodes", adr}});
    }
    j["users"] = users;

    const BlockageIndicators& b = s.blockage;
    const auto count_clear = [](const std::vector<std::uint8_t>& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
    };
    j["blockage"] = {{"los", b.los_flags()},
                     {"oris_clear", count_clear(b.oris_flags())},
                     {"oris_total", b.oris_flags().size()},
                     {"wall_clear", count_clear(b.wall_flags())},
                     {"wall_total", b.wall_flags().size()}};
    return j;
}

}  // namespace orisim
