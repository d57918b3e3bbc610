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
#include <span>
#include <vector>

#include <json.hpp>

#include "orisim/geometry.hpp"

namespace orisim {

struct RoomConfig {
    double width = 4.0;
    double depth = 4.0;
    double height = 3.0;
    std::vector<Vec3> ap_positions{{1.0, 1.0, 3.0}, {1.0, 3.0, 3.0}, {3.0, 1.0, 3.0}, {3.0, 3.0, 3.0}};
    double led_half_power_semi_angle = deg_to_rad(80.0);
};

/// Mirror array placed as a band along the top of every wall.
struct OrisLayout {
    bool enabled = true;
    int cols = 30;
    int rows = 5;
    double band_fraction = 1.0 / 3.0;
    double reflectivity = 0.95;
};

struct WallLayout {
    double cell_size = 0.25;
    double reflectivity = 0.4;
};

struct ReceiverConfig {
    double fov = deg_to_rad(45.0);
    int tiers = 1;
    double pd_area = 1e-4;
    double responsivity = 0.4;
    double device_height = 1.0;
    double body_offset = 0.3;
    double body_height = 1.75;
    double body_radius = 0.15;
};

struct SceneConfig {
    RoomConfig room;
    OrisLayout oris;
    WallLayout wall;
    ReceiverConfig receiver;
};

struct OrisElement {
    Vec3 center;
    int wall_id = 0;
    double reflectivity = 0.95;
};

struct WallElement {
    Vec3 center;
    double area = 0.0;
    Vec3 normal;  // points into the room
    double reflectivity = 0.4;
    int wall_id = 0;
};

struct User {
    Vec3 device_position;
    BodyCylinder body;
    double orientation = 0.0;  // heading in [0, 2*pi)
    std::vector<PhotodiodeOrientation> adr;
    double fov = deg_to_rad(45.0);
    double pd_area = 1e-4;
    double responsivity = 0.4;
};

/// Binary path-availability flags; 1 means the path is clear.
class BlockageIndicators {
public:
    BlockageIndicators() = default;
    BlockageIndicators(std::size_t aps, std::size_t oris, std::size_t walls, std::size_t users);

    std::size_t aps() const { return aps_; }
    std::size_t oris_count() const { return oris_; }
    std::size_t wall_count() const { return walls_; }
    std::size_t users() const { return users_; }

    bool los(std::size_t l, std::size_t u) const { return los_[l * users_ + u] != 0; }
    bool oris(std::size_t l, std::size_t k, std::size_t u) const { return oris_flags_[(l * oris_ + k) * users_ + u] != 0; }
    bool wall(std::size_t l, std::size_t w, std::size_t u) const { return wall_flags_[(l * walls_ + w) * users_ + u] != 0; }

    void set_los(std::size_t l, std::size_t u, bool v) { los_[l * users_ + u] = v; }
    void set_oris(std::size_t l, std::size_t k, std::size_t u, bool v) { oris_flags_[(l * oris_ + k) * users_ + u] = v; }
    void set_wall(std::size_t l, std::size_t w, std::size_t u, bool v) { wall_flags_[(l * walls_ + w) * users_ + u] = v; }

    const std::vector<std::uint8_t>& los_flags() const { return los_; }
    const std::vector<std::uint8_t>& oris_flags() const { return oris_flags_; }
    const std::vector<std::uint8_t>& wall_flags() const { return wall_flags_; }

private:
    std::size_t aps_ = 0, oris_ = 0, walls_ = 0, users_ = 0;
    std::vector<std::uint8_t> los_;
    std::vector<std::uint8_t> oris_flags_;
    std::vector<std::uint8_t> wall_flags_;
};

/// Immutable scene handed to the channel model.
struct Scenario {
    RoomConfig room;
    std::vector<OrisElement> oris;
    std::vector<WallElement> walls;
    std::vector<User> users;
    BlockageIndicators blockage;
};

/// Plane description of wall `wall_id` (0: y=0, 1: x=width, 2: y=depth, 3: x=0).
struct WallFrame {
    Vec3 origin;  // floor-level start corner
    Vec3 along;   // unit horizontal direction
    double length = 0.0;
    Vec3 normal;  // into the room
};
WallFrame wall_frame(const RoomConfig& room, int wall_id);

std::vector<OrisElement> build_crown_molding(const RoomConfig& room, int cols, int rows, double band_fraction,
                                             double reflectivity = 0.95);

/// Tiles the part of each wall below the band with cells close to `cell_size` square.
/// A zero band fraction covers the full wall.
std::vector<WallElement> build_wall_grid(const RoomConfig& room, double cell_size, double band_fraction,
                                         double reflectivity = 0.4);

/// Device at `device_xy` (z taken from the receiver config) facing `heading`; the body
/// stands `body_offset` behind it.
User place_user(double x, double y, double heading, const ReceiverConfig& receiver);

/// Uniform positions and headings; devices are inset so every body stays inside the room.
std::vector<User> sample_users(std::size_t count, const RoomConfig& room, const ReceiverConfig& receiver,
                               std::uint64_t rng_seed);

BlockageIndicators compute_blockage(std::span<const User> users, std::span<const Vec3> aps,
                                    std::span<const OrisElement> oris, std::span<const WallElement> walls,
                                    bool enabled);

/// Builds reflectors from `config`, places the given users and evaluates blockage.
/// With the mirror array disabled the walls are tiled over their full height.
Scenario build_scenario(const SceneConfig& config, std::vector<User> users, bool blockage_enabled);

nlohmann::json scenario_to_json(const Scenario& scenario);

}  // namespace orisim
