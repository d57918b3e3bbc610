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

#include "orisim/geometry.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace orisim {

namespace {

struct Tier {
    double elevation_deg;
    double azimuth_step_deg;
};

constexpr std::array<Tier, 3> kTiers{{{30.0, 60.0}, {60.0, 30.0}, {90.0, 20.0}}};

// Minimum overlap (in segment parameter units) that counts as passing through.
constexpr double kOverlapEps = 1e-12;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    return a;
}

}  // namespace

double min_half_fov(double horizontal, double vertical) {
    if (!(vertical > 0.0)) throw std::domain_error("min_half_fov: vertical distance must be positive");
    if (!(horizontal >= 0.0)) throw std::domain_error("min_half_fov: horizontal distance must be non-negative");
    return std::atan(horizontal / vertical);
}

Vec3 pointing_vector(double azimuth, double elevation) {
    const double s = std::sin(elevation);
    return {std::cos(azimuth) * s, std::sin(azimuth) * s, std::cos(elevation)};
}

PhotodiodeOrientation make_orientation(double azimuth, double elevation) {
    const double a = wrap_angle(azimuth);
    return {a, elevation, pointing_vector(a, elevation)};
}

std::vector<PhotodiodeOrientation> adr_layout(int tiers) { return adr_layout(tiers, 0.0); }

std::vector<PhotodiodeOrientation> adr_layout(int tiers, double heading) {
    if (tiers < 0 || tiers > static_cast<int>(kTiers.size()))
        throw std::domain_error("adr_layout: tiers must be in 0..3, got " + std::to_string(tiers));

    std::vector<PhotodiodeOrientation> out;
    out.push_back(make_orientation(heading, 0.0));
    for (int t = 0; t < tiers; ++t) {
        const Tier& tier = kTiers[static_cast<std::size_t>(t)];
        const int count = static_cast<int>(std::lround(360.0 / tier.azimuth_step_deg));
        const double elevation = deg_to_rad(tier.elevation_deg);
        for (int i = 0; i < count; ++i) {
            out.push_back(make_orientation(heading + deg_to_rad(tier.azimuth_step_deg * i), elevation));
        }
    }
    return out;
}

double cos_angle_between(const Vec3& src, const Vec3& dst, const Vec3& normal) {
    const Vec3 d = dst - src;
    const double len = d.norm();
    if (!(len > 0.0)) throw std::domain_error("cos_angle_between: coincident points");
    return std::clamp(dot(normal, d) / len, -1.0, 1.0);
}

bool point_inside(const Vec3& p, const BodyCylinder& body) {
    const double dx = p.x - body.axis_base.x;
    const double dy = p.y - body.axis_base.y;
    return p.z > body.axis_base.z && p.z < body.axis_base.z + body.height &&
           dx * dx + dy * dy < body.radius * body.radius;
}

bool segment_blocked(const Vec3& p0, const Vec3& p1, const BodyCylinder& body) {
    const Vec3 d = p1 - p0;
    double lo = 0.0;
    double hi = 1.0;

    // Slab between the floor cap and the top cap.
    const double bottom = body.axis_base.z;
    const double top = body.axis_base.z + body.height;
    if (d.z == 0.0) {
        if (!(p0.z > bottom && p0.z < top)) return false;
    } else {
        double t1 = (bottom - p0.z) / d.z;
        double t2 = (top - p0.z) / d.z;
        if (t1 > t2) std::swap(t1, t2);
        lo = std::max(lo, t1);
        hi = std::min(hi, t2);
        if (hi - lo <= kOverlapEps) return false;
    }

    // Infinite vertical cylinder, solved in the horizontal plane.
    const double ox = p0.x - body.axis_base.x;
    const double oy = p0.y - body.axis_base.y;
    const double a = d.x * d.x + d.y * d.y;
    const double c = ox * ox + oy * oy - body.radius * body.radius;
    if (a == 0.0) return c < 0.0;

    const double b = 2.0 * (ox * d.x + oy * d.y);
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) return false;
    const double sq = std::sqrt(disc);
    // Numerically stable root pair.
    const double q = -0.5 * (b + std::copysign(sq, b));
    double t1 = q / a;
    double t2 = (q != 0.0) ? c / q : -t1;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    return hi - lo > kOverlapEps;
}

}  // namespace orisim
