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

#include <cmath>
#include <numbers>
#include <vector>

namespace orisim {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Point or direction in room coordinates [m]. Floor corner at origin, z up.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr bool operator==(const Vec3&) const = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double distance(const Vec3& a, const Vec3& b) { return (b - a).norm(); }

/// Photodiode direction. Elevation is measured from the vertical axis, so
/// elevation 0 looks straight up.
struct PhotodiodeOrientation {
    double azimuth = 0.0;    // [0, 2*pi)
    double elevation = 0.0;  // [0, pi/2]
    Vec3 pointing{0.0, 0.0, 1.0};
};

/// Human body modelled as a solid vertical cylinder standing on the floor.
struct BodyCylinder {
    Vec3 axis_base;
    double height = 1.75;
    double radius = 0.15;
};

/// Half field of view needed to see a source at horizontal offset `horizontal`
/// and vertical offset `vertical` from an upward-looking receiver.
/// Throws std::domain_error unless vertical > 0 and horizontal >= 0.
double min_half_fov(double horizontal, double vertical);

/// Unit pointing vector for azimuth `azimuth` and elevation `elevation`.
Vec3 pointing_vector(double azimuth, double elevation);

/// Builds an orientation with the azimuth wrapped into [0, 2*pi).
PhotodiodeOrientation make_orientation(double azimuth, double elevation);

/// Nested angle-diversity layout: an upward photodiode followed by the rings
/// at 30/60/90 degrees elevation with 60/30/20 degree azimuth steps.
/// Sizes are 1, 7, 19 and 37 for 0..3 tiers. Throws std::domain_error for
/// tiers outside 0..3.
std::vector<PhotodiodeOrientation> adr_layout(int tiers);

/// Same layout with every azimuth shifted by `heading` (device rotation).
std::vector<PhotodiodeOrientation> adr_layout(int tiers, double heading);

/// Cosine of the angle between `normal` and the direction src -> dst.
/// Throws std::domain_error when src and dst coincide.
double cos_angle_between(const Vec3& src, const Vec3& dst, const Vec3& normal);

/// True if the open segment (p0, p1) passes through the interior of the body.
/// Grazing contacts and endpoints resting on the surface are not blockage.
bool segment_blocked(const Vec3& p0, const Vec3& p1, const BodyCylinder& body);

/// True if the point lies strictly inside the cylinder.
bool point_inside(const Vec3& p, const BodyCylinder& body);

}  // namespace orisim
