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

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "orisim/geometry.hpp"

using namespace orisim;
using doctest::Approx;

TEST_CASE("min_half_fov") {
    CHECK(min_half_fov(0.0, 2.0) == 0.0);
    CHECK(min_half_fov(1.0, 1.0) == Approx(kPi / 4).epsilon(1e-15));
    CHECK(rad_to_deg(min_half_fov(3.464, 2.0)) == Approx(60.0).epsilon(0.01 / 60.0));
    CHECK(rad_to_deg(min_half_fov(3.464, 2.0)) == Approx(rad_to_deg(std::atan(3.464 / 2.0))));
    CHECK_THROWS_AS(min_half_fov(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(min_half_fov(-1.0, 1.0), std::domain_error);
}

TEST_CASE("min_half_fov is monotone: increasing in x, decreasing in z") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.0, 5.0), height(0.01, 3.0), step(1e-6, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = pos(rng), z = height(rng), d = step(rng);
        CHECK(min_half_fov(x + d, z) >= min_half_fov(x, z));
        CHECK(min_half_fov(x, z + d) <= min_half_fov(x, z));
    }
}

TEST_CASE("pointing_vector examples") {
    const Vec3 up = pointing_vector(0.0, 0.0);
    CHECK(up.x == Approx(0.0));
    CHECK(up.y == Approx(0.0));
    CHECK(up.z == Approx(1.0));
    const Vec3 h = pointing_vector(0.0, kPi / 2);
    CHECK(h.x == Approx(1.0));
    CHECK(std::abs(h.y) < 1e-15);
    CHECK(std::abs(h.z) < 1e-15);
    const Vec3 v = pointing_vector(kPi / 3, kPi / 6);
    CHECK(v.x == Approx(0.25).epsilon(1e-4));
    CHECK(v.y == Approx(0.4330).epsilon(1e-4));
    CHECK(v.z == Approx(0.8660).epsilon(1e-4));
}

TEST_CASE("pointing_vector has unit norm") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> az(-10.0, 10.0), el(0.0, kPi / 2);
    for (int i = 0; i < 10000; ++i) CHECK(std::abs(pointing_vector(az(rng), el(rng)).norm() - 1.0) <= 1e-12);
}

TEST_CASE("adr_layout sizes and upward photodiode") {
    CHECK(adr_layout(0).size() == 1);
    CHECK(adr_layout(1).size() == 7);
    CHECK(adr_layout(2).size() == 19);
    CHECK(adr_layout(3).size() == 37);
    const auto l0 = adr_layout(0);
    CHECK(l0[0].pointing.z == Approx(1.0));
    CHECK_THROWS_AS(adr_layout(4), std::domain_error);
    CHECK_THROWS_AS(adr_layout(-1), std::domain_error);
    for (int t = 0; t <= 3; ++t)
        for (const auto& o : adr_layout(t)) {
            CHECK(std::abs(o.pointing.norm() - 1.0) < 1e-12);
            CHECK(o.pointing.z >= -1e-12);
        }
}

TEST_CASE("adr_layout nests across tiers") {
    for (double heading : {0.0, 0.7, 4.0}) {
        for (int a = 0; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b) {
                const auto la = adr_layout(a, heading), lb = adr_layout(b, heading);
                for (const auto& o : la) {
                    bool found = false;
                    for (const auto& p : lb)
                        if (std::abs(o.pointing.x - p.pointing.x) <= 1e-12 &&
                            std::abs(o.pointing.y - p.pointing.y) <= 1e-12 &&
                            std::abs(o.pointing.z - p.pointing.z) <= 1e-12)
                            found = true;
                    CHECK(found);
                }
            }
    }
}

TEST_CASE("adr_layout tier-1 ring starts at azimuth 0 with 60 degree steps") {
    const auto l = adr_layout(1);
    for (std::size_t i = 1; i < l.size(); ++i) {
        CHECK(l[i].azimuth == Approx(deg_to_rad(60.0 * static_cast<double>(i - 1))));
        CHECK(l[i].elevation == Approx(deg_to_rad(30.0)));
    }
}

TEST_CASE("adr_layout rotates with heading") {
    const double h = 1.1;
    const auto base = adr_layout(2), rot = adr_layout(2, h);
    REQUIRE(base.size() == rot.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Vec3 a = base[i].pointing, b = rot[i].pointing;
        CHECK(b.x == Approx(a.x * std::cos(h) - a.y * std::sin(h)));
        CHECK(b.y == Approx(a.x * std::sin(h) + a.y * std::cos(h)));
        CHECK(b.z == Approx(a.z));
    }
}

TEST_CASE("cos_angle_between examples") {
    CHECK(cos_angle_between({0, 0, 0}, {0, 0, 1}, {0, 0, 1}) == Approx(1.0));
    CHECK(cos_angle_between({0, 0, 0}, {1, 0, 1}, {0, 0, 1}) == Approx(0.7071).epsilon(1e-4));
    CHECK(cos_angle_between({0, 0, 0}, {0, 0, -1}, {0, 0, 1}) == Approx(-1.0));
    CHECK_THROWS(cos_angle_between({1, 2, 3}, {1, 2, 3}, {0, 0, 1}));
}

TEST_CASE("cos_angle_between agrees with acos oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
        const Vec3 n = pointing_vector(d(rng), std::abs(d(rng)) / 2);
        const double c = cos_angle_between(a, b, n);
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
        CHECK(c == Approx(std::cos(oracle::angle_at(a, b, n))).epsilon(1e-9));
    }
}

TEST_CASE("segment_blocked examples") {
    const BodyCylinder body{{0, 0, 0}, 1.75, 0.15};
    CHECK(segment_blocked({0, 0, 3}, {0, 0, 1}, body));
    CHECK_FALSE(segment_blocked({3, 3, 3}, {3, 3, 1}, body));
    CHECK(segment_blocked({-1, 0.1, 1}, {1, 0.1, 1}, body));
}

TEST_CASE("segment_blocked: top cap blocks, endpoints on the surface do not") {
    const BodyCylinder body{{0, 0, 0}, 1.75, 0.15};
    // Steep ray that enters through the top cap only.
    CHECK(segment_blocked({0.05, 0.0, 3.0}, {0.05, 0.0, 1.7}, body));
    // Ends exactly on the lateral surface.
    CHECK_FALSE(segment_blocked({1.0, 0.0, 1.0}, {0.15, 0.0, 1.0}, body));
    // Ends exactly on the top cap.
    CHECK_FALSE(segment_blocked({0.0, 0.0, 3.0}, {0.0, 0.0, 1.75}, body));
    // Tangent to the lateral surface.
    CHECK_FALSE(segment_blocked({-1.0, 0.15, 1.0}, {1.0, 0.15, 1.0}, body));
    // Entirely above.
    CHECK_FALSE(segment_blocked({-1.0, 0.0, 1.8}, {1.0, 0.0, 1.9}, body));
}

TEST_CASE("segment_blocked is symmetric and matches the sampled oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> xy(-1.0, 1.0), z(0.0, 3.0);
    const BodyCylinder body{{0.1, -0.2, 0.0}, 1.75, 0.3};
    int blocked = 0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a{xy(rng), xy(rng), z(rng)}, b{xy(rng), xy(rng), z(rng)};
        const bool analytic = segment_blocked(a, b, body);
        CHECK(analytic == segment_blocked(b, a, body));
        CHECK(analytic == oracle::segment_blocked(a, b, body));
        blocked += analytic;
    }
    // Both outcomes are exercised.
    CHECK(blocked > 100);
    CHECK(blocked < 900);
}
