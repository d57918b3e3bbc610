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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "orisim/geometry.hpp"
#include "orisim/scenario.hpp"

namespace orisim {

/// Gains below this are stored as exact zeros.
inline constexpr double kGainFloor = 1e-15;

/// LEDs hang from the ceiling facing the floor.
inline constexpr Vec3 kApNormal{0.0, 0.0, -1.0};

/// DC-biased optical OFDM power split. Two subcarriers carry no data, so the
/// per-subcarrier power is P_tot / sqrt(N_sc - 2).
struct LinkBudget {
    double total_power = 1.0;   // [W] optical, per AP
    int n_subcarriers = 64;
    double noise_psd = 2.5e-20;  // [W/Hz]
    double bandwidth = 20e6;     // [Hz]

    double per_subcarrier_power() const;
    double noise_power() const { return noise_psd * bandwidth; }
    /// Throws std::invalid_argument on non-positive values or odd / too few subcarriers.
    void validate() const;
};

/// Photodiode as seen by the gain formulas.
struct PhotodiodeView {
    Vec3 position;
    Vec3 pointing{0.0, 0.0, 1.0};
    double fov = deg_to_rad(45.0);
    double area = 1e-4;
};

/// Lambertian order of an LED with half-power semi-angle `half_angle`.
/// Throws std::domain_error outside (0, pi/2).
double lambertian_order(double half_angle);

/// Incidence gate with the boundary included.
bool within_fov(double cos_incidence, double fov);

double los_gain(const Vec3& ap, const PhotodiodeView& pd, double m, bool clear = true);
double oris_gain(const Vec3& ap, const Vec3& mirror, double reflectivity, const PhotodiodeView& pd, double m);
double wall_gain(const Vec3& ap, const WallElement& cell, const PhotodiodeView& pd, double m);

struct Assignment {
    std::size_t k = 0;  // mirror element
    std::size_t l = 0;  // access point
    std::size_t n = 0;  // photodiode
    std::size_t u = 0;  // user
    bool operator==(const Assignment&) const = default;
};

/// Mirror-to-(AP, photodiode, user) association. Built through assign(), each
/// element appears at most once; the raw entry list stays open so that
/// verification code can be handed arbitrary (possibly invalid) data.
struct Allocation {
    std::vector<Assignment> entries;

    /// Throws std::logic_error if `a.k` is already assigned.
    void assign(const Assignment& a);
    bool is_assigned(std::size_t k) const;
    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

/// Precomputed per-link gains of a scenario. Entries are zero whenever the
/// path is blocked or the incidence angle falls outside the field of view.
class GainTables {
public:
    GainTables() = default;
    GainTables(std::size_t aps, std::size_t oris, std::size_t photodiodes, std::size_t users);

    std::size_t aps() const { return aps_; }
    std::size_t oris_count() const { return k_; }
    std::size_t photodiodes() const { return pds_; }
    std::size_t users() const { return users_; }

    double los(std::size_t l, std::size_t n, std::size_t u) const { return los_[link(l, n, u)]; }
    double wall_nlos(std::size_t l, std::size_t n, std::size_t u) const { return wall_[link(l, n, u)]; }
    double oris_contrib(std::size_t l, std::size_t k, std::size_t n, std::size_t u) const {
        return oris_[((l * k_ + k) * pds_ + n) * users_ + u];
    }
    double responsivity(std::size_t u) const { return responsivity_[u]; }

    double& los_ref(std::size_t l, std::size_t n, std::size_t u) { return los_[link(l, n, u)]; }
    double& wall_ref(std::size_t l, std::size_t n, std::size_t u) { return wall_[link(l, n, u)]; }
    double& oris_ref(std::size_t l, std::size_t k, std::size_t n, std::size_t u) {
        return oris_[((l * k_ + k) * pds_ + n) * users_ + u];
    }
    void set_responsivity(std::size_t u, double rho) { responsivity_[u] = rho; }

    /// Messages about physically implausible entries (gain >= 1).
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }
    void add_diagnostic(std::string msg) { diagnostics_.push_back(std::move(msg)); }

private:
    std::size_t link(std::size_t l, std::size_t n, std::size_t u) const { return (l * pds_ + n) * users_ + u; }

    std::size_t aps_ = 0, k_ = 0, pds_ = 0, users_ = 0;
    std::vector<double> los_;
    std::vector<double> wall_;
    std::vector<double> oris_;
    std::vector<double> responsivity_;
    std::vector<std::string> diagnostics_;
};

/// Evaluates every gain of `scenario`. All users must carry the same number of photodiodes.
GainTables compute_gain_tables(const Scenario& scenario);

/// Channel gain from AP l to photodiode n of user u under `allocation`.
double total_gain(std::size_t l, std::size_t n, std::size_t u, const Allocation& allocation, const GainTables& tables);

/// Electrical SNR of photodiode n of user u; all APs send the same data.
double snr(std::size_t n, std::size_t u, const Allocation& allocation, const LinkBudget& budget,
           const GainTables& tables);

struct UserSnr {
    double snr = 0.0;
    std::size_t photodiode = 0;
};

/// Select-best combining; ties go to the lowest photodiode index.
UserSnr user_snr(std::size_t u, const Allocation& allocation, const LinkBudget& budget, const GainTables& tables);

/// Achievable-rate lower bound for IM/DD in bit/s/Hz. Throws std::domain_error for gamma < 0.
double rate(double gamma);

double to_db(double linear);

/// Debug dump, one row per nonzero entry: l,k,n,u,gain with k = "los" / "wall" for non-mirror terms.
void write_gain_tables_csv(const GainTables& tables, const std::filesystem::path& path);

}  // namespace orisim
