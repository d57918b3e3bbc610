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

#include "orisim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orisim {

double LinkBudget::per_subcarrier_power() const {
    return total_power / std::sqrt(static_cast<double>(n_subcarriers - 2));
}

void LinkBudget::validate() const {
    if (!(total_power > 0.0)) throw std::invalid_argument("link budget: total_power must be positive");
    if (n_subcarriers < 4 || n_subcarriers % 2 != 0)
        throw std::invalid_argument("link budget: n_subcarriers must be even and >= 4");
    if (!(noise_psd > 0.0)) throw std::invalid_argument("link budget: noise_psd must be positive");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("link budget: bandwidth must be positive");
}

double lambertian_order(double half_angle) {
    if (!(half_angle > 0.0 && half_angle < kPi / 2.0))
        throw std::domain_error("lambertian_order: half-power semi-angle must be in (0, pi/2)");
    return -1.0 / std::log2(std::cos(half_angle));
}

bool within_fov(double cos_incidence, double fov) { return cos_incidence > 0.0 && cos_incidence >= std::cos(fov); }

namespace {

// Radiant intensity profile (m + 1) / (2 pi) * cos^m, zero behind the emitter.
double lambert(double m, double cos_irradiance) {
    if (!(cos_irradiance > 0.0)) return 0.0;
    return (m + 1.0) / (2.0 * kPi) * std::exp(m * std::log(cos_irradiance));
}

double floor_gain(double g) { return g < kGainFloor ? 0.0 : g; }

// The gain formulas factor into a photodiode-independent part times the
// cosine of the incidence angle at the photodiode. Both the single-link
// functions and the table builder go through these so they agree bitwise.

double los_prefactor(const Vec3& ap, const Vec3& device, double m, double area) {
    const double d = distance(ap, device);
    return lambert(m, cos_angle_between(ap, device, kApNormal)) * area / (d * d);
}

double oris_prefactor(const Vec3& ap, const Vec3& mirror, double reflectivity, const Vec3& device, double m,
                      double area) {
    const double path = distance(ap, mirror) + distance(mirror, device);
    return reflectivity * lambert(m, cos_angle_between(ap, mirror, kApNormal)) * area / (path * path);
}

double wall_prefactor(const Vec3& ap, const WallElement& cell, const Vec3& device, double m, double area) {
    const double cos_in = cos_angle_between(cell.center, ap, cell.normal);
    const double cos_out = cos_angle_between(cell.center, device, cell.normal);
    if (!(cos_in > 0.0) || !(cos_out > 0.0)) return 0.0;
    const double d1 = distance(ap, cell.center);
    const double d2 = distance(cell.center, device);
    return cell.reflectivity * lambert(m, cos_angle_between(ap, cell.center, kApNormal)) * area * cell.area /
           (d1 * d1 * d2 * d2) * cos_in * cos_out;
}

double gated(double prefactor, const Vec3& device, const Vec3& source, const Vec3& pointing, double cos_fov) {
    if (prefactor == 0.0) return 0.0;
    const double c = cos_angle_between(device, source, pointing);
    if (!(c > 0.0 && c >= cos_fov)) return 0.0;
    return floor_gain(prefactor * c);
}

}  // namespace

double los_gain(const Vec3& ap, const PhotodiodeView& pd, double m, bool clear) {
    if (!clear) return 0.0;
    return gated(los_prefactor(ap, pd.position, m, pd.area), pd.position, ap, pd.pointing, std::cos(pd.fov));
}

double oris_gain(const Vec3& ap, const Vec3& mirror, double reflectivity, const PhotodiodeView& pd, double m) {
    return gated(oris_prefactor(ap, mirror, reflectivity, pd.position, m, pd.area), pd.position, mirror, pd.pointing,
                 std::cos(pd.fov));
}

double wall_gain(const Vec3& ap, const WallElement& cell, const PhotodiodeView& pd, double m) {
    return gated(wall_prefactor(ap, cell, pd.position, m, pd.area), pd.position, cell.center, pd.pointing,
                 std::cos(pd.fov));
}

void Allocation::assign(const Assignment& a) {
    if (is_assigned(a.k)) throw std::logic_error("allocation: element " + std::to_string(a.k) + " already assigned");
    entries.push_back(a);
}

bool Allocation::is_assigned(std::size_t k) const {
    return std::any_of(entries.begin(), entries.end(), [k](const Assignment& e) { return e.k == k; });
}

GainTables::GainTables(std::size_t aps, std::size_t oris, std::size_t photodiodes, std::size_t users)
    : aps_(aps),
      k_(oris),
      pds_(photodiodes),
      users_(users),
      los_(aps * photodiodes * users, 0.0),
      wall_(aps * photodiodes * users, 0.0),
      oris_(aps * oris * photodiodes * users, 0.0),
      responsivity_(users, 0.0) {}

GainTables compute_gain_tables(const Scenario& s) {
    const std::size_t L = s.room.ap_positions.size();
    const std::size_t K = s.oris.size();
    const std::size_t U = s.users.size();
    const std::size_t N = U == 0 ? 0 : s.users.front().adr.size();
    for (const User& u : s.users)
        if (u.adr.size() != N) throw std::invalid_argument("compute_gain_tables: users must share the photodiode count");

    const double m = lambertian_order(s.room.led_half_power_semi_angle);
    GainTables t(L, K, N, U);

    for (std::size_t u = 0; u < U; ++u) {
        const User& user = s.users[u];
        const Vec3& dev = user.device_position;
        const double cos_fov = std::cos(user.fov);
        t.set_responsivity(u, user.responsivity);

        for (std::size_t l = 0; l < L; ++l) {
            const Vec3& ap = s.room.ap_positions[l];

            const double los_pre = s.blockage.los(l, u) ? los_prefactor(ap, dev, m, user.pd_area) : 0.0;
            for (std::size_t n = 0; n < N; ++n)
                t.los_ref(l, n, u) = gated(los_pre, dev, ap, user.adr[n].pointing, cos_fov);

            for (std::size_t k = 0; k < K; ++k) {
                if (!s.blockage.oris(l, k, u)) continue;
                const OrisElement& e = s.oris[k];
                const double pre = oris_prefactor(ap, e.center, e.reflectivity, dev, m, user.pd_area);
                for (std::size_t n = 0; n < N; ++n)
                    t.oris_ref(l, k, n, u) = gated(pre, dev, e.center, user.adr[n].pointing, cos_fov);
            }

            for (std::size_t w = 0; w < s.walls.size(); ++w) {
                if (!s.blockage.wall(l, w, u)) continue;
                const WallElement& cell = s.walls[w];
                const double pre = wall_prefactor(ap, cell, dev, m, user.pd_area);
                if (pre == 0.0) continue;
                for (std::size_t n = 0; n < N; ++n)
                    t.wall_ref(l, n, u) += gated(pre, dev, cell.center, user.adr[n].pointing, cos_fov);
            }
        }
    }

    // Plausibility: a passive channel cannot deliver more power than it receives.
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t u = 0; u < U; ++u) {
                if (t.los(l, n, u) >= 1.0 || t.wall_nlos(l, n, u) >= 1.0) {
                    std::ostringstream msg;
                    msg << "gain >= 1 on link l=" << l << " n=" << n << " u=" << u;
                    t.add_diagnostic(msg.str());
                }
                for (std::size_t k = 0; k < K; ++k)
                    if (t.oris_contrib(l, k, n, u) >= 1.0) {
                        std::ostringstream msg;
                        msg << "mirror gain >= 1 at l=" << l << " k=" << k << " n=" << n << " u=" << u;
                        t.add_diagnostic(msg.str());
                    }
            }
    return t;
}

double total_gain(std::size_t l, std::size_t n, std::size_t u, const Allocation& allocation, const GainTables& t) {
    double g = t.los(l, n, u) + t.wall_nlos(l, n, u);
    for (const Assignment& a : allocation.entries)
        if (a.l == l && a.n == n && a.u == u) g += t.oris_contrib(l, a.k, n, u);
    return g;
}

double snr(std::size_t n, std::size_t u, const Allocation& allocation, const LinkBudget& budget,
           const GainTables& t) {
    double sum = 0.0;
    for (std::size_t l = 0; l < t.aps(); ++l) sum += total_gain(l, n, u, allocation, t);
    const double signal = t.responsivity(u) * budget.per_subcarrier_power() * sum;
    return signal * signal / budget.noise_power();
}

UserSnr user_snr(std::size_t u, const Allocation& allocation, const LinkBudget& budget, const GainTables& t) {
    UserSnr best;
    for (std::size_t n = 0; n < t.photodiodes(); ++n) {
        const double g = snr(n, u, allocation, budget, t);
        if (n == 0 || g > best.snr) best = {g, n};
    }
    return best;
}

double rate(double gamma) {
    if (gamma < 0.0 || std::isnan(gamma)) throw std::domain_error("rate: SNR must be non-negative");
    return std::log2(1.0 + std::exp(1.0) / (2.0 * kPi) * gamma);
}

double to_db(double linear) {
    if (linear <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

void write_gain_tables_csv(const GainTables& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.precision(17);
    out << "l,k,n,u,gain\n";
    for (std::size_t l = 0; l < t.aps(); ++l)
        for (std::size_t n = 0; n < t.photodiodes(); ++n)
            for (std::size_t u = 0; u < t.users(); ++u) {
                if (t.los(l, n, u) > 0.0) out << l << ",los," << n << ',' << u << ',' << t.los(l, n, u) << '\n';
                if (t.wall_nlos(l, n, u) > 0.0)
                    out << l << ",wall," << n << ',' << u << ',' << t.wall_nlos(l, n, u) << '\n';
                for (std::size_t k = 0; k < t.oris_count(); ++k)
                    if (t.oris_contrib(l, k, n, u) > 0.0)
                        out << l << ',' << k << ',' << n << ',' << u << ',' << t.oris_contrib(l, k, n, u) << '\n';
            }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace orisim
