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

#include "orisim/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace orisim {

AllocationProblem::AllocationProblem(std::size_t aps, std::size_t oris, std::size_t photodiodes, std::size_t users)
    : aps_(aps),
      oris_(oris),
      pds_(photodiodes),
      users_(users),
      base_(photodiodes * users, 0.0),
      contrib_(aps * oris * photodiodes * users, 0.0) {}

AllocationProblem AllocationProblem::scaled(double factor) const {
    AllocationProblem p = *this;
    for (double& v : p.base_) v *= factor;
    for (double& v : p.contrib_) v *= factor;
    return p;
}

AllocationProblem build_problem(const GainTables& t, const LinkBudget& budget) {
    AllocationProblem p(t.aps(), t.oris_count(), t.photodiodes(), t.users());
    const double noise_amplitude = std::sqrt(budget.noise_power());
    const double p_sc = budget.per_subcarrier_power();
    for (std::size_t u = 0; u < t.users(); ++u) {
        const double scale = t.responsivity(u) * p_sc / noise_amplitude;
        for (std::size_t n = 0; n < t.photodiodes(); ++n) {
            double sum = 0.0;
            for (std::size_t l = 0; l < t.aps(); ++l) sum += t.los(l, n, u) + t.wall_nlos(l, n, u);
            p.base_ref(n, u) = scale * sum;
            for (std::size_t l = 0; l < t.aps(); ++l)
                for (std::size_t k = 0; k < t.oris_count(); ++k)
                    p.contrib_ref(l, k, n, u) = scale * t.oris_contrib(l, k, n, u);
        }
    }
    return p;
}

double big_m(const AllocationProblem& p) {
    double m = 0.0;
    for (std::size_t n = 0; n < p.photodiodes(); ++n)
        for (std::size_t u = 0; u < p.users(); ++u) m = std::max(m, p.base(n, u));
    for (std::size_t k = 0; k < p.oris_count(); ++k) {
        double best = 0.0;
        for (std::size_t l = 0; l < p.aps(); ++l)
            for (std::size_t n = 0; n < p.photodiodes(); ++n)
                for (std::size_t u = 0; u < p.users(); ++u) best = std::max(best, p.contrib(l, k, n, u));
        m += best;
    }
    return m;
}

std::string_view to_string(SolverStatus status) {
    switch (status) {
        case SolverStatus::Optimal: return "optimal";
        case SolverStatus::Heuristic: return "heuristic";
        case SolverStatus::InfeasibleDegenerate: return "infeasible-degenerate";
    }
    return "unknown";
}

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::Oracle: return "oracle";
        case SolverKind::Exact: return "exact";
        case SolverKind::Greedy: return "greedy";
    }
    return "unknown";
}

SolverKind solver_kind_from_string(std::string_view name) {
    if (name == "oracle") return SolverKind::Oracle;
    if (name == "exact") return SolverKind::Exact;
    if (name == "greedy") return SolverKind::Greedy;
    throw std::invalid_argument("unknown solver '" + std::string(name) + "' (expected oracle, exact or greedy)");
}

namespace {

struct Option {
    std::size_t l, n, u;
};

using Slots = std::vector<std::optional<Option>>;

// Best AP per (k, n, u); ties go to the lowest AP index.
struct BestAp {
    std::size_t K = 0, N = 0, U = 0;
    std::vector<double> value;
    std::vector<std::size_t> ap;

    explicit BestAp(const AllocationProblem& p)
        : K(p.oris_count()), N(p.photodiodes()), U(p.users()), value(K * N * U, 0.0), ap(K * N * U, 0) {
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < N; ++n)
                for (std::size_t u = 0; u < U; ++u) {
                    double best = 0.0;
                    std::size_t arg = 0;
                    for (std::size_t l = 0; l < p.aps(); ++l) {
                        const double c = p.contrib(l, k, n, u);
                        if (c > best) best = c, arg = l;
                    }
                    value[idx(k, n, u)] = best;
                    ap[idx(k, n, u)] = arg;
                }
    }
    std::size_t idx(std::size_t k, std::size_t n, std::size_t u) const { return (k * N + n) * U + u; }
    double at(std::size_t k, std::size_t n, std::size_t u) const { return value[idx(k, n, u)]; }
};

Allocation to_allocation(const Slots& slots) {
    Allocation a;
    for (std::size_t k = 0; k < slots.size(); ++k)
        if (slots[k]) a.entries.push_back({k, slots[k]->l, slots[k]->n, slots[k]->u});
    return a;
}

// Canonical evaluation shared by every solver so objectives compare bitwise.
SolverResult finish(const AllocationProblem& p, Allocation allocation, SolverStatus status) {
    SolverResult r;
    r.allocation = std::move(allocation);
    std::sort(r.allocation.entries.begin(), r.allocation.entries.end(),
              [](const Assignment& a, const Assignment& b) { return a.k < b.k; });
    const std::vector<double> values = photodiode_values(p, r.allocation);
    const std::size_t U = p.users();
    r.selected_photodiode.assign(U, 0);
    r.user_values.assign(U, 0.0);
    for (std::size_t u = 0; u < U; ++u) {
        for (std::size_t n = 0; n < p.photodiodes(); ++n) {
            const double v = values[n * U + u];
            if (n == 0 || v > r.user_values[u]) r.user_values[u] = v, r.selected_photodiode[u] = n;
        }
        if (r.user_values[u] == 0.0) r.outage_users.push_back(u);
    }
    if (U == 0) {
        r.objective = 0.0;
        r.status = SolverStatus::InfeasibleDegenerate;
        return r;
    }
    r.objective = *std::min_element(r.user_values.begin(), r.user_values.end());
    r.status = status;
    return r;
}

double min_max(const std::vector<double>& values, std::size_t N, std::size_t U) {
    double obj = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < U; ++u) {
        double best = 0.0;
        for (std::size_t n = 0; n < N; ++n) best = std::max(best, values[n * U + u]);
        obj = std::min(obj, best);
    }
    return U == 0 ? 0.0 : obj;
}

std::vector<double> initial_values(const AllocationProblem& p) {
    std::vector<double> v(p.photodiodes() * p.users());
    for (std::size_t n = 0; n < p.photodiodes(); ++n)
        for (std::size_t u = 0; u < p.users(); ++u) v[n * p.users() + u] = p.base(n, u);
    return v;
}

// ----------------------------------------------------------------------------
// Exhaustive oracle

struct BruteForce {
    const AllocationProblem& p;
    std::vector<Option> options;  // tie-break order: photodiode, then AP, then user
    std::vector<double> values;
    std::vector<int> choice;      // -1 = unassigned
    std::vector<int> best_choice;
    double best = -1.0;
    std::uint64_t leaves = 0;

    void run(std::size_t k) {
        if (k == p.oris_count()) {
            ++leaves;
            const double obj = min_max(values, p.photodiodes(), p.users());
            if (obj > best) best = obj, best_choice = choice;
            return;
        }
        choice[k] = -1;
        run(k + 1);
        const std::vector<double> saved = values;
        for (std::size_t i = 0; i < options.size(); ++i) {
            const Option& o = options[i];
            const double c = p.contrib(o.l, k, o.n, o.u);
            if (c != 0.0) values[o.n * p.users() + o.u] += c;
            choice[k] = static_cast<int>(i);
            run(k + 1);
            values = saved;
        }
        choice[k] = -1;
    }
};

// ----------------------------------------------------------------------------
// Greedy heuristics

// Repeatedly lifts the weakest user by the single assignment that raises its
// select-best value the most. A user with no improving move is retired.
Slots marginal_greedy(const AllocationProblem& p, const BestAp& best) {
    const std::size_t K = p.oris_count(), N = p.photodiodes(), U = p.users();
    Slots slots(K);
    std::vector<double> values = initial_values(p);
    std::vector<double> user_value(U, 0.0);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t n = 0; n < N; ++n) user_value[u] = std::max(user_value[u], values[n * U + u]);
    std::vector<char> active(U, 1);
    std::vector<std::size_t> free_elements(K);
    std::iota(free_elements.begin(), free_elements.end(), std::size_t{0});

    while (!free_elements.empty()) {
        std::optional<std::size_t> target;
        for (std::size_t u = 0; u < U; ++u)
            if (active[u] && (!target || user_value[u] < user_value[*target])) target = u;
        if (!target) break;
        const std::size_t u = *target;

        double best_gain = 0.0, best_raw = 0.0;
        std::size_t best_pos = 0, best_n = 0;
        for (std::size_t pos = 0; pos < free_elements.size(); ++pos) {
            const std::size_t k = free_elements[pos];
            for (std::size_t n = 0; n < N; ++n) {
                const double c = best.at(k, n, u);
                if (c <= 0.0) continue;
                const double gain = std::max(values[n * U + u] + c, user_value[u]) - user_value[u];
                if (gain > best_gain || (gain == best_gain && gain > 0.0 && c > best_raw)) {
                    best_gain = gain, best_raw = c, best_pos = pos, best_n = n;
                }
            }
        }
        if (!(best_gain > 0.0)) {
            active[u] = 0;
            continue;
        }
        const std::size_t k = free_elements[best_pos];
        slots[k] = Option{best.ap[best.idx(k, best_n, u)], best_n, u};
        values[best_n * U + u] += best_raw;
        user_value[u] = std::max(user_value[u], values[best_n * U + u]);
        free_elements.erase(free_elements.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }
    return slots;
}

// Fixes each user's photodiode up front (the one with the most reachable
// signal), then hands the weakest user its largest remaining contribution.
// Exact for a single user.
Slots committed_greedy(const AllocationProblem& p, const BestAp& best) {
    const std::size_t K = p.oris_count(), N = p.photodiodes(), U = p.users();
    Slots slots(K);
    std::vector<std::size_t> chosen(U, 0);
    std::vector<double> value(U, 0.0);
    std::vector<std::vector<std::size_t>> queue(U);
    for (std::size_t u = 0; u < U; ++u) {
        double best_potential = -1.0;
        for (std::size_t n = 0; n < N; ++n) {
            double potential = p.base(n, u);
            for (std::size_t k = 0; k < K; ++k) potential += best.at(k, n, u);
            if (potential > best_potential) best_potential = potential, chosen[u] = n;
        }
        value[u] = p.base(chosen[u], u);
        for (std::size_t k = 0; k < K; ++k)
            if (best.at(k, chosen[u], u) > 0.0) queue[u].push_back(k);
        std::stable_sort(queue[u].begin(), queue[u].end(), [&](std::size_t a, std::size_t b) {
            return best.at(a, chosen[u], u) > best.at(b, chosen[u], u);
        });
        std::reverse(queue[u].begin(), queue[u].end());  // pop from the back
    }
    std::vector<char> active(U, 1);
    for (;;) {
        std::optional<std::size_t> target;
        for (std::size_t u = 0; u < U; ++u)
            if (active[u] && (!target || value[u] < value[*target])) target = u;
        if (!target) break;
        const std::size_t u = *target;
        auto& q = queue[u];
        while (!q.empty() && slots[q.back()]) q.pop_back();
        if (q.empty()) {
            active[u] = 0;
            continue;
        }
        const std::size_t k = q.back();
        q.pop_back();
        const std::size_t n = chosen[u];
        slots[k] = Option{best.ap[best.idx(k, n, u)], n, u};
        value[u] += best.at(k, n, u);
    }
    return slots;
}

double sum_values(const SolverResult& r) { return std::accumulate(r.user_values.begin(), r.user_values.end(), 0.0); }

// ----------------------------------------------------------------------------
// Branch and bound

class BranchAndBound {
public:
    BranchAndBound(const AllocationProblem& p, const BranchAndBoundOptions& opt, const SolverResult& incumbent)
        : p_(p), opt_(opt), best_(p), K_(p.oris_count()), N_(p.photodiodes()), U_(p.users()) {
        for (std::size_t k = 0; k < K_; ++k) {
            double m = 0.0;
            for (std::size_t i = 0; i < N_ * U_; ++i) m = std::max(m, best_.value[k * N_ * U_ + i]);
            if (m > 0.0) order_.push_back(k), max_contrib_.push_back(m);
        }
        std::vector<std::size_t> idx(order_.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return max_contrib_[a] > max_contrib_[b]; });
        std::vector<std::size_t> sorted;
        for (std::size_t i : idx) sorted.push_back(order_[i]);
        order_ = std::move(sorted);

        const std::size_t D = order_.size();
        suffix_.assign((D + 1) * N_ * U_, 0.0);
        for (std::size_t d = D; d-- > 0;)
            for (std::size_t i = 0; i < N_ * U_; ++i) {
                const std::size_t k = order_[d];
                const std::size_t n = i / U_, u = i % U_;
                suffix_[d * N_ * U_ + i] = suffix_[(d + 1) * N_ * U_ + i] + best_.at(k, n, u);
            }

        incumbent_value_ = incumbent.objective;
        incumbent_ = Slots(K_);
        for (const Assignment& a : incumbent.allocation.entries) incumbent_[a.k] = Option{a.l, a.n, a.u};
        slots_ = Slots(K_);
    }

    SolverResult run() {
        std::vector<double> values = initial_values(p_);
        aborted_ = false;
        dfs(0, values);
        SolverResult r = finish(p_, to_allocation(incumbent_), aborted_ ? SolverStatus::Heuristic : SolverStatus::Optimal);
        r.nodes = nodes_;
        return r;
    }

private:
    double threshold() const { return incumbent_value_ + opt_.tolerance * std::abs(incumbent_value_); }

    const double* suffix(std::size_t d) const { return &suffix_[d * N_ * U_]; }

    void dfs(std::size_t d, std::vector<double>& values) {
        if (aborted_) return;
        ++nodes_;
        if (opt_.node_limit != 0 && nodes_ > opt_.node_limit) {
            aborted_ = true;
            return;
        }
        if (d == order_.size()) {
            const SolverResult leaf = finish(p_, to_allocation(slots_), SolverStatus::Optimal);
            if (leaf.objective > incumbent_value_) {
                incumbent_value_ = leaf.objective;
                incumbent_ = slots_;
            }
            return;
        }

        const std::size_t k = order_[d];
        const double* rest = suffix(d + 1);
        std::vector<double> row_max(U_, 0.0);
        for (std::size_t u = 0; u < U_; ++u)
            for (std::size_t n = 0; n < N_; ++n) row_max[u] = std::max(row_max[u], values[n * U_ + u] + rest[n * U_ + u]);

        struct Child {
            double bound;
            std::size_t n, u;
        };
        std::vector<Child> children;
        for (std::size_t n = 0; n < N_; ++n)
            for (std::size_t u = 0; u < U_; ++u) {
                const double c = best_.at(k, n, u);
                if (c <= 0.0) continue;
                double bound = std::numeric_limits<double>::infinity();
                for (std::size_t v = 0; v < U_; ++v) {
                    double r = row_max[v];
                    if (v == u) r = std::max(r, values[n * U_ + u] + c + rest[n * U_ + u]);
                    bound = std::min(bound, r);
                }
                children.push_back({bound, n, u});
            }
        std::stable_sort(children.begin(), children.end(),
                         [](const Child& a, const Child& b) { return a.bound > b.bound; });

        for (const Child& ch : children) {
            if (ch.bound <= threshold()) break;
            const std::size_t i = ch.n * U_ + ch.u;
            const double saved = values[i];
            values[i] += best_.at(k, ch.n, ch.u);
            slots_[k] = Option{best_.ap[best_.idx(k, ch.n, ch.u)], ch.n, ch.u};
            dfs(d + 1, values);
            values[i] = saved;
            slots_[k].reset();
            if (aborted_) return;
        }
    }

    const AllocationProblem& p_;
    BranchAndBoundOptions opt_;
    BestAp best_;
    std::size_t K_, N_, U_;
    std::vector<std::size_t> order_;
    std::vector<double> max_contrib_;
    std::vector<double> suffix_;
    Slots slots_;
    Slots incumbent_;
    double incumbent_value_ = 0.0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

std::vector<double> photodiode_values(const AllocationProblem& p, const Allocation& allocation) {
    std::vector<double> values = initial_values(p);
    std::vector<const Assignment*> sorted;
    for (const Assignment& a : allocation.entries) sorted.push_back(&a);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Assignment* a, const Assignment* b) { return a->k < b->k; });
    for (const Assignment* a : sorted) {
        if (a->l >= p.aps() || a->k >= p.oris_count() || a->n >= p.photodiodes() || a->u >= p.users())
            throw std::out_of_range("photodiode_values: assignment index out of range");
        const double c = p.contrib(a->l, a->k, a->n, a->u);
        if (c != 0.0) values[a->n * p.users() + a->u] += c;
    }
    return values;
}

SolverResult brute_force(const AllocationProblem& p, std::uint64_t budget) {
    const std::size_t options = p.aps() * p.photodiodes() * p.users() + 1;
    double space = 1.0;
    for (std::size_t k = 0; k < p.oris_count(); ++k) space *= static_cast<double>(options);
    if (space > static_cast<double>(budget)) {
        std::ostringstream msg;
        msg << "brute_force: " << options << "^" << p.oris_count() << " assignments exceed the enumeration budget of "
            << budget;
        throw std::length_error(msg.str());
    }

    BruteForce bf{p, {}, initial_values(p), std::vector<int>(p.oris_count(), -1), {}, -1.0, 0};
    for (std::size_t n = 0; n < p.photodiodes(); ++n)
        for (std::size_t l = 0; l < p.aps(); ++l)
            for (std::size_t u = 0; u < p.users(); ++u) bf.options.push_back({l, n, u});
    bf.best_choice = bf.choice;
    bf.run(0);

    Allocation a;
    for (std::size_t k = 0; k < p.oris_count(); ++k) {
        const int c = bf.best_choice[k];
        if (c < 0) continue;
        const Option& o = bf.options[static_cast<std::size_t>(c)];
        a.entries.push_back({k, o.l, o.n, o.u});
    }
    SolverResult r = finish(p, std::move(a), SolverStatus::Optimal);
    r.nodes = bf.leaves;
    return r;
}

SolverResult greedy(const AllocationProblem& p) {
    const BestAp best(p);
    SolverResult committed = finish(p, to_allocation(committed_greedy(p, best)), SolverStatus::Heuristic);
    if (p.users() <= 1) return committed;  // already optimal, see committed_greedy
    SolverResult marginal = finish(p, to_allocation(marginal_greedy(p, best)), SolverStatus::Heuristic);
    if (committed.objective > marginal.objective) return committed;
    if (committed.objective == marginal.objective && sum_values(committed) > sum_values(marginal)) return committed;
    return marginal;
}

SolverResult branch_and_bound(const AllocationProblem& p, double tolerance) {
    return branch_and_bound(p, BranchAndBoundOptions{tolerance, 0});
}

SolverResult branch_and_bound(const AllocationProblem& p, const BranchAndBoundOptions& options) {
    if (p.users() == 0) return finish(p, {}, SolverStatus::InfeasibleDegenerate);
    const SolverResult start = greedy(p);
    return BranchAndBound(p, options, start).run();
}

SolverResult solve(const AllocationProblem& p, SolverKind kind, const BranchAndBoundOptions& options) {
    switch (kind) {
        case SolverKind::Oracle: return brute_force(p);
        case SolverKind::Exact: return branch_and_bound(p, options);
        case SolverKind::Greedy: return greedy(p);
    }
    throw std::invalid_argument("solve: unknown solver kind");
}

namespace {

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

VerificationReport verify_solution(const AllocationProblem& p, const SolverResult& r) {
    VerificationReport rep;
    const auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    const std::size_t U = p.users(), N = p.photodiodes();

    // C1, C2: each element at most once, indices inside the boolean domain.
    std::vector<int> seen(p.oris_count(), 0);
    bool indices_ok = true;
    for (const Assignment& a : r.allocation.entries) {
        if (a.k >= p.oris_count() || a.l >= p.aps() || a.n >= N || a.u >= U) {
            fail("C2: assignment (k=" + std::to_string(a.k) + ", l=" + std::to_string(a.l) + ", n=" +
                 std::to_string(a.n) + ", u=" + std::to_string(a.u) + ") outside the variable domain");
            indices_ok = false;
            continue;
        }
        if (++seen[a.k] > 1) fail("C1: element " + std::to_string(a.k) + " assigned more than once");
    }

    // C6, C7: one selected photodiode per user.
    if (r.selected_photodiode.size() != U) {
        fail("C6: expected " + std::to_string(U) + " selected photodiodes, got " +
             std::to_string(r.selected_photodiode.size()));
        return rep;
    }
    for (std::size_t u = 0; u < U; ++u)
        if (r.selected_photodiode[u] >= N) fail("C7: selected photodiode of user " + std::to_string(u) + " out of range");
    if (r.user_values.size() != U) {
        fail("C4: user value count mismatch");
        return rep;
    }
    if (!indices_ok || !rep.ok) return rep;

    const std::vector<double> values = photodiode_values(p, r.allocation);
    double min_user = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < U; ++u) {
        double best = 0.0;
        for (std::size_t n = 0; n < N; ++n) best = std::max(best, values[n * U + u]);
        min_user = std::min(min_user, r.user_values[u]);
        // C4: user value dominates every photodiode.
        if (r.user_values[u] < best && !close(r.user_values[u], best))
            fail("C4: user " + std::to_string(u) + " value below its best photodiode");
        // C5: selected photodiode attains the user value.
        const double sel = values[r.selected_photodiode[u] * U + u];
        if (!close(sel, r.user_values[u]))
            fail("C5: selected photodiode " + std::to_string(r.selected_photodiode[u]) + " of user " +
                 std::to_string(u) + " does not attain the user value");
    }
    // C3: objective is a lower bound on every user and equals the minimum.
    if (U > 0) {
        if (r.objective > min_user && !close(r.objective, min_user))
            fail("C3: objective exceeds the weakest user value");
        if (!close(r.objective, min_user) && !(r.objective == 0.0 && min_user == 0.0))
            fail("C3: objective differs from the weakest user value");
    }
    return rep;
}

std::size_t elements_used(const AllocationProblem& p, const SolverResult& r) {
    std::size_t used = 0;
    for (const Assignment& a : r.allocation.entries)
        if (a.u < r.selected_photodiode.size() && a.n == r.selected_photodiode[a.u] && p.contrib(a.l, a.k, a.n, a.u) > 0.0)
            ++used;
    return used;
}

nlohmann::json solver_result_to_json(const SolverResult& r) {
    using nlohmann::json;
    json alloc = json::array();
    for (const Assignment& a : r.allocation.entries) alloc.push_back({a.k, a.l, a.n, a.u});
    json snr = json::array();
    json snr_db = json::array();
    for (double v : r.user_values) {
        snr.push_back(v * v);
        const double db = to_db(v * v);
        snr_db.push_back(std::isfinite(db) ? json(db) : json("-inf"));
    }
    return {{"allocation", alloc},
            {"objective", r.objective},
            {"status", std::string(to_string(r.status))},
            {"selected_photodiode", r.selected_photodiode},
            {"user_optical_snr", r.user_values},
            {"user_snr", snr},
            {"user_snr_db", snr_db},
            {"outage_users", r.outage_users},
            {"nodes", r.nodes}};
}

}  // namespace orisim
