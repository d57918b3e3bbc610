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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "orisim/allocation.hpp"
#include "orisim/scenario.hpp"

using namespace orisim;
using doctest::Approx;

namespace {

double no_mirror_objective(const AllocationProblem& p) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < p.users(); ++u) {
        double best = 0.0;
        for (std::size_t n = 0; n < p.photodiodes(); ++n) best = std::max(best, p.base(n, u));
        worst = std::min(worst, best);
    }
    return p.users() == 0 ? 0.0 : worst;
}

void check_verified(const AllocationProblem& p, const SolverResult& r) {
    const VerificationReport rep = verify_solution(p, r);
    CHECK(rep.ok);
    for (const auto& v : rep.violations) MESSAGE(v);
}

}  // namespace

TEST_CASE("build_problem scales tables to optical SNR") {
    SceneConfig cfg;
    cfg.oris.cols = 4;
    cfg.oris.rows = 1;
    cfg.wall.cell_size = 0.5;
    const Scenario s = build_scenario(cfg, sample_users(2, cfg.room, cfg.receiver, 6), false);
    const GainTables t = compute_gain_tables(s);
    const LinkBudget b;
    const AllocationProblem p = build_problem(t, b);
    for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t n = 0; n < p.photodiodes(); ++n) {
            CHECK(p.base(n, u) * p.base(n, u) == Approx(snr(n, u, {}, b, t)).epsilon(1e-12));
            Allocation a;
            a.assign({3, 1, n, u});
            const double with = std::sqrt(snr(n, u, a, b, t));
            CHECK(p.base(n, u) + p.contrib(1, 3, n, u) == Approx(with).epsilon(1e-12));
        }
}

TEST_CASE("no mirrors: every solver returns min over users of the best base value") {
    std::mt19937_64 rng(1);
    AllocationProblem p = oracle::random_problem(rng, 2, 0, 3, 3);
    for (SolverKind k : {SolverKind::Oracle, SolverKind::Exact, SolverKind::Greedy}) {
        const SolverResult r = solve(p, k);
        CHECK(r.objective == no_mirror_objective(p));
        CHECK(r.allocation.empty());
        check_verified(p, r);
    }
    CHECK(big_m(p) == Approx(*std::max_element(&p.base_ref(0, 0), &p.base_ref(0, 0) + 9)));
}

TEST_CASE("single user, single photodiode: base plus every best contribution") {
    std::mt19937_64 rng(2);
    const AllocationProblem p = oracle::random_problem(rng, 3, 4, 1, 1, 0.0);
    double expected = p.base(0, 0);
    for (std::size_t k = 0; k < 4; ++k) {
        double best = 0.0;
        for (std::size_t l = 0; l < 3; ++l) best = std::max(best, p.contrib(l, k, 0, 0));
        expected += best;
    }
    for (SolverKind k : {SolverKind::Oracle, SolverKind::Exact, SolverKind::Greedy})
        CHECK(solve(p, k).objective == Approx(expected).epsilon(1e-12));
}

TEST_CASE("single user, several photodiodes: closed form over the chosen photodiode") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const AllocationProblem p = oracle::random_problem(rng, 2, 5, 4, 1);
        double expected = 0.0;
        for (std::size_t n = 0; n < 4; ++n) {
            double v = p.base(n, 0);
            for (std::size_t k = 0; k < 5; ++k) v += std::max(p.contrib(0, k, n, 0), p.contrib(1, k, n, 0));
            expected = std::max(expected, v);
        }
        CHECK(branch_and_bound(p).objective == Approx(expected).epsilon(1e-12));
        CHECK(greedy(p).objective == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("a zero contribution is the same as forbidding that option") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 30; ++rep) {
        AllocationProblem p = oracle::random_problem(rng, 2, 3, 2, 2, 0.0);
        const std::size_t l = rng() % 2, k = rng() % 3, n = rng() % 2, u = rng() % 2;
        p.contrib_ref(l, k, n, u) = 0.0;
        // Enumerate with that option removed.
        const int options = 8;
        const int forbidden = static_cast<int>((l * 2 + n) * 2 + u);
        double best = 0.0;
        std::vector<int> choice(3);
        for (int a = -1; a < options; ++a)
            for (int b = -1; b < options; ++b)
                for (int c = -1; c < options; ++c) {
                    choice = {a, b, c};
                    if (choice[k] == forbidden) continue;
                    best = std::max(best, oracle::objective(p, choice));
                }
        CHECK(branch_and_bound(p).objective == Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("big_m bounds every objective and scales linearly") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const AllocationProblem p = oracle::random_problem(rng, 2, 3, 2, 2);
        const double m = big_m(p);
        CHECK(m >= brute_force(p).objective);
        CHECK(big_m(p.scaled(3.5)) == Approx(3.5 * m).epsilon(1e-12));
    }
}

TEST_CASE("brute_force edge cases") {
    std::mt19937_64 rng(6);
    const AllocationProblem none = oracle::random_problem(rng, 2, 0, 3, 2);
    CHECK(brute_force(none).objective == no_mirror_objective(none));

    AllocationProblem one(2, 1, 1, 1);
    one.base_ref(0, 0) = 0.1;
    one.contrib_ref(0, 0, 0, 0) = 0.2;
    one.contrib_ref(1, 0, 0, 0) = 0.7;
    const SolverResult r = brute_force(one);
    REQUIRE(r.allocation.size() == 1);
    CHECK(r.allocation.entries[0].l == 1);
    CHECK(r.objective == Approx(0.8));

    const AllocationProblem big = oracle::random_problem(rng, 4, 30, 7, 4);
    CHECK_THROWS_AS(brute_force(big), std::length_error);
}

TEST_CASE("brute_force and branch_and_bound agree with the independent enumerator") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 150; ++rep) {
        const std::size_t K = 1 + rng() % 4;
        const AllocationProblem p = oracle::random_problem(rng, 2, K, 3, 2);
        const double truth = oracle::optimum(p);
        const SolverResult bf = brute_force(p);
        const SolverResult bb = branch_and_bound(p);
        CHECK(oracle::rel_equal(bf.objective, truth));
        CHECK(oracle::rel_equal(bb.objective, bf.objective));
        CHECK(bf.status == SolverStatus::Optimal);
        CHECK(bb.status == SolverStatus::Optimal);
        check_verified(p, bf);
        check_verified(p, bb);
    }
}

TEST_CASE("branch_and_bound on larger instances stays exact against brute_force") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        const AllocationProblem p = oracle::random_problem(rng, 2, 5, 2, 3, 0.5);
        CHECK(oracle::rel_equal(branch_and_bound(p).objective, brute_force(p).objective));
    }
}

TEST_CASE("branch_and_bound with all-zero contributions returns an empty allocation") {
    std::mt19937_64 rng(9);
    AllocationProblem p = oracle::random_problem(rng, 2, 6, 3, 2);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t k = 0; k < 6; ++k)
            for (std::size_t n = 0; n < 3; ++n)
                for (std::size_t u = 0; u < 2; ++u) p.contrib_ref(l, k, n, u) = 0.0;
    const SolverResult r = branch_and_bound(p);
    CHECK(r.allocation.empty());
    CHECK(r.objective == no_mirror_objective(p));
    CHECK(r.nodes <= 1);
}

TEST_CASE("node limit returns the incumbent as a heuristic") {
    std::mt19937_64 rng(10);
    const AllocationProblem p = oracle::random_problem(rng, 4, 40, 7, 4, 0.2);
    const SolverResult r = branch_and_bound(p, BranchAndBoundOptions{1e-9, 50});
    CHECK(r.status == SolverStatus::Heuristic);
    CHECK(r.objective >= greedy(p).objective);
    check_verified(p, r);
}

TEST_CASE("greedy lies between the no-mirror objective and the optimum") {
    std::mt19937_64 rng(11);
    int exact = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t K = 1 + rng() % 4;
        const AllocationProblem p = oracle::random_problem(rng, 2, K, 3, 2);
        const SolverResult g = greedy(p);
        const double opt = oracle::optimum(p);
        CHECK(g.objective >= no_mirror_objective(p));
        CHECK(g.objective <= opt * (1 + 1e-12));
        CHECK(g.status == SolverStatus::Heuristic);
        exact += oracle::rel_equal(g.objective, opt);
        check_verified(p, g);
    }
    MESSAGE("greedy hit the optimum on " << exact << " of 200 instances");
    CHECK(exact > 100);
}

TEST_CASE("symmetric two-user instance: one element each") {
    AllocationProblem p(1, 2, 1, 2);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t u = 0; u < 2; ++u) p.contrib_ref(0, k, 0, u) = 1.0;
    const SolverResult g = greedy(p);
    REQUIRE(g.allocation.size() == 2);
    CHECK(g.allocation.entries[0].u != g.allocation.entries[1].u);
    CHECK(g.objective == 1.0);
    CHECK(branch_and_bound(p).objective == 1.0);
}

TEST_CASE("verify_solution catches violations") {
    std::mt19937_64 rng(12);
    const AllocationProblem p = oracle::random_problem(rng, 2, 3, 3, 2, 0.0);
    const SolverResult good = brute_force(p);
    check_verified(p, good);

    SolverResult twice = good;
    twice.allocation.entries.push_back({0, 0, 0, 0});
    twice.allocation.entries.push_back({0, 1, 0, 1});
    const auto r1 = verify_solution(p, twice);
    CHECK_FALSE(r1.ok);
    CHECK(std::any_of(r1.violations.begin(), r1.violations.end(), [](const std::string& v) { return v.rfind("C1", 0) == 0; }));

    // Point user 0 at a photodiode that does not attain its value.
    SolverResult wrong = good;
    const std::vector<double> values = photodiode_values(p, good.allocation);
    std::size_t worst_n = 0;
    for (std::size_t n = 1; n < 3; ++n)
        if (values[n * 2] < values[worst_n * 2]) worst_n = n;
    REQUIRE(values[worst_n * 2] < good.user_values[0]);
    wrong.selected_photodiode[0] = worst_n;
    const auto r2 = verify_solution(p, wrong);
    CHECK_FALSE(r2.ok);
    CHECK(std::any_of(r2.violations.begin(), r2.violations.end(),
                      [](const std::string& v) { return v.rfind("C4", 0) == 0 || v.rfind("C5", 0) == 0; }));

    // Understated user value.
    SolverResult low = good;
    low.user_values[1] *= 0.5;
    CHECK_FALSE(verify_solution(p, low).ok);

    SolverResult bad_index = good;
    bad_index.allocation.entries.push_back({99, 0, 0, 0});
    CHECK_FALSE(verify_solution(p, bad_index).ok);

    SolverResult bad_objective = good;
    bad_objective.objective *= 1.5;
    CHECK_FALSE(verify_solution(p, bad_objective).ok);
}

TEST_CASE("adding an element never lowers the optimum") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 60; ++rep) {
        const AllocationProblem big = oracle::random_problem(rng, 2, 4, 2, 2);
        AllocationProblem small(2, 3, 2, 2);
        for (std::size_t n = 0; n < 2; ++n)
            for (std::size_t u = 0; u < 2; ++u) {
                small.base_ref(n, u) = big.base(n, u);
                for (std::size_t l = 0; l < 2; ++l)
                    for (std::size_t k = 0; k < 3; ++k) small.contrib_ref(l, k, n, u) = big.contrib(l, k, n, u);
            }
        CHECK(branch_and_bound(big).objective >= branch_and_bound(small).objective);
    }
}

TEST_CASE("scaling the instance scales the optimum and keeps the allocation") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 60; ++rep) {
        const AllocationProblem p = oracle::random_problem(rng, 2, 3, 3, 2);
        const SolverResult a = brute_force(p);
        // Powers of two keep the arithmetic exact.
        const SolverResult b = brute_force(p.scaled(8.0));
        CHECK(b.objective == 8.0 * a.objective);
        CHECK(a.allocation.entries == b.allocation.entries);
        CHECK(branch_and_bound(p.scaled(1e-7)).objective == Approx(1e-7 * a.objective).epsilon(1e-12));
    }
}

TEST_CASE("outage users and empty user sets") {
    AllocationProblem p(1, 2, 2, 2);
    p.base_ref(0, 0) = 1.0;
    p.contrib_ref(0, 0, 1, 0) = 0.5;
    const SolverResult r = branch_and_bound(p);
    CHECK(r.objective == 0.0);
    CHECK(r.status == SolverStatus::Optimal);
    REQUIRE(r.outage_users.size() == 1);
    CHECK(r.outage_users[0] == 1);
    check_verified(p, r);

    const AllocationProblem empty(1, 3, 2, 0);
    for (SolverKind k : {SolverKind::Oracle, SolverKind::Exact, SolverKind::Greedy}) {
        const SolverResult e = solve(empty, k);
        CHECK(e.objective == 0.0);
        CHECK(e.status == SolverStatus::InfeasibleDegenerate);
        check_verified(empty, e);
    }
}

TEST_CASE("solvers on a sampled scene with blockage") {
    SceneConfig cfg;
    cfg.oris.cols = 1;
    cfg.oris.rows = 1;
    cfg.wall.cell_size = 0.5;
    cfg.receiver.fov = deg_to_rad(75.0);
    cfg.room.ap_positions = {{2.0, 2.0, 3.0}};  // keeps (L N U + 1)^K enumerable
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = build_scenario(cfg, sample_users(2, cfg.room, cfg.receiver, seed), true);
        const AllocationProblem p = build_problem(compute_gain_tables(s), LinkBudget{});
        const SolverResult bf = brute_force(p), bb = branch_and_bound(p), g = greedy(p);
        CHECK(oracle::rel_equal(bf.objective, bb.objective));
        CHECK(g.objective <= bb.objective * (1 + 1e-12));
        check_verified(p, bf);
        check_verified(p, bb);
        check_verified(p, g);
        CHECK(elements_used(p, bb) <= 4);
    }
}

TEST_CASE("elements_used counts only contributing assignments") {
    AllocationProblem p(1, 3, 2, 1);
    p.contrib_ref(0, 0, 0, 0) = 1.0;
    p.contrib_ref(0, 1, 0, 0) = 1.0;
    p.contrib_ref(0, 2, 1, 0) = 0.5;
    SolverResult r = branch_and_bound(p);
    CHECK(elements_used(p, r) == 2);
    // A stray assignment to a photodiode that is not selected is not counted.
    r.allocation.entries.push_back({2, 0, 1, 0});
    CHECK(elements_used(p, r) == 2);
}

TEST_CASE("solver names and JSON") {
    CHECK(solver_kind_from_string("exact") == SolverKind::Exact);
    CHECK(solver_kind_from_string("oracle") == SolverKind::Oracle);
    CHECK(solver_kind_from_string("greedy") == SolverKind::Greedy);
    CHECK_THROWS_AS(solver_kind_from_string("gurobi"), std::invalid_argument);
    AllocationProblem p(1, 1, 1, 2);
    p.contrib_ref(0, 0, 0, 0) = 2.0;
    const auto j = solver_result_to_json(branch_and_bound(p));
    CHECK(j["allocation"].size() == 1);
    CHECK(j["objective"].get<double>() == 0.0);
    CHECK(j["user_snr_db"][1] == "-inf");
    CHECK(j["user_snr"][0].get<double>() == 4.0);
    CHECK(j["status"] == "optimal");
}
