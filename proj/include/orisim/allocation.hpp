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

// Max-min assignment of mirror elements to (AP, photodiode, user) triples.
//
// Every solver works on optical SNR values (square root of the electrical
// SNR), which are linear in the assignment. A user's value is the best of
// its photodiodes; the objective is the smallest user value. The select-best
// and min constraints of the integer program are enforced by recomputing the
// values exactly instead of through big-M rows, and verify_solution() checks
// the resulting point against the full constraint list.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orisim/channel.hpp"

namespace orisim {

class AllocationProblem {
public:
    AllocationProblem() = default;
    AllocationProblem(std::size_t aps, std::size_t oris, std::size_t photodiodes, std::size_t users);

    std::size_t aps() const { return aps_; }
    std::size_t oris_count() const { return oris_; }
    std::size_t photodiodes() const { return pds_; }
    std::size_t users() const { return users_; }

    /// Optical SNR from LoS and diffuse terms only.
    double base(std::size_t n, std::size_t u) const { return base_[n * users_ + u]; }
    /// Optical SNR increment when element k serves (l, n, u).
    double contrib(std::size_t l, std::size_t k, std::size_t n, std::size_t u) const {
        return contrib_[((l * oris_ + k) * pds_ + n) * users_ + u];
    }
    double& base_ref(std::size_t n, std::size_t u) { return base_[n * users_ + u]; }
    double& contrib_ref(std::size_t l, std::size_t k, std::size_t n, std::size_t u) {
        return contrib_[((l * oris_ + k) * pds_ + n) * users_ + u];
    }

    /// Multiplies every entry by `factor`.
    AllocationProblem scaled(double factor) const;

private:
    std::size_t aps_ = 0, oris_ = 0, pds_ = 0, users_ = 0;
    std::vector<double> base_;
    std::vector<double> contrib_;
};

AllocationProblem build_problem(const GainTables& tables, const LinkBudget& budget);

/// Upper bound on any user's optical SNR.
double big_m(const AllocationProblem& problem);

enum class SolverStatus { Optimal, Heuristic, InfeasibleDegenerate };
std::string_view to_string(SolverStatus status);

enum class SolverKind { Oracle, Exact, Greedy };
std::string_view to_string(SolverKind kind);
/// Throws std::invalid_argument for unknown names.
SolverKind solver_kind_from_string(std::string_view name);

struct SolverResult {
    Allocation allocation;
    double objective = 0.0;                      // min over users of user_values
    std::vector<std::size_t> selected_photodiode;  // per user
    std::vector<double> user_values;             // optical SNR per user
    std::vector<std::size_t> outage_users;       // users stuck at zero
    SolverStatus status = SolverStatus::Heuristic;
    std::uint64_t nodes = 0;
};

/// Optical SNR of every photodiode under `allocation`, indexed [n * users + u].
/// Contributions are accumulated in increasing element order.
std::vector<double> photodiode_values(const AllocationProblem& problem, const Allocation& allocation);

/// Exhaustive enumeration; throws std::length_error when
/// (L*N*U + 1)^K exceeds `budget`.
SolverResult brute_force(const AllocationProblem& problem, std::uint64_t budget = 10'000'000);

struct BranchAndBoundOptions {
    double tolerance = 1e-9;    // relative pruning slack
    std::uint64_t node_limit = 0;  // 0 = unlimited; hitting it returns the incumbent as Heuristic
};

SolverResult branch_and_bound(const AllocationProblem& problem, double tolerance = 1e-9);
SolverResult branch_and_bound(const AllocationProblem& problem, const BranchAndBoundOptions& options);

/// Fast heuristic; never below the no-mirror objective and never above the optimum.
SolverResult greedy(const AllocationProblem& problem);

SolverResult solve(const AllocationProblem& problem, SolverKind kind, const BranchAndBoundOptions& options = {});

struct VerificationReport {
    bool ok = true;
    std::vector<std::string> violations;
    explicit operator bool() const { return ok; }
};

/// Checks C1..C7 against values recomputed from `problem`.
VerificationReport verify_solution(const AllocationProblem& problem, const SolverResult& result);

/// Assigned elements with a nonzero contribution to their user's selected photodiode.
std::size_t elements_used(const AllocationProblem& problem, const SolverResult& result);

nlohmann::json solver_result_to_json(const SolverResult& result);

}  // namespace orisim
