// Copyright 2026 The uqubo Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "uqubo/problems.hpp"
#include "uqubo/qubo.hpp"

namespace uqubo {

inline constexpr std::size_t kDefaultSpectrumCap = 24;

struct SpectrumOptions {
    std::size_t max_vars = kDefaultSpectrumCap;
    double tolerance = 1e-6;
    std::size_t top_k = 50;
    unsigned workers = 1;
    /// Random states re-evaluated directly to bound the Gray-code drift.
    std::size_t spot_checks = 0;
    std::uint64_t spot_check_seed = 0;
};

/// Incremental energy along the reflected Gray code. Position t visits the
/// state t ^ (t >> 1); consecutive positions differ in one bit, so each step
/// costs one local-field update.
class GrayWalker {
 public:
    explicit GrayWalker(const CompiledModel& model);

    /// Jumps to position t and recomputes the energy directly.
    void seek(std::uint64_t position);
    /// Advances to the next position.
    void step();

    std::uint64_t position() const noexcept { return position_; }
    std::uint64_t state() const noexcept { return state_; }
    double energy() const noexcept { return energy_; }

 private:
    const CompiledModel& model_;
    std::uint64_t position_ = 0;
    std::uint64_t state_ = 0;
    double energy_ = 0.0;
    std::vector<double> field_;  // linear_k + sum_{j set} q_kj
};

/// Visits all 2^n states once as (state index, energy); bit i of the state
/// index is variable i. Throws CapabilityError above `max_vars`.
void enumerate_energies(const QuadraticBinaryModel& model,
                        const std::function<void(std::uint64_t, double)>& visitor,
                        std::size_t max_vars = kDefaultSpectrumCap);

/// Energies indexed by state.
std::vector<double> all_energies(const QuadraticBinaryModel& model, std::size_t max_vars = kDefaultSpectrumCap);

/// One distinct energy (within tolerance) among the lowest ones.
struct EnergyLevel {
    double energy = 0.0;
    std::uint64_t multiplicity = 0;
    std::uint64_t rank_start = 0;  // 1-based position of the level's first state
    bool contains_optimal = false;
    bool contains_feasible = false;
};

struct SpectrumSummary {
    std::uint64_t num_states = 0;
    std::size_t num_vars = 0;
    double ground_energy = 0.0;
    double max_energy = 0.0;
    double optimal_energy = 0.0;
    /// 1 + number of states strictly below the optimal energy; 0 on failure.
    std::uint64_t optimal_rank = 0;
    std::uint64_t optimal_multiplicity = 0;
    std::uint64_t below_optimal = 0;
    std::vector<EnergyLevel> top_k;
    /// No basis state decodes to an optimal solution.
    bool encoding_failure = false;
    double spot_check_max_error = 0.0;

    double rank_fraction() const {
        return num_states ? static_cast<double>(optimal_rank) / static_cast<double>(num_states) : 0.0;
    }
};

/// Locates the optimal solution in the sorted spectrum of the encoded model.
/// The optimal energy is the lowest energy among states that decode to a
/// feasible solution with the oracle's objective.
SpectrumSummary rank_optimal(const EncodedProblem& encoded, const OracleResult& oracle,
                             const SpectrumOptions& options = {});

struct SubGroundState {
    std::uint64_t state = 0;
    double energy = 0.0;
    DecodedSolution decoded;
};

/// Every state below the optimal energy with its decoded violations, sorted
/// by energy. `limit` caps the list length (0 = no cap).
std::vector<SubGroundState> infeasible_ground_report(const SpectrumSummary& summary, const EncodedProblem& encoded,
                                                     const SpectrumOptions& options = {}, std::size_t limit = 0);

/// States that decode to an optimal solution and, for slack encodings, carry
/// the canonical slack value: the target set for success probabilities.
std::vector<std::uint64_t> optimal_states(const EncodedProblem& encoded, const OracleResult& oracle,
                                          const SpectrumOptions& options = {});

}  // namespace uqubo
