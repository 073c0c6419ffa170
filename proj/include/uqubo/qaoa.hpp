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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uqubo/problems.hpp"
#include "uqubo/qubo.hpp"

namespace uqubo {

inline constexpr std::size_t kDefaultQaoaCap = 24;

using StateVector = std::vector<std::complex<double>>;

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    std::size_t p() const noexcept { return gammas.size(); }
    /// Throws ParameterError unless both sequences have the same length >= 1.
    void validate() const;
};

/// Applies p layers of phase e^{-i gamma (E(z) - offset)} and mixer
/// e^{+i beta X} per qubit to |+>^n. Bit k of the basis index is qubit k,
/// with Z eigenvalue 1 - 2 x_k.
StateVector qaoa_state(const IsingModel& ising, const QaoaParams& params, std::size_t max_qubits = kDefaultQaoaCap);

/// sum_z |a_z|^2 E(z), offset included.
double expectation(const StateVector& state, const IsingModel& ising);

/// Probability mass on a set of basis indices; duplicates count once.
double probability_of_set(const StateVector& state, const std::vector<std::uint64_t>& targets);

enum class ScanMethod {
    automatic,    // state vector up to kAutoStatevectorLimit qubits, closed form above
    statevector,  // full simulation at every grid point
    closed_form,  // exact p=1 formulas, no 2^n state per point
};

inline constexpr std::size_t kAutoStatevectorLimit = 14;

struct GridSpec {
    std::size_t gamma_points = 50;
    std::size_t beta_points = 50;
    /// Include the fields h in max |coefficient| for the gamma range.
    bool qmax_includes_fields = true;
    ScanMethod method = ScanMethod::automatic;
    unsigned workers = 1;
    std::size_t max_qubits = kDefaultQaoaCap;
};

/// p=1 landscape on cell centers; tables are gamma-major
/// (index = gamma_index * beta_points + beta_index).
struct LandscapeGrid {
    std::vector<double> gamma_axis;
    std::vector<double> beta_axis;
    std::vector<double> energy;
    std::vector<double> p_opt;
    std::vector<double> p_opt_max;
    std::pair<std::size_t, std::size_t> min_cell{0, 0};
    double q_max = 0.0;
    std::size_t num_qubits = 0;
    ScanMethod method = ScanMethod::statevector;

    std::size_t index(std::size_t g, std::size_t b) const noexcept { return g * beta_axis.size() + b; }
    double min_energy() const { return energy[index(min_cell.first, min_cell.second)]; }
    double p_opt_at_min() const { return p_opt[index(min_cell.first, min_cell.second)]; }
};

LandscapeGrid scan_landscape(const IsingModel& ising, const std::vector<std::uint64_t>& optimal_set,
                             const GridSpec& spec = {});

/// Ratio of a success probability to random guessing over n qubits.
double cop(double p_opt, std::size_t num_qubits);

/// Landscape minimum of one encoded instance and its CoP.
struct CopPoint {
    std::size_t size = 0;
    std::uint64_t instance_seed = 0;
    std::size_t num_qubits = 0;
    double gamma = 0.0;
    double beta = 0.0;
    double energy = 0.0;
    double p_opt = 0.0;
    double p_opt_max = 0.0;
    double cop = 0.0;
};

/// Scans the p=1 landscape with the optimal states of `encoded` as targets
/// and reads the probability at the minimum-energy cell.
CopPoint cop_at_minimum(const EncodedProblem& encoded, const OracleResult& oracle, const GridSpec& spec = {});

const char* to_string(ScanMethod method);
ScanMethod parse_scan_method(const std::string& text);

}  // namespace uqubo
