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
#include <functional>
#include <vector>

#include "uqubo/penalty.hpp"
#include "uqubo/problems.hpp"
#include "uqubo/spectrum.hpp"

namespace uqubo {

inline constexpr double kBarrier = 1e6;

struct NelderMeadOptions {
    double alpha = 1.0;  // reflection
    double gamma = 2.0;  // expansion
    double rho = 0.5;    // contraction
    double sigma = 0.5;  // shrink
    std::size_t max_iterations = 100;
    /// Stop once the spread of objective values over the simplex is this small.
    double tolerance = 1e-6;

    /// Throws ParameterError unless alpha > 0, gamma > 1, 0 < rho < 1, 0 < sigma < 1.
    void validate() const;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Called once before the first iteration (iteration 0) and after every
/// iteration with the best vertex so far.
using NelderMeadObserver = std::function<void(std::size_t iteration, const std::vector<double>& best, double value)>;

/// Derivative-free minimization. The initial simplex is x0 plus one vertex
/// per coordinate moved by +5% (or +0.1 when the coordinate is 0).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {}, const NelderMeadObserver& observer = {});

/// Number of states strictly below the optimal energy plus the normalized gap
/// (E_opt - E_ground) / (E_max - E_ground). Weights the encoding uses that are
/// not positive give kBarrier + sum of their negative parts.
double rank_objective(const PenaltyConfig& config, const ProblemInstance& instance,
                      Encoding encoding = Encoding::unbalanced, const SpectrumOptions& options = {});

struct TuneConfig {
    PenaltyConfig initial;
    Encoding encoding = Encoding::unbalanced;
    NelderMeadOptions simplex;
    SpectrumOptions spectrum;
    /// Objectives are averaged over these.
    std::vector<ProblemInstance> training_instances;
};

struct TraceRow {
    std::size_t iteration = 0;
    PenaltyConfig config;
    double objective = 0.0;
};

struct TuneResult {
    PenaltyConfig best;
    double objective = 0.0;
    double initial_objective = 0.0;
    bool converged = false;
    std::vector<TraceRow> trace;
};

/// Tunes over config.training_instances. Weights the encoding ignores (lambda0
/// without equality constraints, lambda2 for slack) stay at their initial values.
TuneResult tune(const TuneConfig& config);
/// Tunes on a single instance, ignoring config.training_instances.
TuneResult tune(const TuneConfig& config, const ProblemInstance& instance);

}  // namespace uqubo
