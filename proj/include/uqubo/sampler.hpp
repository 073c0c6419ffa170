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
#include <string>
#include <vector>

#include "uqubo/penalty.hpp"
#include "uqubo/problems.hpp"
#include "uqubo/qubo.hpp"

namespace uqubo {

enum class ScheduleShape { geometric, linear };

struct AnnealSchedule {
    std::size_t num_sweeps = 1000;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    ScheduleShape shape = ScheduleShape::geometric;

    /// Throws ParameterError unless beta_final > beta_initial > 0 and num_sweeps >= 1.
    void validate() const;
    /// Inverse temperature of sweep k (0-based).
    double beta_at(std::size_t sweep) const;
};

struct SampleRecord {
    std::vector<Bit> bits;
    double energy = 0.0;
    std::uint64_t count = 0;
};

/// Distinct assignments sorted by (energy, bits).
struct SampleSet {
    std::vector<SampleRecord> records;
    std::uint64_t total_reads = 0;
    std::string backend;
    std::uint64_t seed = 0;
};

/// Anything mapping (model, reads, seed) to samples.
class Sampler {
 public:
    virtual ~Sampler() = default;
    virtual SampleSet sample(const IsingModel& ising, std::size_t num_reads, std::uint64_t seed) const = 0;
    virtual std::string name() const = 0;
};

/// Single-spin-flip Metropolis chains from uniform random starts. Read r uses
/// the seed derive_seed(seed, r), so results do not depend on `workers`.
SampleSet anneal(const IsingModel& ising, const AnnealSchedule& schedule, std::size_t num_reads, std::uint64_t seed,
                 unsigned workers = 1);

class SimulatedAnnealingSampler final : public Sampler {
 public:
    explicit SimulatedAnnealingSampler(AnnealSchedule schedule = {}, unsigned workers = 1)
            : schedule_(schedule), workers_(workers) {}

    SampleSet sample(const IsingModel& ising, std::size_t num_reads, std::uint64_t seed) const override {
        return anneal(ising, schedule_, num_reads, seed, workers_);
    }
    std::string name() const override { return "simulated-annealing"; }

 private:
    AnnealSchedule schedule_;
    unsigned workers_;
};

struct InstanceSuccess {
    std::size_t size = 0;
    std::uint64_t instance_seed = 0;
    Encoding encoding = Encoding::unbalanced;
    std::size_t num_vars = 0;
    double p_optimal = 0.0;
    double p_valid = 0.0;
    std::uint64_t reads = 0;
};

struct SuccessReport {
    std::size_t size = 0;
    Encoding encoding = Encoding::unbalanced;
    double p_optimal = 0.0;  // mean over instances
    double p_valid = 0.0;
    std::vector<InstanceSuccess> instances;
};

struct SuccessOptions {
    std::size_t num_reads = 5000;
    bool simplify = true;
};

/// Fractions of reads that decode to an optimal / any feasible solution.
InstanceSuccess score_samples(const SampleSet& samples, const EncodedProblem& encoded, const OracleResult& oracle);

/// Seed used for the instance of `trial` at `size`; shared by both encodings.
std::uint64_t experiment_instance_seed(std::uint64_t seed, std::size_t size, std::size_t trial);

/// For each size, generates trials_per_size instances, encodes, samples and
/// scores every read against the oracle.
std::vector<SuccessReport> run_success_experiment(ProblemKind kind, const std::vector<std::size_t>& sizes,
                                                  std::size_t trials_per_size, Encoding encoding,
                                                  const PenaltyConfig& config, const Sampler& backend,
                                                  std::uint64_t seed, const SuccessOptions& options = {});

const char* to_string(ScheduleShape shape);
ScheduleShape parse_schedule_shape(const std::string& text);

}  // namespace uqubo
