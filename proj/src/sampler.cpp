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

#include "uqubo/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "parallel.hpp"
#include "uqubo/error.hpp"
#include "uqubo/random.hpp"

namespace uqubo {

namespace {

/// Symmetric adjacency of the couplings.
struct SpinGraph {
    std::vector<double> h;
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> neighbor;
    std::vector<double> weight;

    explicit SpinGraph(const IsingModel& ising) : h(ising.num_spins(), 0.0), row_start(ising.num_spins() + 1, 0) {
        for (const auto& [i, v] : ising.h()) h[i] = v;
        std::vector<std::vector<std::pair<std::size_t, double>>> rows(ising.num_spins());
        for (const auto& [ij, v] : ising.J()) {
            rows[ij.first].emplace_back(ij.second, v);
            rows[ij.second].emplace_back(ij.first, v);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (const auto& [j, v] : rows[i]) {
                neighbor.push_back(j);
                weight.push_back(v);
            }
            row_start[i + 1] = neighbor.size();
        }
    }
};

void anneal_one(const SpinGraph& g, const std::vector<double>& betas, std::uint64_t seed, std::vector<Bit>& out) {
    const std::size_t n = g.h.size();
    Rng rng(seed);
    std::vector<std::int8_t> z(n);
    for (auto& s : z) s = rng.uniform() < 0.5 ? 1 : -1;
    std::vector<double> field(g.h);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = g.row_start[i]; e < g.row_start[i + 1]; ++e) field[i] += g.weight[e] * z[g.neighbor[e]];
    }
    for (double beta : betas) {
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = -2.0 * z[i] * field[i];
            // exp(-40) is below the resolution of a 53-bit uniform draw
            if (delta > 0.0 && (beta * delta > 40.0 || rng.uniform() >= std::exp(-beta * delta))) continue;
            z[i] = static_cast<std::int8_t>(-z[i]);
            const double twice = 2.0 * z[i];
            for (std::size_t e = g.row_start[i]; e < g.row_start[i + 1]; ++e) field[g.neighbor[e]] += twice * g.weight[e];
        }
    }
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = z[i] < 0 ? 1 : 0;
}

}  // namespace

void AnnealSchedule::validate() const {
    if (num_sweeps < 1) throw ParameterError("annealing needs at least one sweep");
    if (!(beta_initial > 0.0) || !(beta_final > beta_initial)) {
        throw ParameterError("annealing needs beta_final > beta_initial > 0");
    }
}

double AnnealSchedule::beta_at(std::size_t sweep) const {
    if (num_sweeps == 1) return beta_final;
    const double t = static_cast<double>(sweep) / static_cast<double>(num_sweeps - 1);
    if (shape == ScheduleShape::linear) return beta_initial + t * (beta_final - beta_initial);
    return beta_initial * std::pow(beta_final / beta_initial, t);
}

SampleSet anneal(const IsingModel& ising, const AnnealSchedule& schedule, std::size_t num_reads, std::uint64_t seed,
                 unsigned workers) {
    schedule.validate();
    const SpinGraph graph(ising);
    std::vector<double> betas(schedule.num_sweeps);
    for (std::size_t k = 0; k < betas.size(); ++k) betas[k] = schedule.beta_at(k);

    std::vector<std::vector<Bit>> reads(num_reads);
    detail::parallel_ranges(num_reads, workers, 1, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t r = begin; r < end; ++r) anneal_one(graph, betas, derive_seed(seed, r), reads[r]);
    });

    std::map<std::vector<Bit>, std::uint64_t> counts;
    for (auto& bits : reads) ++counts[std::move(bits)];
    SampleSet out;
    out.total_reads = num_reads;
    out.backend = "simulated-annealing";
    out.seed = seed;
    for (auto& [bits, count] : counts) {
        const double e = ising.energy_of_bits(bits);
        out.records.push_back({bits, e, count});
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const SampleRecord& a, const SampleRecord& b) { return a.energy < b.energy; });
    return out;
}

InstanceSuccess score_samples(const SampleSet& samples, const EncodedProblem& encoded, const OracleResult& oracle) {
    const SolutionClassifier classifier(encoded);
    const double tol = 1e-6 * std::max(1.0, std::abs(oracle.optimum));
    std::uint64_t optimal = 0, valid = 0, total = 0;
    for (const auto& rec : samples.records) {
        if (rec.bits.size() != encoded.num_vars()) throw DimensionError("sample width does not match the model");
        const auto c = classifier.classify(rec.bits);
        total += rec.count;
        if (!c.feasible) continue;
        valid += rec.count;
        if (std::abs(c.objective - oracle.optimum) <= tol) optimal += rec.count;
    }
    InstanceSuccess s;
    s.encoding = encoded.encoding;
    s.num_vars = encoded.num_vars();
    s.reads = total;
    if (total > 0) {
        s.p_optimal = static_cast<double>(optimal) / static_cast<double>(total);
        s.p_valid = static_cast<double>(valid) / static_cast<double>(total);
    }
    return s;
}

std::uint64_t experiment_instance_seed(std::uint64_t seed, std::size_t size, std::size_t trial) {
    return derive_seed(derive_seed(seed, size), trial);
}

std::vector<SuccessReport> run_success_experiment(ProblemKind kind, const std::vector<std::size_t>& sizes,
                                                  std::size_t trials_per_size, Encoding encoding,
                                                  const PenaltyConfig& config, const Sampler& backend,
                                                  std::uint64_t seed, const SuccessOptions& options) {
    std::vector<SuccessReport> reports;
    for (auto size : sizes) {
        SuccessReport report;
        report.size = size;
        report.encoding = encoding;
        for (std::size_t trial = 0; trial < trials_per_size; ++trial) {
            const auto instance_seed = experiment_instance_seed(seed, size, trial);
            const auto instance = generate(kind, size, instance_seed);
            const auto oracle = oracle_solve(instance);
            const auto encoded = build_qubo(instance, encoding, config, options.simplify);
            const auto samples = backend.sample(to_ising(encoded.model), options.num_reads, derive_seed(instance_seed, 1));
            auto s = score_samples(samples, encoded, oracle);
            s.size = size;
            s.instance_seed = instance_seed;
            report.p_optimal += s.p_optimal;
            report.p_valid += s.p_valid;
            report.instances.push_back(s);
        }
        if (trials_per_size > 0) {
            report.p_optimal /= static_cast<double>(trials_per_size);
            report.p_valid /= static_cast<double>(trials_per_size);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

const char* to_string(ScheduleShape shape) { return shape == ScheduleShape::linear ? "linear" : "geometric"; }

ScheduleShape parse_schedule_shape(const std::string& text) {
    if (text == "geometric") return ScheduleShape::geometric;
    if (text == "linear") return ScheduleShape::linear;
    throw ParameterError("unknown schedule shape '" + text + "'");
}

}  // namespace uqubo
