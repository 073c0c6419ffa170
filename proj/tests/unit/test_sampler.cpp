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

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "uqubo/error.hpp"
#include "uqubo/sampler.hpp"
#include "uqubo/spectrum.hpp"

using namespace uqubo;
using uqubo::testing::random_model;

namespace {

/// Returns the same assignment for every read.
class FixedSampler final : public Sampler {
 public:
    explicit FixedSampler(std::vector<Bit> bits) : bits_(std::move(bits)) {}
    SampleSet sample(const IsingModel& ising, std::size_t reads, std::uint64_t seed) const override {
        return {{{bits_, ising.energy_of_bits(bits_), reads}}, reads, name(), seed};
    }
    std::string name() const override { return "fixed"; }

 private:
    std::vector<Bit> bits_;
};

/// Independent uniform bitstrings.
class UniformSampler final : public Sampler {
 public:
    SampleSet sample(const IsingModel& ising, std::size_t reads, std::uint64_t seed) const override {
        Rng rng(seed);
        SampleSet out{{}, reads, name(), seed};
        for (std::size_t r = 0; r < reads; ++r) {
            std::vector<Bit> bits(ising.num_spins());
            for (auto& b : bits) b = rng.uniform() < 0.5;
            out.records.push_back({bits, ising.energy_of_bits(bits), 1});
        }
        return out;
    }
    std::string name() const override { return "uniform"; }
};

std::uint64_t reads_at(const SampleSet& s, const std::vector<Bit>& bits) {
    for (const auto& r : s.records) {
        if (r.bits == bits) return r.count;
    }
    return 0;
}

}  // namespace

TEST_CASE("schedule") {
    AnnealSchedule g{.num_sweeps = 5, .beta_initial = 0.1, .beta_final = 10.0};
    CHECK(g.beta_at(0) == doctest::Approx(0.1));
    CHECK(g.beta_at(2) == doctest::Approx(1.0));
    CHECK(g.beta_at(4) == doctest::Approx(10.0));
    AnnealSchedule l{.num_sweeps = 3, .beta_initial = 1.0, .beta_final = 3.0, .shape = ScheduleShape::linear};
    CHECK(l.beta_at(1) == doctest::Approx(2.0));
    CHECK_THROWS_AS((AnnealSchedule{.num_sweeps = 0}).validate(), ParameterError);
    CHECK_THROWS_AS((AnnealSchedule{.beta_initial = 0.0}).validate(), ParameterError);
    CHECK_THROWS_AS((AnnealSchedule{.beta_initial = 2.0, .beta_final = 1.0}).validate(), ParameterError);
    CHECK(parse_schedule_shape(to_string(ScheduleShape::linear)) == ScheduleShape::linear);
}

TEST_CASE("single spin anneals into its ground state") {
    IsingModel m(1);
    m.add_field(0, 1.0);
    auto s = anneal(m, {.num_sweeps = 1000}, 1000, 42);
    CHECK(s.total_reads == 1000);
    CHECK(reads_at(s, {1}) >= 990);  // x = 1 is z = -1
}

TEST_CASE("ferromagnetic pair") {
    IsingModel m(2);
    m.add_coupling(0, 1, -1.0);
    auto s = anneal(m, {}, 500, 3);
    std::uint64_t low = 0;
    for (const auto& r : s.records) {
        if (r.energy <= -1.0) {
            CHECK(r.bits[0] == r.bits[1]);
            low += r.count;
        }
    }
    CHECK(low == 500);
}

TEST_CASE("zero Hamiltonian gives uniform marginals") {
    const std::size_t n = 8, reads = 4000;
    auto s = anneal(IsingModel(n), {.num_sweeps = 7}, reads, 11);
    for (std::size_t i = 0; i < n; ++i) {
        double ones = 0;
        for (const auto& r : s.records) ones += r.bits[i] ? double(r.count) : 0.0;
        const double half = reads / 2.0;
        const double chi2 = 2 * (ones - half) * (ones - half) / half;
        CHECK(chi2 < 6.635);  // 1 degree of freedom, p = 0.01
    }
}

TEST_CASE("sample sets are deterministic and consistent") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto ising = to_ising(random_model(10, seed));
        AnnealSchedule sched{.num_sweeps = 30};
        auto a = anneal(ising, sched, 64, seed);
        auto b = anneal(ising, sched, 64, seed, 3);
        REQUIRE(a.records.size() == b.records.size());
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < a.records.size(); ++k) {
            CHECK(a.records[k].bits == b.records[k].bits);
            CHECK(a.records[k].count == b.records[k].count);
            CHECK(a.records[k].energy == ising.energy_of_bits(a.records[k].bits));
            if (k > 0) CHECK(a.records[k - 1].energy <= a.records[k].energy);
            total += a.records[k].count;
        }
        CHECK(total == 64);
        CHECK(a.seed == seed);
        CHECK(a.backend == "simulated-annealing");
    }
}

TEST_CASE("success experiment with fixed and uniform backends") {
    auto inst_seed = experiment_instance_seed(5, 4, 0);
    auto inst = generate(ProblemKind::kp, 4, inst_seed);
    auto oracle = oracle_solve(inst);
    auto enc = build_qubo(inst, Encoding::slack, default_penalties(ProblemKind::kp));
    auto bits = encode_assignment(enc, oracle.assignment);
    auto fixed = run_success_experiment(ProblemKind::kp, {4}, 1, Encoding::slack, default_penalties(ProblemKind::kp),
                                        FixedSampler(bits), 5, {.num_reads = 10});
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0].p_optimal == 1.0);
    CHECK(fixed[0].p_valid == 1.0);
    CHECK(fixed[0].instances[0].reads == 10);

    // exact feasible fraction by enumeration
    auto tsp = generate(ProblemKind::tsp, 4, experiment_instance_seed(9, 4, 0));
    auto tenc = build_qubo(tsp, Encoding::unbalanced, default_penalties(ProblemKind::tsp));
    std::uint64_t feasible = 0;
    enumerate_energies(tenc.model, [&](std::uint64_t state, double) {
        feasible += decode(bits_of(state, tenc.num_vars()), tenc).feasible;
    });
    const double f = double(feasible) / 4096.0;
    const std::size_t reads = 200000;
    auto uni = run_success_experiment(ProblemKind::tsp, {4}, 1, Encoding::unbalanced,
                                      default_penalties(ProblemKind::tsp), UniformSampler(), 9, {.num_reads = reads});
    CHECK(std::abs(uni[0].p_valid - f) <= 4 * std::sqrt(f * (1 - f) / reads));
    CHECK(uni[0].p_optimal <= uni[0].p_valid);
}

TEST_CASE("annealing success fractions are ordered") {
    SimulatedAnnealingSampler sa({.num_sweeps = 200});
    for (auto enc : {Encoding::slack, Encoding::unbalanced}) {
        auto reports = run_success_experiment(ProblemKind::bpp, {3, 4}, 3, enc, default_penalties(ProblemKind::bpp), sa,
                                              1, {.num_reads = 200, .simplify = false});
        for (const auto& r : reports) {
            CHECK(r.instances.size() == 3);
            for (const auto& i : r.instances) {
                CHECK(0.0 <= i.p_optimal);
                CHECK(i.p_optimal <= i.p_valid);
                CHECK(i.p_valid <= 1.0);
                CHECK(i.encoding == enc);
            }
        }
    }
}
