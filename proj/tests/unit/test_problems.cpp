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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "uqubo/error.hpp"
#include "uqubo/problems.hpp"
#include "uqubo/random.hpp"

using namespace uqubo;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// n(n-1) arc variables plus floor(log2(|Q|-1)) + 1 slack bits per subset
/// Q of {2..n} with 2 <= |Q| <= n-1.
std::uint64_t tsp_slack_qubits_closed_form(std::uint64_t n) {
    std::uint64_t total = n * (n - 1);
    for (std::uint64_t q = 2; q + 1 <= n; ++q) {
        total += binomial(n - 1, q) * static_cast<std::uint64_t>(std::floor(std::log2(double(q - 1)) + 1));
    }
    return total;
}

}  // namespace

TEST_CASE("generate respects the instance distributions") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto kp = std::get<KpInstance>(generate(ProblemKind::kp, 12, seed));
        const auto total = std::accumulate(kp.weights.begin(), kp.weights.end(), std::int64_t{0});
        for (auto w : kp.weights) CHECK((w >= 1 && w <= 127));
        for (auto p : kp.values) CHECK((p >= 1 && p <= 63));
        CHECK(kp.capacity == static_cast<std::int64_t>(std::floor(0.7 * double(total) + 1e-9)));
        CHECK((kp.capacity > 0 && kp.capacity < total));

        auto bpp = std::get<BppInstance>(generate(ProblemKind::bpp, 6, seed));
        for (auto w : bpp.weights) CHECK((w >= 4 && w <= 20));
        CHECK(bpp.bin_capacity == 20);
        CHECK(bpp.m == bpp.n);
    }
    auto tsp = std::get<TspInstance>(generate(ProblemKind::tsp, 6, 3));
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK((tsp.coords[i][0] >= 0 && tsp.coords[i][0] <= 50 && tsp.coords[i][1] >= 0 && tsp.coords[i][1] <= 50));
        CHECK(tsp.distance(i, i) == 0.0);
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(tsp.distance(i, j) == tsp.distance(j, i));
            if (i != j) CHECK(tsp.distance(i, j) > 0.0);
        }
    }
    CHECK(generate(ProblemKind::tsp, 5, 42) == generate(ProblemKind::tsp, 5, 42));
    CHECK(generate(ProblemKind::kp, 9, 42) == generate(ProblemKind::kp, 9, 42));
    CHECK_FALSE(generate(ProblemKind::bpp, 9, 42) == generate(ProblemKind::bpp, 9, 43));
    CHECK_THROWS_AS(generate(ProblemKind::tsp, 1, 0), ParameterError);
}

TEST_CASE("TSP qubit counts") {
    const std::size_t slack[] = {2, 7, 17, 36, 73, 148};
    for (std::size_t n = 2; n <= 7; ++n) {
        auto inst = std::get<TspInstance>(generate(ProblemKind::tsp, n, n));
        auto s = build_tsp_qubo(inst, Encoding::slack, default_penalties(ProblemKind::tsp));
        auto u = build_tsp_qubo(inst, Encoding::unbalanced, default_penalties(ProblemKind::tsp));
        CHECK(s.num_vars() == slack[n - 2]);
        CHECK(s.num_vars() == tsp_slack_qubits_closed_form(n));
        CHECK(u.num_vars() == n * (n - 1));
        CHECK(u.original.inequalities.size() == subtour_family_size(n));
        CHECK(subtour_family_size(n) == (n < 3 ? 0 : (1ULL << (n - 1)) - n));
    }
}

TEST_CASE("two-city tour") {
    auto inst = make_tsp({{{0, 0}}, {{3, 4}}});
    auto enc = build_tsp_qubo(inst, Encoding::unbalanced, default_penalties(ProblemKind::tsp));
    auto oracle = oracle_solve(inst);
    CHECK(oracle.optimum == 10.0);
    CHECK(oracle.optimal_count == 1);
    CHECK(oracle.assignment.at("x[1][2]") == 1);
    CHECK(oracle.assignment.at("x[2][1]") == 1);
    auto x = encode_assignment(enc, oracle.assignment);
    auto d = decode(x, enc);
    CHECK(d.feasible);
    CHECK(d.objective == 10.0);
}

TEST_CASE("three-city tours") {
    auto inst = make_tsp({{{0, 0}}, {{3, 0}}, {{0, 4}}});
    auto oracle = oracle_solve(inst);
    CHECK(oracle.optimum == doctest::Approx(12.0));
    CHECK(oracle.optimal_count >= 2);
    auto enc = build_tsp_qubo(inst, Encoding::slack, default_penalties(ProblemKind::tsp));
    // tour 1 -> 2 -> 3 -> 1
    std::map<std::string, Bit> tour{{"x[1][2]", 1}, {"x[2][3]", 1}, {"x[3][1]", 1}};
    auto d = decode(encode_assignment(enc, tour), enc);
    CHECK(d.feasible);
    CHECK(d.objective == doctest::Approx(12.0));
    // subtour 2 <-> 3 with city 1 on a self-contained 2-cycle is impossible
    // for n = 3; x[2][3] = x[3][2] = 1 breaks in/out of city 1 and the subtour
    std::map<std::string, Bit> bad{{"x[2][3]", 1}, {"x[3][2]", 1}};
    auto v = decode(encode_assignment(enc, bad), enc);
    CHECK_FALSE(v.feasible);
    CHECK(std::find(v.violation_report.begin(), v.violation_report.end(), "subtour{2,3}") != v.violation_report.end());
}

TEST_CASE("knapsack QUBO") {
    auto kp10 = std::get<KpInstance>(generate(ProblemKind::kp, 10, 1));
    auto s = build_kp_qubo(kp10, Encoding::slack, default_penalties(ProblemKind::kp));
    auto u = build_kp_qubo(kp10, Encoding::unbalanced, default_penalties(ProblemKind::kp));
    CHECK(u.num_vars() == 10);
    CHECK(s.num_vars() == 10 + slack_bit_count(s.original.inequalities[0], u.registry));

    auto small = make_kp({2, 3}, {1, 2}, 2);
    auto enc = build_kp_qubo(small, Encoding::unbalanced, default_penalties(ProblemKind::kp));
    // brute force over the four assignments
    double best = -1;
    std::uint64_t best_state = 0;
    for (std::uint64_t st = 0; st < 4; ++st) {
        auto d = decode(bits_of(st, 2), enc);
        if (d.feasible && d.objective > best) {
            best = d.objective;
            best_state = st;
        }
    }
    CHECK(best == 3.0);
    CHECK(best_state == 2);  // x = (0, 1)
    CHECK(oracle_solve(small).optimum == 3.0);
    CHECK(oracle_solve(small).assignment.at("x[2]") == 1);

    auto d = decode(std::vector<Bit>{1, 1}, enc);
    CHECK_FALSE(d.feasible);
    CHECK(d.violation_report == std::vector<std::string>{"capacity"});

    auto loose = make_kp({1, 2, 3}, {1, 1, 1}, 3);
    auto loose_enc = build_kp_qubo(loose, Encoding::unbalanced, default_penalties(ProblemKind::kp));
    for (std::uint64_t st = 0; st < 8; ++st) CHECK(decode(bits_of(st, 3), loose_enc).feasible);

    CHECK_THROWS_AS(decode(std::vector<Bit>{1}, enc), DimensionError);
}

TEST_CASE("bin packing QUBO") {
    CHECK(make_bpp({4, 5, 6}).min_bins() == 1);
    CHECK(make_bpp({15, 15, 15}).min_bins() == 3);
    CHECK(oracle_solve(make_bpp({4, 5, 6})).optimum == 1.0);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (std::size_t n = 2; n <= 6; ++n) {
            auto b = std::get<BppInstance>(generate(ProblemKind::bpp, n, seed));
            auto cfg = default_penalties(ProblemKind::bpp);
            auto u = build_bpp_qubo(b, Encoding::unbalanced, cfg, true);
            auto s = build_bpp_qubo(b, Encoding::slack, cfg, true);
            CHECK(u.num_vars() == (n * n - n) + (b.m - b.min_bins()));
            CHECK(u.registry.num_slack() == 0);
            std::size_t expected_slack = 0;
            for (const auto& c : u.original.inequalities) expected_slack += slack_bit_count(c, u.registry);
            CHECK(s.registry.num_slack() == expected_slack);
            CHECK(s.num_vars() == u.num_vars() + expected_slack);

            auto full = build_bpp_qubo(b, Encoding::unbalanced, cfg, false);
            CHECK(full.num_vars() == n * n + n);
        }
    }

    auto two = make_bpp({15, 10, 4}, 20);
    auto enc = build_bpp_qubo(two, Encoding::unbalanced, default_penalties(ProblemKind::bpp), false);
    std::map<std::string, Bit> crowded{{"y[1]", 1}, {"x[1][1]", 1}, {"x[2][1]", 1}, {"y[2]", 1}, {"x[3][2]", 1}};
    auto d = decode(encode_assignment(enc, crowded), enc);
    CHECK_FALSE(d.feasible);
    CHECK(d.violation_report == std::vector<std::string>{"bin[1]"});
    CHECK(d.objective == 2.0);
}

TEST_CASE("oracles agree with exhaustive decoding") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        std::vector<ProblemInstance> instances{generate(ProblemKind::tsp, 4, seed), generate(ProblemKind::kp, 9, seed),
                                               generate(ProblemKind::bpp, 3, seed)};
        for (const auto& inst : instances) {
            const auto kind = kind_of(inst);
            auto enc = build_qubo(inst, Encoding::unbalanced, default_penalties(kind), false);
            const auto n = enc.num_vars();
            const bool maximize = enc.original.sense == ObjectiveSense::maximize;
            double best = maximize ? -1e300 : 1e300;
            for (std::uint64_t st = 0; st < (1ULL << n); ++st) {
                auto d = decode(bits_of(st, n), enc);
                if (d.feasible) best = maximize ? std::max(best, d.objective) : std::min(best, d.objective);
            }
            std::uint64_t count = 0;
            std::vector<Bit> lex_first;
            for (std::uint64_t st = 0; st < (1ULL << n); ++st) {
                auto d = decode(bits_of(st, n), enc);
                if (d.feasible && std::abs(d.objective - best) <= 1e-9) {
                    ++count;
                    auto bits = bits_of(st, n);
                    if (lex_first.empty() || bits < lex_first) lex_first = bits;
                }
            }
            auto oracle = oracle_solve(inst);
            CHECK(oracle.optimum == doctest::Approx(best).epsilon(1e-12));
            CHECK(oracle.optimal_count == count);
            auto x = encode_assignment(enc, oracle.assignment);
            auto d = decode(x, enc);
            CHECK(d.feasible);
            CHECK(d.objective == doctest::Approx(best).epsilon(1e-12));
            if (kind != ProblemKind::bpp) CHECK(x == lex_first);
        }
    }
}

TEST_CASE("slack encoding: feasible points have a zero-penalty completion") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        std::vector<ProblemInstance> instances{generate(ProblemKind::tsp, 3, seed), generate(ProblemKind::kp, 4, seed),
                                               make_bpp({12, 13}, 20, seed)};
        for (const auto& inst : instances) {
            auto enc = build_qubo(inst, Encoding::slack, default_penalties(kind_of(inst)), true);
            REQUIRE(enc.num_vars() <= 14);
            const double sign = enc.original.sense == ObjectiveSense::maximize ? -1.0 : 1.0;
            const auto n = enc.num_vars();
            SolutionClassifier classifier(enc);
            std::size_t feasible = 0;
            for (std::uint64_t st = 0; st < (1ULL << n); ++st) {
                auto x = bits_of(st, n);
                auto d = decode(x, enc);
                auto c = classifier.classify(x);
                CHECK(c.feasible == d.feasible);
                CHECK(c.objective == doctest::Approx(d.objective));
                if (!d.feasible) continue;
                ++feasible;
                auto completed = x;
                enc.registry.complete_slack(completed);
                CHECK(enc.registry.slack_is_canonical(completed));
                CHECK(enc.model.evaluate(completed) == doctest::Approx(sign * d.objective).epsilon(1e-9));
            }
            CHECK(feasible > 0);
        }
    }
}

TEST_CASE("feasibility does not depend on the encoding") {
    Rng rng(17);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (auto kind : {ProblemKind::tsp, ProblemKind::kp, ProblemKind::bpp}) {
            auto inst = generate(kind, kind == ProblemKind::kp ? 8 : 4, seed);
            auto u = build_qubo(inst, Encoding::unbalanced, default_penalties(kind));
            auto s = build_qubo(inst, Encoding::slack, default_penalties(kind));
            for (int k = 0; k < 500; ++k) {
                std::vector<Bit> xs(s.num_vars());
                for (auto& b : xs) b = static_cast<Bit>(rng.uniform_int(0, 1));
                std::vector<Bit> xu(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(u.num_vars()));
                auto du = decode(xu, u);
                auto ds = decode(xs, s);
                CHECK(du.feasible == ds.feasible);
                CHECK(du.violation_report == ds.violation_report);
                CHECK(du.objective == ds.objective);
                CHECK(decode(xu, u.registry, inst).feasible == du.feasible);
            }
        }
    }
}

TEST_CASE("oracle caps") {
    CHECK_THROWS_AS(oracle_solve(generate(ProblemKind::tsp, 11, 0)), CapabilityError);
    CHECK_THROWS_AS(oracle_solve(generate(ProblemKind::kp, 31, 0)), CapabilityError);
    CHECK_THROWS_AS(oracle_solve(generate(ProblemKind::bpp, 11, 0)), CapabilityError);
    CHECK_NOTHROW(oracle_solve(generate(ProblemKind::kp, 30, 0)));
}
