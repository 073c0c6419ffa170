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

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: uqubo_acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "uqubo/error.hpp"
#include "uqubo/qaoa.hpp"
#include "uqubo/random.hpp"
#include "uqubo/sampler.hpp"
#include "uqubo/spectrum.hpp"

using namespace uqubo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1 ------------------------------------------------------------------------

Outcome qubit_counts(Encoding encoding, const std::vector<std::size_t>& expected) {
    std::string got;
    bool ok = true;
    for (std::size_t n = 2; n <= 7; ++n) {
        auto enc = build_qubo(generate(ProblemKind::tsp, n, n), encoding, default_penalties(ProblemKind::tsp));
        got += (n > 2 ? "," : "") + std::to_string(enc.num_vars());
        ok &= enc.num_vars() == expected[n - 2];
    }
    return {ok, "counts " + got};
}

Outcome c1() { return qubit_counts(Encoding::slack, {2, 7, 17, 36, 73, 148}); }
Outcome c2() { return qubit_counts(Encoding::unbalanced, {2, 6, 12, 20, 30, 42}); }

// 3-5 ----------------------------------------------------------------------

struct RankStats {
    int within = 0;
    int total = 0;
    bool all_degenerate = true;
    std::string ranks;
};

RankStats rank_instances(const std::vector<ProblemInstance>& instances, std::uint64_t limit) {
    RankStats st;
    for (const auto& inst : instances) {
        const auto kind = kind_of(inst);
        auto enc = build_qubo(inst, Encoding::unbalanced, default_penalties(kind));
        auto s = rank_optimal(enc, oracle_solve(inst));
        ++st.total;
        st.within += !s.encoding_failure && s.optimal_rank <= limit;
        st.all_degenerate &= s.optimal_multiplicity >= 2;
        st.ranks += (st.ranks.empty() ? "" : ",") + std::to_string(s.optimal_rank);
    }
    return st;
}

Outcome c3() {
    std::vector<ProblemInstance> inst;
    for (std::uint64_t s = 0; s < 10; ++s) inst.push_back(generate(ProblemKind::tsp, 5, s));
    auto st = rank_instances(inst, 50);
    return {st.within >= 9 && st.all_degenerate,
            fmt("rank<=50 in %d/10, multiplicity>=2 in all: %s; ranks %s", st.within,
                st.all_degenerate ? "yes" : "no", st.ranks.c_str())};
}

Outcome c4() {
    std::vector<ProblemInstance> inst;
    for (std::uint64_t s = 0; inst.size() < 10; ++s) {
        auto i = generate(ProblemKind::bpp, 5, s);
        if (oracle_solve(i).optimum >= 3) inst.push_back(i);
    }
    auto st = rank_instances(inst, 100);
    return {st.within >= 9, fmt("rank<=100 in %d/10; ranks %s", st.within, st.ranks.c_str())};
}

Outcome c5() {
    std::vector<ProblemInstance> inst;
    for (std::uint64_t s = 0; s < 10; ++s) inst.push_back(generate(ProblemKind::kp, 21, s));
    auto st = rank_instances(inst, 100);
    return {st.within >= 9, fmt("rank<=100 in %d/10; ranks %s", st.within, st.ranks.c_str())};
}

// 6 ------------------------------------------------------------------------

Outcome c6() {
    int exact = 0, cases = 0;
    std::string detail;
    auto check = [&](const ProblemInstance& inst, double range) {
        const PenaltyConfig big{range + 1, range + 1, 1.0};
        auto enc = build_qubo(inst, Encoding::slack, big);
        if (enc.num_vars() > 14) throw std::logic_error("instance above 14 qubits");
        auto s = rank_optimal(enc, oracle_solve(inst));
        ++cases;
        exact += s.optimal_rank == 1 && s.optimal_energy == s.ground_energy;
        detail += (detail.empty() ? "" : ",") + std::string(to_string(kind_of(inst))) + ":" +
                  std::to_string(enc.num_vars()) + "q/r" + std::to_string(s.optimal_rank);
    };
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto t = std::get<TspInstance>(generate(ProblemKind::tsp, 3, s));
        double range = 0;
        for (double d : t.dist) range += d;
        check(t, range);
    }
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto k = std::get<KpInstance>(generate(ProblemKind::kp, 5, s));
        double range = 0;
        for (auto v : k.values) range += double(v);
        check(k, range);
    }
    return {exact == 10 && cases == 10, fmt("rank 1 in %d/%d; %s", exact, cases, detail.c_str())};
}

// 7 ------------------------------------------------------------------------

Outcome c7() {
    IsingModel z(1);
    z.add_field(0, 1.0);
    double worst = 0.0;
    for (auto method : {ScanMethod::statevector, ScanMethod::closed_form}) {
        auto g = scan_landscape(z, {1}, {.method = method});
        for (std::size_t i = 0; i < g.gamma_axis.size(); ++i) {
            for (std::size_t j = 0; j < g.beta_axis.size(); ++j) {
                const double expect = -std::sin(2 * g.gamma_axis[i]) * std::sin(2 * g.beta_axis[j]);
                worst = std::max(worst, std::abs(g.energy[g.index(i, j)] - expect));
            }
        }
    }
    double norm_err = 0.0;
    Rng rng(7);
    for (std::size_t n : {2, 5, 8, 11, 14, 17, 20}) {
        QuadraticBinaryModel m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.add_linear(i, rng.uniform_real(-3, 3));
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.uniform() < 0.4) m.add_quadratic(i, j, rng.uniform_real(-3, 3));
            }
        }
        const auto ising = to_ising(m);
        for (std::size_t p = 1; p <= 4; ++p) {
            QaoaParams params;
            for (std::size_t k = 0; k < p; ++k) {
                params.gammas.push_back(rng.uniform_real(-1, 1));
                params.betas.push_back(rng.uniform_real(-1, 1));
            }
            double total = 0.0;
            for (const auto& a : qaoa_state(ising, params)) total += std::norm(a);
            norm_err = std::max(norm_err, std::abs(total - 1.0));
        }
    }
    return {worst <= 1e-9 && norm_err <= 1e-9,
            fmt("max |E - closed form| = %.2e over 2x2500 points; max normalization error %.2e (n<=20, p<=4)", worst,
                norm_err)};
}

// 8 ------------------------------------------------------------------------

double p_at_min(const ProblemInstance& inst, Encoding encoding) {
    auto enc = build_qubo(inst, encoding, default_penalties(kind_of(inst)));
    return cop_at_minimum(enc, oracle_solve(inst)).p_opt;
}

Outcome c8() {
    int tsp_wins = 0, bpp_wins = 0;
    double tsp_u = 0, tsp_s = 0, min_ratio = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto t = generate(ProblemKind::tsp, 4, s);
        const double u = p_at_min(t, Encoding::unbalanced), sl = p_at_min(t, Encoding::slack);
        tsp_wins += u > sl;
        tsp_u += u / 10;
        tsp_s += sl / 10;
        auto b = generate(ProblemKind::bpp, 3, s);
        const double ratio = p_at_min(b, Encoding::unbalanced) / p_at_min(b, Encoding::slack);
        bpp_wins += ratio > 100;
        min_ratio = std::min(min_ratio, ratio);
    }
    return {tsp_wins >= 8 && bpp_wins >= 8,
            fmt("TSP unbalanced>slack in %d/10 (mean p %.4f vs %.5f); BPP ratio>100 in %d/10 (min ratio %.0f)",
                tsp_wins, tsp_u, tsp_s, bpp_wins, min_ratio)};
}

// 9 ------------------------------------------------------------------------

Outcome c9() {
    bool ok = true;
    std::string detail;
    for (auto kind : {ProblemKind::tsp, ProblemKind::bpp}) {
        double prev = 1.0;
        detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(kind)) + " CoP";
        for (std::size_t n = 2; n <= 5; ++n) {
            double mean = 0.0;
            for (std::uint64_t s = 0; s < 5; ++s) {
                auto inst = generate(kind, n, s);
                auto enc = build_qubo(inst, Encoding::unbalanced, default_penalties(kind));
                mean += cop_at_minimum(enc, oracle_solve(inst)).cop / 5;
            }
            ok &= mean > 1.0 && mean >= prev;
            prev = mean;
            detail += fmt(" %zu:%.3g", n, mean);
        }
    }
    return {ok, detail};
}

// 10 -----------------------------------------------------------------------

Outcome c10() {
    const std::vector<std::size_t> sizes{3, 4, 5, 6, 7, 8};
    const SimulatedAnnealingSampler sa;
    const SuccessOptions opt{.num_reads = 5000, .simplify = false};
    const auto cfg = default_penalties(ProblemKind::bpp);
    auto slack = run_success_experiment(ProblemKind::bpp, sizes, 20, Encoding::slack, cfg, sa, 2024, opt);
    auto unb = run_success_experiment(ProblemKind::bpp, sizes, 20, Encoding::unbalanced, cfg, sa, 2024, opt);
    int valid_wins = 0;
    bool optimal_cover = true;
    std::string detail;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        valid_wins += unb[k].p_valid >= slack[k].p_valid;
        auto any_opt = [](const SuccessReport& r) {
            for (const auto& i : r.instances) {
                if (i.p_optimal > 0) return true;
            }
            return false;
        };
        if (any_opt(slack[k]) && !any_opt(unb[k])) optimal_cover = false;
        detail += fmt(" %zu:%.4f/%.4f", sizes[k], unb[k].p_valid, slack[k].p_valid);
    }
    return {valid_wins >= 5 && optimal_cover,
            fmt("unbalanced>=slack p_valid in %d/6 sizes, optimal coverage %s; p_valid unb/slack", valid_wins,
                optimal_cover ? "yes" : "no") +
                    detail};
}

// 11 -----------------------------------------------------------------------

QuadraticBinaryModel random_qubo(Rng& rng, std::size_t n) {
    QuadraticBinaryModel m(n, rng.uniform_real(-5, 5));
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform() < 0.8) m.add_linear(i, rng.uniform_real(-5, 5));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform() < 0.5) m.add_quadratic(i, j, rng.uniform_real(-5, 5));
        }
    }
    return m;
}

double direct_energy(const QuadraticBinaryModel& m, std::uint64_t s) {
    double e = m.offset();
    for (const auto& [i, a] : m.linear()) e += (s >> i & 1) ? a : 0.0;
    for (const auto& [ij, q] : m.quadratic()) e += ((s >> ij.first & 1) && (s >> ij.second & 1)) ? q : 0.0;
    return e;
}

Outcome c11() {
    Rng rng(11);
    std::size_t failures = 0;
    std::size_t checks[6] = {};

    // QUBO <-> Ising round trip
    for (int c = 0; c < 10000; ++c) {
        const std::size_t n = 1 + rng.uniform_int(0, 5);
        auto m = random_qubo(rng, n);
        auto ising = to_ising(m);
        auto back = to_qubo(ising);
        const auto s = static_cast<std::uint64_t>(rng.uniform_int(0, (1 << n) - 1));
        const auto x = bits_of(s, n);
        const double e = direct_energy(m, s);
        failures += std::abs(ising.energy_of_bits(x) - e) > 1e-9 || std::abs(back.evaluate(x) - e) > 1e-9;
        ++checks[0];
    }
    // Gray code vs direct, exhaustive per model
    for (int c = 0; c < 30; ++c) {
        const std::size_t n = 4 + c % 11;
        auto m = random_qubo(rng, n);
        enumerate_energies(m, [&](std::uint64_t s, double e) {
            failures += std::abs(e - direct_energy(m, s)) > 1e-9;
            ++checks[1];
        });
    }
    // fix_variable equivalence
    for (int c = 0; c < 10000; ++c) {
        const std::size_t n = 2 + rng.uniform_int(0, 5);
        auto m = random_qubo(rng, n);
        VariableRegistry reg;
        for (std::size_t i = 0; i < n; ++i) reg.add("v" + std::to_string(i));
        const auto k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        const Bit value = rng.uniform() < 0.5;
        auto reduced = fix_variable(m, reg, "v" + std::to_string(k), value);
        const auto s = static_cast<std::uint64_t>(rng.uniform_int(0, (1 << (n - 1)) - 1));
        std::uint64_t full = 0;
        for (std::size_t i = 0, r = 0; i < n; ++i) {
            const bool bit = i == k ? value : (s >> r++ & 1);
            full |= std::uint64_t{bit} << i;
        }
        failures += std::abs(reduced.model.evaluate(bits_of(s, n - 1)) - direct_energy(m, full)) > 1e-9;
        ++checks[2];
    }
    // unbalance identity zeta(-h) - zeta(h) = 2 lambda1 h
    for (int c = 0; c < 10000; ++c) {
        const double h = static_cast<double>(rng.uniform_int(-50, 50));
        const double l1 = rng.uniform_real(0.01, 10), l2 = rng.uniform_real(0.01, 10);
        const double lhs = unbalanced_penalty(-h, l1, l2) - unbalanced_penalty(h, l1, l2);
        failures += std::abs(lhs - 2 * l1 * h) > 1e-9 * std::max(1.0, std::abs(2 * l1 * h));
        ++checks[3];
    }
    // penalty nonnegativity: equality and slack penalties never go below zero
    for (int c = 0; c < 10000; ++c) {
        const std::size_t n = 1 + rng.uniform_int(0, 4);
        VariableRegistry reg;
        LinearForm form;
        for (std::size_t i = 0; i < n; ++i) {
            form.push_back({"x" + std::to_string(i), rng.uniform_int(-5, 7)});
            reg.add(form.back().label);
        }
        const double lambda = rng.uniform_real(0.1, 10);
        if (c % 2 == 0) {
            auto m = add_equality_penalty(QuadraticBinaryModel(n), reg, form, rng.uniform_int(-3, 8), lambda);
            const auto s = static_cast<std::uint64_t>(rng.uniform_int(0, (1 << n) - 1));
            failures += m.evaluate(bits_of(s, n)) < -1e-9;
        } else {
            InequalityConstraint con{"c", form, rng.uniform_int(0, 12), Sense::le};
            if (max_margin(con, reg) < 0) {
                ++checks[4];
                continue;
            }
            auto enc = encode_slack(QuadraticBinaryModel(n), reg, con, lambda);
            const std::size_t total = enc.model.num_vars();
            const auto s = static_cast<std::uint64_t>(rng.uniform_int(0, (std::int64_t{1} << total) - 1));
            failures += enc.model.evaluate(bits_of(s, total)) < -1e-9;
        }
        ++checks[4];
    }
    // sampler determinism
    for (int c = 0; c < 10000; ++c) {
        const std::size_t n = 1 + rng.uniform_int(0, 5);
        const auto ising = to_ising(random_qubo(rng, n));
        const AnnealSchedule sched{.num_sweeps = 1 + static_cast<std::size_t>(rng.uniform_int(0, 9))};
        const auto seed = static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30));
        auto a = anneal(ising, sched, 3, seed);
        auto b = anneal(ising, sched, 3, seed);
        bool same = a.records.size() == b.records.size();
        for (std::size_t k = 0; same && k < a.records.size(); ++k) {
            same = a.records[k].bits == b.records[k].bits && a.records[k].count == b.records[k].count &&
                   a.records[k].energy == b.records[k].energy &&
                   a.records[k].energy == ising.energy_of_bits(a.records[k].bits);
        }
        failures += !same;
        ++checks[5];
    }
    return {failures == 0,
            fmt("%zu failures; round-trip %zu, gray %zu states, fix %zu, zeta %zu, penalty %zu, sampler %zu", failures,
                checks[0], checks[1], checks[2], checks[3], checks[4], checks[5])};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
            {1, "TSP slack qubit counts 2,7,17,36,73,148", 1, c1},
            {2, "TSP unbalanced qubit counts 2,6,12,20,30,42", 1, c2},
            {3, "TSP 5-city spectrum rank", 300, c3},
            {4, "BPP 5-item spectrum rank", 600, c4},
            {5, "KP 21-item spectrum rank with 13-item weights", 600, c5},
            {6, "slack encoding with dominating weights puts the optimum at rank 1", 60, c6},
            {7, "QAOA closed form and normalization", 60, c7},
            {8, "QAOA encoding comparison at the landscape minimum", 1800, c8},
            {9, "CoP above 1 and non-decreasing in size", 3600, c9},
            {10, "annealing success rates, unbalanced vs slack", 1800, c10},
            {11, "property suites", 300, c11},
    };
    std::set<int> selected;
    for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

    int failed = 0;
    for (const auto& c : all) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %2d %s: %s (%.1fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs, c.budget_seconds, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
