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

#include "uqubo/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "parallel.hpp"
#include "uqubo/error.hpp"
#include "uqubo/random.hpp"

namespace uqubo {

namespace {

// Walks restart from a direct evaluation at every multiple of this many
// positions, which bounds drift and makes results independent of the split.
constexpr std::uint64_t kResyncBlock = std::uint64_t{1} << 16;

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap || n > 62) {
        throw CapabilityError("exhaustive enumeration of " + std::to_string(n) + " variables exceeds the cap of " +
                              std::to_string(cap));
    }
}

template <class Fn>
void walk(const CompiledModel& model, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    GrayWalker walker(model);
    for (std::uint64_t t = begin; t < end; ++t) {
        if (t == begin || (t & (kResyncBlock - 1)) == 0) {
            walker.seek(t);
        } else {
            walker.step();
        }
        fn(walker.state(), walker.energy(), t);
    }
}

/// Bounded set of the lowest distinct energies; energies within the
/// tolerance share a level keyed by the smallest of them.
class LowestLevels {
 public:
    LowestLevels(std::size_t capacity, double tolerance) : capacity_(capacity), tolerance_(tolerance) {}

    bool admits(double e) const {
        if (capacity_ == 0) return false;
        return levels_.size() < capacity_ || e <= levels_.rbegin()->first + tolerance_;
    }

    void add(double e, std::uint64_t multiplicity, bool optimal, bool feasible) {
        if (!admits(e)) return;
        auto it = levels_.lower_bound(e - tolerance_);
        if (it != levels_.end() && it->first <= e + tolerance_) {
            if (e < it->first) {
                auto node = levels_.extract(it);
                node.key() = e;
                node.mapped().energy = e;
                it = levels_.insert(std::move(node)).position;
            }
            it->second.multiplicity += multiplicity;
            it->second.contains_optimal |= optimal;
            it->second.contains_feasible |= feasible;
            return;
        }
        levels_.emplace(e, EnergyLevel{e, multiplicity, 0, optimal, feasible});
        if (levels_.size() > capacity_) levels_.erase(std::prev(levels_.end()));
    }

    void merge(const LowestLevels& other) {
        for (const auto& [e, level] : other.levels_) {
            add(e, level.multiplicity, level.contains_optimal, level.contains_feasible);
        }
    }

    std::vector<EnergyLevel> finish() const {
        std::vector<EnergyLevel> out;
        std::uint64_t rank = 1;
        for (const auto& [e, level] : levels_) {
            out.push_back(level);
            out.back().rank_start = rank;
            rank += level.multiplicity;
        }
        return out;
    }

 private:
    std::size_t capacity_;
    double tolerance_;
    std::map<double, EnergyLevel> levels_;
};

struct FirstPass {
    explicit FirstPass(const SpectrumOptions& o) : levels(o.top_k, o.tolerance) {}

    double ground = std::numeric_limits<double>::infinity();
    double top = -std::numeric_limits<double>::infinity();
    double optimal = std::numeric_limits<double>::infinity();
    double spot_error = 0.0;
    LowestLevels levels;
};

}  // namespace

GrayWalker::GrayWalker(const CompiledModel& model) : model_(model), field_(model.num_vars, 0.0) {}

void GrayWalker::seek(std::uint64_t position) {
    position_ = position;
    state_ = position ^ (position >> 1);
    const auto& m = model_;
    energy_ = m.offset;
    for (std::size_t k = 0; k < m.num_vars; ++k) {
        double f = m.linear[k];
        for (std::size_t e = m.row_start[k]; e < m.row_start[k + 1]; ++e) {
            if (state_ >> m.neighbor[e] & 1) f += m.weight[e];
        }
        field_[k] = f;
    }
    for (std::size_t k = 0; k < m.num_vars; ++k) {
        if (!(state_ >> k & 1)) continue;
        energy_ += m.linear[k];
        for (std::size_t e = m.row_start[k]; e < m.row_start[k + 1]; ++e) {
            if (m.neighbor[e] > k && (state_ >> m.neighbor[e] & 1)) energy_ += m.weight[e];
        }
    }
}

void GrayWalker::step() {
    ++position_;
    const auto k = static_cast<std::size_t>(std::countr_zero(position_));
    const auto& m = model_;
    const bool rising = !(state_ >> k & 1);
    state_ ^= std::uint64_t{1} << k;
    if (rising) {
        energy_ += field_[k];
        for (std::size_t e = m.row_start[k]; e < m.row_start[k + 1]; ++e) field_[m.neighbor[e]] += m.weight[e];
    } else {
        energy_ -= field_[k];
        for (std::size_t e = m.row_start[k]; e < m.row_start[k + 1]; ++e) field_[m.neighbor[e]] -= m.weight[e];
    }
}

void enumerate_energies(const QuadraticBinaryModel& model,
                        const std::function<void(std::uint64_t, double)>& visitor, std::size_t max_vars) {
    check_cap(model.num_vars(), max_vars);
    const auto compiled = compile(model);
    walk(compiled, 0, std::uint64_t{1} << model.num_vars(),
         [&](std::uint64_t state, double energy, std::uint64_t) { visitor(state, energy); });
}

std::vector<double> all_energies(const QuadraticBinaryModel& model, std::size_t max_vars) {
    check_cap(model.num_vars(), max_vars);
    const auto compiled = compile(model);
    std::vector<double> energies(std::uint64_t{1} << model.num_vars());
    walk(compiled, 0, energies.size(),
         [&](std::uint64_t state, double energy, std::uint64_t) { energies[state] = energy; });
    return energies;
}

SpectrumSummary rank_optimal(const EncodedProblem& encoded, const OracleResult& oracle,
                             const SpectrumOptions& options) {
    const std::size_t n = encoded.num_vars();
    check_cap(n, options.max_vars);
    const auto compiled = compile(encoded.model);
    const SolutionClassifier classifier(encoded);
    const std::uint64_t total = std::uint64_t{1} << n;
    const double tol = options.tolerance;
    const double optimum = oracle.optimum;
    const double objective_tol = 1e-6 * std::max(1.0, std::abs(optimum));

    std::vector<std::uint64_t> spot_positions;
    if (options.spot_checks > 0) {
        Rng rng(options.spot_check_seed);
        for (std::size_t k = 0; k < options.spot_checks; ++k) {
            spot_positions.push_back(static_cast<std::uint64_t>(rng.uniform_int(0, static_cast<std::int64_t>(total - 1))));
        }
        std::sort(spot_positions.begin(), spot_positions.end());
    }

    std::vector<FirstPass> passes(std::max(1u, options.workers), FirstPass(options));
    detail::parallel_ranges(total, options.workers, kResyncBlock, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        FirstPass& p = passes[w];
        std::vector<Bit> x(n);
        auto spot = std::lower_bound(spot_positions.begin(), spot_positions.end(), begin);
        walk(compiled, begin, end, [&](std::uint64_t state, double e, std::uint64_t position) {
            p.ground = std::min(p.ground, e);
            p.top = std::max(p.top, e);
            while (spot != spot_positions.end() && *spot == position) {
                for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Bit>(state >> i & 1);
                p.spot_error = std::max(p.spot_error, std::abs(encoded.model.evaluate(x) - e));
                ++spot;
            }
            const bool for_levels = p.levels.admits(e);
            if (!for_levels && e >= p.optimal) return;
            for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Bit>(state >> i & 1);
            const auto c = classifier.classify(x);
            const bool is_opt = c.feasible && std::abs(c.objective - optimum) <= objective_tol;
            if (is_opt) p.optimal = std::min(p.optimal, e);
            if (for_levels) p.levels.add(e, 1, is_opt, c.feasible);
        });
    });

    FirstPass merged = std::move(passes.front());
    for (std::size_t w = 1; w < passes.size(); ++w) {
        merged.ground = std::min(merged.ground, passes[w].ground);
        merged.top = std::max(merged.top, passes[w].top);
        merged.optimal = std::min(merged.optimal, passes[w].optimal);
        merged.spot_error = std::max(merged.spot_error, passes[w].spot_error);
        merged.levels.merge(passes[w].levels);
    }

    SpectrumSummary s;
    s.num_states = total;
    s.num_vars = n;
    s.ground_energy = merged.ground;
    s.max_energy = merged.top;
    s.top_k = merged.levels.finish();
    s.spot_check_max_error = merged.spot_error;
    if (!std::isfinite(merged.optimal)) {
        s.encoding_failure = true;
        s.optimal_energy = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.optimal_energy = merged.optimal;

    std::vector<std::uint64_t> below(passes.size(), 0), multiplicity(passes.size(), 0);
    detail::parallel_ranges(total, options.workers, kResyncBlock, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        std::vector<Bit> x(n);
        walk(compiled, begin, end, [&](std::uint64_t state, double e, std::uint64_t) {
            if (e < s.optimal_energy - tol) {
                ++below[w];
            } else if (e <= s.optimal_energy + tol) {
                for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Bit>(state >> i & 1);
                if (classifier.is_optimal(x, optimum, objective_tol)) ++multiplicity[w];
            }
        });
    });
    for (std::size_t w = 0; w < passes.size(); ++w) {
        s.below_optimal += below[w];
        s.optimal_multiplicity += multiplicity[w];
    }
    s.optimal_rank = s.below_optimal + 1;
    return s;
}

std::vector<SubGroundState> infeasible_ground_report(const SpectrumSummary& summary, const EncodedProblem& encoded,
                                                     const SpectrumOptions& options, std::size_t limit) {
    std::vector<SubGroundState> out;
    if (summary.encoding_failure || summary.below_optimal == 0) return out;
    const double threshold = summary.optimal_energy - options.tolerance;
    std::vector<std::pair<double, std::uint64_t>> hits;
    enumerate_energies(
            encoded.model,
            [&](std::uint64_t state, double e) {
                if (e < threshold) hits.emplace_back(e, state);
            },
            options.max_vars);
    std::sort(hits.begin(), hits.end());
    if (limit > 0 && hits.size() > limit) hits.resize(limit);
    out.reserve(hits.size());
    for (const auto& [e, state] : hits) {
        out.push_back({state, e, decode(bits_of(state, encoded.num_vars()), encoded)});
    }
    return out;
}

std::vector<std::uint64_t> optimal_states(const EncodedProblem& encoded, const OracleResult& oracle,
                                          const SpectrumOptions& options) {
    const std::size_t n = encoded.num_vars();
    check_cap(n, options.max_vars);
    const SolutionClassifier classifier(encoded);
    const double objective_tol = 1e-6 * std::max(1.0, std::abs(oracle.optimum));
    const bool has_slack = !encoded.registry.slack_groups().empty();
    std::vector<std::uint64_t> states;
    std::vector<Bit> x(n);
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Bit>(state >> i & 1);
        if (!classifier.is_optimal(x, oracle.optimum, objective_tol)) continue;
        if (has_slack && !encoded.registry.slack_is_canonical(x)) continue;
        states.push_back(state);
    }
    return states;
}

}  // namespace uqubo
