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

#include "uqubo/tuner.hpp"

#include <algorithm>
#include <numeric>

#include "uqubo/error.hpp"

namespace uqubo {

namespace {

using Point = std::vector<double>;

Point affine(const Point& a, const Point& b, double t) {  // a + t (b - a)
    Point out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * (b[k] - a[k]);
    return out;
}

bool has_equalities(const ProblemInstance& instance) { return kind_of(instance) != ProblemKind::kp; }

/// The weights an encoding of this instance actually reads.
std::vector<double> used_weights(const PenaltyConfig& c, const ProblemInstance& instance, Encoding encoding) {
    std::vector<double> used;
    if (has_equalities(instance)) used.push_back(c.lambda0);
    used.push_back(c.lambda1);
    if (encoding == Encoding::unbalanced) used.push_back(c.lambda2);
    return used;
}

}  // namespace

void NelderMeadOptions::validate() const {
    if (!(alpha > 0.0) || !(gamma > 1.0) || !(rho > 0.0 && rho < 1.0) || !(sigma > 0.0 && sigma < 1.0)) {
        throw ParameterError("Nelder-Mead needs alpha > 0, gamma > 1, 0 < rho < 1 and 0 < sigma < 1");
    }
}

NelderMeadResult nelder_mead(const std::function<double(const Point&)>& f, Point x0, const NelderMeadOptions& options,
                             const NelderMeadObserver& observer) {
    options.validate();
    const std::size_t dim = x0.size();
    if (dim == 0) throw ParameterError("Nelder-Mead needs at least one coordinate");

    NelderMeadResult result;
    auto eval = [&](const Point& x) {
        ++result.evaluations;
        return f(x);
    };

    std::vector<Point> simplex{x0};
    for (std::size_t k = 0; k < dim; ++k) {
        Point v = x0;
        v[k] = v[k] != 0.0 ? v[k] * 1.05 : 0.1;
        simplex.push_back(std::move(v));
    }
    std::vector<double> values;
    for (const auto& v : simplex) values.push_back(eval(v));

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Point> s;
        std::vector<double> v;
        for (auto i : order) {
            s.push_back(std::move(simplex[i]));
            v.push_back(values[i]);
        }
        simplex = std::move(s);
        values = std::move(v);
    };

    sort_simplex();
    if (observer) observer(0, simplex.front(), values.front());
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        if (values.back() - values.front() <= options.tolerance) {
            result.converged = true;
            break;
        }
        Point centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v) {
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[v][k] / static_cast<double>(dim);
        }
        const Point& worst = simplex.back();
        const Point reflected = affine(centroid, worst, -options.alpha);
        const double fr = eval(reflected);
        if (fr < values.front()) {
            const Point expanded = affine(centroid, worst, -options.alpha * options.gamma);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex.back() = expanded;
                values.back() = fe;
            } else {
                simplex.back() = reflected;
                values.back() = fr;
            }
        } else if (fr < values[dim - 1]) {
            simplex.back() = reflected;
            values.back() = fr;
        } else {
            // outside contraction when the reflection beat the worst vertex, inside otherwise
            const bool outside = fr < values.back();
            const Point contracted = outside ? affine(centroid, reflected, options.rho) : affine(centroid, worst, options.rho);
            const double fc = eval(contracted);
            if (fc < (outside ? fr : values.back())) {
                simplex.back() = contracted;
                values.back() = fc;
            } else {
                for (std::size_t v = 1; v <= dim; ++v) {
                    simplex[v] = affine(simplex.front(), simplex[v], options.sigma);
                    values[v] = eval(simplex[v]);
                }
            }
        }
        sort_simplex();
        result.iterations = it;
        if (observer) observer(it, simplex.front(), values.front());
    }
    if (!result.converged && values.back() - values.front() <= options.tolerance) result.converged = true;
    result.x = simplex.front();
    result.value = values.front();
    return result;
}

double rank_objective(const PenaltyConfig& config, const ProblemInstance& instance, Encoding encoding,
                      const SpectrumOptions& options) {
    const auto used = used_weights(config, instance, encoding);
    if (std::any_of(used.begin(), used.end(), [](double l) { return !(l > 0.0); })) {
        double penalty = kBarrier;
        for (double l : used) penalty += std::max(0.0, -l);
        return penalty;
    }
    const auto encoded = build_qubo(instance, encoding, config);
    const auto s = rank_optimal(encoded, oracle_solve(instance), options);
    if (s.encoding_failure) return kBarrier;
    const double span = s.max_energy - s.ground_energy;
    const double gap = span > 0.0 ? (s.optimal_energy - s.ground_energy) / span : 0.0;
    return static_cast<double>(s.below_optimal) + std::clamp(gap, 0.0, 1.0);
}

TuneResult tune(const TuneConfig& config) {
    if (config.training_instances.empty()) throw ParameterError("tuning needs at least one training instance");
    const auto& instances = config.training_instances;
    const bool freeze_lambda0 = std::none_of(instances.begin(), instances.end(), has_equalities);
    const bool freeze_lambda2 = config.encoding == Encoding::slack;

    auto to_config = [&](const Point& x) {
        PenaltyConfig c = config.initial;
        std::size_t k = 0;
        if (!freeze_lambda0) c.lambda0 = x[k++];
        c.lambda1 = x[k++];
        if (!freeze_lambda2) c.lambda2 = x[k];
        return c;
    };
    auto objective = [&](const Point& x) {
        const auto c = to_config(x);
        double sum = 0.0;
        for (const auto& inst : instances) sum += rank_objective(c, inst, config.encoding, config.spectrum);
        return sum / static_cast<double>(instances.size());
    };

    Point x0;
    if (!freeze_lambda0) x0.push_back(config.initial.lambda0);
    x0.push_back(config.initial.lambda1);
    if (!freeze_lambda2) x0.push_back(config.initial.lambda2);

    TuneResult result;
    result.initial_objective = objective(x0);
    auto nm = nelder_mead(objective, x0, config.simplex, [&](std::size_t it, const Point& best, double value) {
        result.trace.push_back({it, to_config(best), value});
    });
    result.best = to_config(nm.x);
    result.objective = nm.value;
    result.converged = nm.converged;
    return result;
}

TuneResult tune(const TuneConfig& config, const ProblemInstance& instance) {
    TuneConfig single = config;
    single.training_instances = {instance};
    return tune(single);
}

}  // namespace uqubo
