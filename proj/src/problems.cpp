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

#include "uqubo/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <type_traits>

#include "uqubo/error.hpp"
#include "uqubo/random.hpp"

namespace uqubo {

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::tsp:
            return "tsp";
        case ProblemKind::kp:
            return "kp";
        case ProblemKind::bpp:
            return "bpp";
    }
    return "?";
}

ProblemKind parse_problem_kind(std::string_view text) {
    if (text == "tsp") return ProblemKind::tsp;
    if (text == "kp") return ProblemKind::kp;
    if (text == "bpp") return ProblemKind::bpp;
    throw ParameterError("unknown problem kind '" + std::string(text) + "' (expected tsp, kp or bpp)");
}

std::size_t BppInstance::min_bins() const {
    const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
    return static_cast<std::size_t>((total + bin_capacity - 1) / bin_capacity);
}

ProblemKind kind_of(const ProblemInstance& instance) {
    return static_cast<ProblemKind>(instance.index());
}

std::size_t size_of(const ProblemInstance& instance) {
    return std::visit([](const auto& p) { return p.n; }, instance);
}

std::uint64_t seed_of(const ProblemInstance& instance) {
    return std::visit([](const auto& p) { return p.seed; }, instance);
}

std::string tsp_label(std::size_t i, std::size_t j) {
    return "x[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}
std::string kp_label(std::size_t i) { return "x[" + std::to_string(i) + "]"; }
std::string bpp_item_label(std::size_t item, std::size_t bin) { return tsp_label(item, bin); }
std::string bpp_bin_label(std::size_t bin) { return "y[" + std::to_string(bin) + "]"; }

TspInstance make_tsp(std::vector<std::array<double, 2>> coords, std::uint64_t seed) {
    TspInstance t;
    t.n = coords.size();
    t.coords = std::move(coords);
    t.seed = seed;
    t.dist.assign(t.n * t.n, 0.0);
    for (std::size_t i = 0; i < t.n; ++i) {
        for (std::size_t j = 0; j < t.n; ++j) {
            if (i != j) {
                t.dist[i * t.n + j] = std::hypot(t.coords[i][0] - t.coords[j][0], t.coords[i][1] - t.coords[j][1]);
            }
        }
    }
    return t;
}

KpInstance make_kp(std::vector<std::int64_t> values, std::vector<std::int64_t> weights, std::int64_t capacity,
                   std::uint64_t seed) {
    if (values.size() != weights.size()) throw DimensionError("knapsack values and weights differ in length");
    KpInstance k;
    k.n = values.size();
    k.values = std::move(values);
    k.weights = std::move(weights);
    k.capacity = capacity;
    k.seed = seed;
    return k;
}

BppInstance make_bpp(std::vector<std::int64_t> weights, std::int64_t bin_capacity, std::uint64_t seed) {
    BppInstance b;
    b.n = weights.size();
    b.m = b.n;
    b.weights = std::move(weights);
    b.bin_capacity = bin_capacity;
    b.seed = seed;
    return b;
}

ProblemInstance generate(ProblemKind kind, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ParameterError("problem size must be at least 2");
    Rng rng(seed);
    switch (kind) {
        case ProblemKind::tsp: {
            std::vector<std::array<double, 2>> coords(n);
            for (auto& c : coords) {
                c[0] = rng.uniform_real(0.0, 50.0);
                c[1] = rng.uniform_real(0.0, 50.0);
            }
            return make_tsp(std::move(coords), seed);
        }
        case ProblemKind::kp: {
            std::vector<std::int64_t> values(n), weights(n);
            for (std::size_t i = 0; i < n; ++i) {
                values[i] = rng.uniform_int(1, 63);
                weights[i] = rng.uniform_int(1, 127);
            }
            const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
            return make_kp(std::move(values), std::move(weights), total * 7 / 10, seed);
        }
        case ProblemKind::bpp: {
            std::vector<std::int64_t> weights(n);
            for (auto& w : weights) w = rng.uniform_int(4, 20);
            return make_bpp(std::move(weights), 20, seed);
        }
    }
    throw ParameterError("unknown problem kind");
}

PenaltyConfig default_penalties(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::tsp:
            return {38.2584, 18.2838, 57.0375};
        case ProblemKind::bpp:
            return {20.5198, 7.2949, 0.8583};
        case ProblemKind::kp:
            return {0.0, 0.9603, 0.0371};
    }
    return {};
}

std::uint64_t subtour_family_size(std::size_t n) {
    if (n < 3) return 0;
    return (std::uint64_t{1} << (n - 1)) - n;
}

namespace {

ResolvedForm resolve_real(const VariableRegistry& registry, const std::vector<std::pair<std::string, double>>& form) {
    std::map<Index, double> merged;
    ResolvedForm out;
    for (const auto& [label, c] : form) {
        if (auto v = registry.fixed_value(label)) {
            out.constant += c * *v;
        } else {
            merged[registry.index_of(label)] += c;
        }
    }
    for (const auto& [i, a] : merged) {
        if (a != 0.0) out.terms.emplace_back(i, a);
    }
    return out;
}

OriginalProblem tsp_program(const TspInstance& t) {
    const std::size_t n = t.n;
    OriginalProblem p;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (i != j) p.objective.emplace_back(tsp_label(i, j), t.distance(i - 1, j - 1));
        }
    }
    for (std::size_t j = 1; j <= n; ++j) {
        EqualityConstraint c{"in[" + std::to_string(j) + "]", {}, 1};
        for (std::size_t i = 1; i <= n; ++i) {
            if (i != j) c.coeffs.push_back({tsp_label(i, j), 1});
        }
        p.equalities.push_back(std::move(c));
    }
    for (std::size_t i = 1; i <= n; ++i) {
        EqualityConstraint c{"out[" + std::to_string(i) + "]", {}, 1};
        for (std::size_t j = 1; j <= n; ++j) {
            if (i != j) c.coeffs.push_back({tsp_label(i, j), 1});
        }
        p.equalities.push_back(std::move(c));
    }
    // Q ranges over subsets of cities {2..n} with 2 <= |Q| <= n-1; bit k of
    // the mask selects city k+2.
    if (n >= 3) {
        const std::uint64_t masks = std::uint64_t{1} << (n - 1);
        for (std::uint64_t mask = 1; mask < masks; ++mask) {
            const auto size = static_cast<std::size_t>(std::popcount(mask));
            if (size < 2) continue;
            std::vector<std::size_t> cities;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                if (mask >> k & 1) cities.push_back(k + 2);
            }
            std::string name = "subtour{";
            for (std::size_t k = 0; k < cities.size(); ++k) name += (k ? "," : "") + std::to_string(cities[k]);
            name += "}";
            InequalityConstraint c{std::move(name), {}, static_cast<std::int64_t>(size) - 1, Sense::le};
            for (auto i : cities) {
                for (auto j : cities) {
                    if (i != j) c.coeffs.push_back({tsp_label(i, j), 1});
                }
            }
            p.inequalities.push_back(std::move(c));
        }
    }
    return p;
}

OriginalProblem kp_program(const KpInstance& k) {
    OriginalProblem p;
    p.sense = ObjectiveSense::maximize;
    InequalityConstraint cap{"capacity", {}, k.capacity, Sense::le};
    for (std::size_t i = 1; i <= k.n; ++i) {
        p.objective.emplace_back(kp_label(i), static_cast<double>(k.values[i - 1]));
        cap.coeffs.push_back({kp_label(i), k.weights[i - 1]});
    }
    p.inequalities.push_back(std::move(cap));
    return p;
}

OriginalProblem bpp_program(const BppInstance& b) {
    OriginalProblem p;
    for (std::size_t j = 1; j <= b.m; ++j) p.objective.emplace_back(bpp_bin_label(j), 1.0);
    for (std::size_t i = 1; i <= b.n; ++i) {
        EqualityConstraint c{"assign[" + std::to_string(i) + "]", {}, 1};
        for (std::size_t j = 1; j <= b.m; ++j) c.coeffs.push_back({bpp_item_label(i, j), 1});
        p.equalities.push_back(std::move(c));
    }
    for (std::size_t j = 1; j <= b.m; ++j) {
        InequalityConstraint c{"bin[" + std::to_string(j) + "]", {}, 0, Sense::le};
        for (std::size_t i = 1; i <= b.n; ++i) c.coeffs.push_back({bpp_item_label(i, j), b.weights[i - 1]});
        c.coeffs.push_back({bpp_bin_label(j), -b.bin_capacity});
        p.inequalities.push_back(std::move(c));
    }
    return p;
}

OriginalProblem original_program(const ProblemInstance& instance) {
    return std::visit(
            [](const auto& p) -> OriginalProblem {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, TspInstance>) return tsp_program(p);
                else if constexpr (std::is_same_v<T, KpInstance>) return kp_program(p);
                else return bpp_program(p);
            },
            instance);
}

void check_config(Encoding encoding, const PenaltyConfig& config, bool uses_lambda0) {
    if (uses_lambda0 && !(config.lambda0 >= 0.0)) throw ParameterError("lambda0 must be >= 0");
    if (encoding == Encoding::unbalanced) {
        if (!(config.lambda1 > 0.0) || !(config.lambda2 > 0.0)) {
            throw ParameterError("unbalanced encoding needs lambda1 > 0 and lambda2 > 0");
        }
    } else if (!(config.lambda1 >= 0.0)) {
        throw ParameterError("lambda1 must be >= 0");
    }
}

/// Objective, equality penalties, then one penalty per inequality.
void compile_program(EncodedProblem& e) {
    const auto& program = e.original;
    e.model = QuadraticBinaryModel(e.registry.num_vars());
    const double sign = program.sense == ObjectiveSense::maximize ? -1.0 : 1.0;
    add_weighted_linear(e.model, resolve_real(e.registry, program.objective), sign);
    for (const auto& c : program.equalities) {
        e.model = add_equality_penalty(std::move(e.model), e.registry, c.coeffs, c.target, e.config.lambda0);
    }
    for (const auto& c : program.inequalities) {
        if (e.encoding == Encoding::slack) {
            auto encoded = encode_slack(std::move(e.model), std::move(e.registry), c, e.config.lambda1);
            e.model = std::move(encoded.model);
            e.registry = std::move(encoded.registry);
        } else {
            e.model = encode_unbalanced(std::move(e.model), e.registry, c, e.config.lambda1, e.config.lambda2);
        }
    }
}

}  // namespace

EncodedProblem build_tsp_qubo(const TspInstance& instance, Encoding encoding, const PenaltyConfig& config) {
    if (instance.n < 2) throw ParameterError("TSP needs at least 2 cities");
    check_config(encoding, config, true);
    EncodedProblem e{instance, encoding, config, false, tsp_program(instance), {}, {}};
    for (std::size_t i = 1; i <= instance.n; ++i) {
        for (std::size_t j = 1; j <= instance.n; ++j) {
            if (i != j) e.registry.add(tsp_label(i, j));
        }
    }
    compile_program(e);
    return e;
}

EncodedProblem build_kp_qubo(const KpInstance& instance, Encoding encoding, const PenaltyConfig& config) {
    check_config(encoding, config, false);
    EncodedProblem e{instance, encoding, config, false, kp_program(instance), {}, {}};
    for (std::size_t i = 1; i <= instance.n; ++i) e.registry.add(kp_label(i));
    compile_program(e);
    return e;
}

EncodedProblem build_bpp_qubo(const BppInstance& instance, Encoding encoding, const PenaltyConfig& config,
                              bool apply_simplifications) {
    check_config(encoding, config, true);
    EncodedProblem e{instance, encoding, config, apply_simplifications, bpp_program(instance), {}, {}};
    const std::size_t open = apply_simplifications ? std::min(instance.min_bins(), instance.m) : 0;
    for (std::size_t j = 1; j <= instance.m; ++j) {
        if (j <= open) {
            e.registry.add_fixed(bpp_bin_label(j), 1);
        } else {
            e.registry.add(bpp_bin_label(j));
        }
    }
    for (std::size_t i = 1; i <= instance.n; ++i) {
        for (std::size_t j = 1; j <= instance.m; ++j) {
            if (apply_simplifications && i == 1) {
                e.registry.add_fixed(bpp_item_label(i, j), j == 1 ? 1 : 0);
            } else {
                e.registry.add(bpp_item_label(i, j));
            }
        }
    }
    compile_program(e);
    return e;
}

EncodedProblem build_qubo(const ProblemInstance& instance, Encoding encoding, const PenaltyConfig& config,
                          bool simplify) {
    return std::visit(
            [&](const auto& p) -> EncodedProblem {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, TspInstance>) return build_tsp_qubo(p, encoding, config);
                else if constexpr (std::is_same_v<T, KpInstance>) return build_kp_qubo(p, encoding, config);
                else return build_bpp_qubo(p, encoding, config, simplify);
            },
            instance);
}

namespace {

DecodedSolution decode_program(BitView x, const VariableRegistry& registry, const OriginalProblem& program) {
    if (x.size() != registry.num_vars()) {
        throw DimensionError("bitstring has length " + std::to_string(x.size()) + ", registry has " +
                             std::to_string(registry.num_vars()) + " variables");
    }
    DecodedSolution out;
    out.objective = resolve_real(registry, program.objective).value(x);
    for (const auto& c : program.equalities) {
        if (registry.resolve(c.coeffs).value(x) != static_cast<double>(c.target)) out.violation_report.push_back(c.name);
    }
    for (const auto& c : program.inequalities) {
        if (constraint_margin(c, registry, x) < 0.0) out.violation_report.push_back(c.name);
    }
    out.feasible = out.violation_report.empty();
    return out;
}

}  // namespace

DecodedSolution decode(BitView x, const EncodedProblem& encoded) {
    return decode_program(x, encoded.registry, encoded.original);
}

DecodedSolution decode(BitView x, const VariableRegistry& registry, const ProblemInstance& instance) {
    return decode_program(x, registry, original_program(instance));
}

SolutionClassifier::SolutionClassifier(const EncodedProblem& encoded) {
    const auto& reg = encoded.registry;
    for (const auto& c : encoded.original.equalities) {
        auto f = reg.resolve(c.coeffs);
        rows_.push_back({std::move(f.terms), f.constant, static_cast<double>(c.target), true});
    }
    for (const auto& c : encoded.original.inequalities) {
        const auto le = normalized(c);
        auto f = reg.resolve(le.coeffs);
        rows_.push_back({std::move(f.terms), f.constant, static_cast<double>(le.bound), false});
    }
    objective_ = resolve_real(reg, encoded.original.objective);
}

SolutionClassifier::Result SolutionClassifier::classify(BitView x) const {
    bool feasible = true;
    for (const auto& row : rows_) {
        double v = row.constant;
        for (const auto& [i, a] : row.terms) {
            if (x[i]) v += a;
        }
        if (row.equality ? v != row.rhs : v > row.rhs) {
            feasible = false;
            break;
        }
    }
    return {feasible, objective_.value(x)};
}

bool SolutionClassifier::is_optimal(BitView x, double optimum, double tolerance) const {
    const auto r = classify(x);
    return r.feasible && std::abs(r.objective - optimum) <= tolerance;
}

namespace {

OracleResult solve_tsp(const TspInstance& t) {
    if (t.n > kTspOracleCap) {
        throw CapabilityError("TSP oracle is limited to " + std::to_string(kTspOracleCap) + " cities");
    }
    const std::size_t n = t.n;
    std::vector<std::size_t> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    auto tour_length = [&](const std::vector<std::size_t>& p) {
        double len = t.distance(0, p.front());
        for (std::size_t k = 0; k + 1 < p.size(); ++k) len += t.distance(p[k], p[k + 1]);
        return len + t.distance(p.back(), 0);
    };
    // canonical label order x[1][2], x[1][3], ..., x[n][n-1]
    auto tour_bits = [&](const std::vector<std::size_t>& p) {
        std::vector<Bit> successor_bits(n * n, 0);
        std::size_t prev = 0;
        for (auto c : p) {
            successor_bits[prev * n + c] = 1;
            prev = c;
        }
        successor_bits[prev * n] = 1;
        std::vector<Bit> bits;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) bits.push_back(successor_bits[i * n + j]);
            }
        }
        return bits;
    };

    std::vector<double> lengths;
    std::vector<std::vector<std::size_t>> tours;
    do {
        lengths.push_back(tour_length(perm));
        tours.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double best = *std::min_element(lengths.begin(), lengths.end());
    const double tol = 1e-9 * std::max(1.0, best);
    OracleResult r;
    r.optimum = best;
    std::vector<Bit> best_bits;
    for (std::size_t k = 0; k < tours.size(); ++k) {
        if (lengths[k] - best > tol) continue;
        ++r.optimal_count;
        auto bits = tour_bits(tours[k]);
        if (best_bits.empty() || bits < best_bits) best_bits = std::move(bits);
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (i != j) r.assignment[tsp_label(i, j)] = best_bits[k++];
        }
    }
    return r;
}

OracleResult solve_kp(const KpInstance& kp) {
    if (kp.n > kKpOracleCap) {
        throw CapabilityError("knapsack oracle is limited to " + std::to_string(kKpOracleCap) + " items");
    }
    const std::size_t n = kp.n;
    const auto cap = static_cast<std::size_t>(std::max<std::int64_t>(kp.capacity, 0));
    // best[i][c]: best value of items i.. within capacity c; ways[i][c]:
    // number of subsets of items i.. with weight <= c attaining it.
    std::vector<std::vector<std::int64_t>> best(n + 1, std::vector<std::int64_t>(cap + 1, 0));
    std::vector<std::vector<std::uint64_t>> ways(n + 1, std::vector<std::uint64_t>(cap + 1, 1));
    for (std::size_t i = n; i-- > 0;) {
        const auto w = static_cast<std::size_t>(kp.weights[i]);
        for (std::size_t c = 0; c <= cap; ++c) {
            std::int64_t skip = best[i + 1][c];
            std::uint64_t count = ways[i + 1][c];
            if (w <= c) {
                const std::int64_t take = kp.values[i] + best[i + 1][c - w];
                if (take > skip) {
                    skip = take;
                    count = ways[i + 1][c - w];
                } else if (take == skip) {
                    count += ways[i + 1][c - w];
                }
            }
            best[i][c] = skip;
            ways[i][c] = count;
        }
    }
    OracleResult r;
    r.optimum = static_cast<double>(best[0][cap]);
    r.optimal_count = ways[0][cap];
    // prefer x_i = 0 at every step for the lexicographically smallest optimum
    std::size_t c = cap;
    std::int64_t remaining = best[0][cap];
    for (std::size_t i = 0; i < n; ++i) {
        Bit take = 0;
        if (best[i + 1][c] != remaining) {
            take = 1;
            c -= static_cast<std::size_t>(kp.weights[i]);
            remaining -= kp.values[i];
        }
        r.assignment[kp_label(i + 1)] = take;
    }
    return r;
}

/// Depth-first search over canonical item-to-bin maps (a new bin may only be
/// opened as the next unused one).
class BinSearch {
 public:
    explicit BinSearch(const BppInstance& b) : b_(b), load_(b.n, 0), bin_of_(b.n, 0) {}

    std::size_t minimum() {
        best_ = b_.n + 1;
        descend_min(0, 0);
        return best_;
    }

    /// Counts canonical maps that use exactly `bins` bins; records the first.
    std::uint64_t count(std::size_t bins) {
        target_ = bins;
        found_ = 0;
        descend_count(0, 0);
        return found_;
    }

    const std::vector<std::size_t>& first() const { return first_; }

 private:
    bool fits(std::size_t bin, std::size_t item) const { return load_[bin] + b_.weights[item] <= b_.bin_capacity; }

    void descend_min(std::size_t item, std::size_t used) {
        if (used >= best_) return;
        if (item == b_.n) {
            best_ = used;
            return;
        }
        for (std::size_t bin = 0; bin <= used && bin < b_.m; ++bin) {
            if (!fits(bin, item)) continue;
            load_[bin] += b_.weights[item];
            descend_min(item + 1, std::max(used, bin + 1));
            load_[bin] -= b_.weights[item];
        }
    }

    void descend_count(std::size_t item, std::size_t used) {
        if (used > target_) return;
        if (item == b_.n) {
            if (used != target_) return;
            if (found_++ == 0) first_ = bin_of_;
            return;
        }
        for (std::size_t bin = 0; bin <= used && bin < b_.m; ++bin) {
            if (!fits(bin, item)) continue;
            load_[bin] += b_.weights[item];
            bin_of_[item] = bin;
            descend_count(item + 1, std::max(used, bin + 1));
            load_[bin] -= b_.weights[item];
        }
    }

    const BppInstance& b_;
    std::vector<std::int64_t> load_;
    std::vector<std::size_t> bin_of_;
    std::vector<std::size_t> first_;
    std::size_t best_ = 0;
    std::size_t target_ = 0;
    std::uint64_t found_ = 0;
};

OracleResult solve_bpp(const BppInstance& b) {
    if (b.n > kBppOracleCap) {
        throw CapabilityError("bin packing oracle is limited to " + std::to_string(kBppOracleCap) + " items");
    }
    for (auto w : b.weights) {
        if (w > b.bin_capacity) throw InfeasibleError("an item is heavier than the bin capacity");
    }
    BinSearch search(b);
    const std::size_t bins = search.minimum();
    if (bins > b.m) throw InfeasibleError("items do not fit in the available bins");
    const std::uint64_t partitions = search.count(bins);

    OracleResult r;
    r.optimum = static_cast<double>(bins);
    // each partition into `bins` blocks maps onto m labelled bins in m!/(m-bins)! ways
    std::uint64_t arrangements = 1;
    for (std::size_t k = 0; k < bins; ++k) arrangements *= b.m - k;
    r.optimal_count = partitions * arrangements;
    for (std::size_t j = 1; j <= b.m; ++j) r.assignment[bpp_bin_label(j)] = j <= bins ? 1 : 0;
    for (std::size_t i = 1; i <= b.n; ++i) {
        for (std::size_t j = 1; j <= b.m; ++j) {
            r.assignment[bpp_item_label(i, j)] = search.first()[i - 1] + 1 == j ? 1 : 0;
        }
    }
    return r;
}

}  // namespace

OracleResult oracle_solve(const ProblemInstance& instance) {
    return std::visit(
            [](const auto& p) -> OracleResult {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, TspInstance>) return solve_tsp(p);
                else if constexpr (std::is_same_v<T, KpInstance>) return solve_kp(p);
                else return solve_bpp(p);
            },
            instance);
}

std::vector<Bit> encode_assignment(const EncodedProblem& encoded, const std::map<std::string, Bit>& assignment) {
    const auto& reg = encoded.registry;
    std::vector<Bit> x(reg.num_vars(), 0);
    for (const auto& [label, value] : assignment) {
        if (auto fixed = reg.fixed_value(label)) {
            if (*fixed != value) throw ParameterError("assignment contradicts fixed variable '" + label + "'");
        } else if (auto i = reg.find(label)) {
            x[*i] = value;
        }
    }
    reg.complete_slack(x);
    return x;
}

}  // namespace uqubo
