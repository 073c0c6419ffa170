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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "uqubo/penalty.hpp"
#include "uqubo/qubo.hpp"
#include "uqubo/registry.hpp"

namespace uqubo {

enum class ProblemKind { tsp, kp, bpp };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

/// Cities on the 50x50 square with Euclidean distances.
struct TspInstance {
    std::size_t n = 0;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> dist;  // row-major n x n
    std::uint64_t seed = 0;

    double distance(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    bool operator==(const TspInstance&) const = default;
};

struct KpInstance {
    std::size_t n = 0;
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> weights;
    std::int64_t capacity = 0;
    std::uint64_t seed = 0;

    bool operator==(const KpInstance&) const = default;
};

struct BppInstance {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::int64_t> weights;
    std::int64_t bin_capacity = 20;
    std::uint64_t seed = 0;

    /// ceil(sum w_i / B), the lower bound used to pre-open bins.
    std::size_t min_bins() const;
    bool operator==(const BppInstance&) const = default;
};

using ProblemInstance = std::variant<TspInstance, KpInstance, BppInstance>;

ProblemKind kind_of(const ProblemInstance& instance);
std::size_t size_of(const ProblemInstance& instance);
std::uint64_t seed_of(const ProblemInstance& instance);

TspInstance make_tsp(std::vector<std::array<double, 2>> coords, std::uint64_t seed = 0);
KpInstance make_kp(std::vector<std::int64_t> values, std::vector<std::int64_t> weights, std::int64_t capacity,
                   std::uint64_t seed = 0);
BppInstance make_bpp(std::vector<std::int64_t> weights, std::int64_t bin_capacity = 20, std::uint64_t seed = 0);

/// Deterministic random instance. TSP: uniform cities on [0,50]^2.
/// KP: values in [1,63], weights in [1,127], W = floor(0.7 sum w).
/// BPP: weights in [4,20], B = 20, as many bins as items.
ProblemInstance generate(ProblemKind kind, std::size_t n, std::uint64_t seed);

/// Reference penalty weights per problem kind (tuned for the unbalanced
/// encoding; reused for the slack encoding).
PenaltyConfig default_penalties(ProblemKind kind);

enum class ObjectiveSense { minimize, maximize };

/// The constrained binary program the QUBO was compiled from.
struct OriginalProblem {
    ObjectiveSense sense = ObjectiveSense::minimize;
    std::vector<std::pair<std::string, double>> objective;
    std::vector<EqualityConstraint> equalities;
    std::vector<InequalityConstraint> inequalities;
};

struct EncodedProblem {
    ProblemInstance instance;
    Encoding encoding = Encoding::unbalanced;
    PenaltyConfig config;
    bool simplified = false;
    OriginalProblem original;
    QuadraticBinaryModel model;
    VariableRegistry registry;

    std::size_t num_vars() const { return model.num_vars(); }
};

/// Number of subtour subsets: Q in {2..n}, 2 <= |Q| <= n-1, i.e. 2^(n-1) - n.
std::uint64_t subtour_family_size(std::size_t n);

EncodedProblem build_tsp_qubo(const TspInstance& instance, Encoding encoding, const PenaltyConfig& config);
EncodedProblem build_kp_qubo(const KpInstance& instance, Encoding encoding, const PenaltyConfig& config);
EncodedProblem build_bpp_qubo(const BppInstance& instance, Encoding encoding, const PenaltyConfig& config,
                              bool apply_simplifications = true);
/// Dispatches on the instance kind; `simplify` only affects bin packing.
EncodedProblem build_qubo(const ProblemInstance& instance, Encoding encoding, const PenaltyConfig& config,
                          bool simplify = true);

struct DecodedSolution {
    bool feasible = false;
    double objective = 0.0;  // tour length, packed value or bins used
    std::vector<std::string> violation_report;
};

/// Judges x against the original constraints; slack bits are ignored.
DecodedSolution decode(BitView x, const EncodedProblem& encoded);
DecodedSolution decode(BitView x, const VariableRegistry& registry, const ProblemInstance& instance);

/// Allocation-free feasibility/objective evaluation for enumeration loops.
class SolutionClassifier {
 public:
    explicit SolutionClassifier(const EncodedProblem& encoded);

    struct Result {
        bool feasible;
        double objective;
    };

    Result classify(BitView x) const;
    /// Feasible and objective within `tolerance` of `optimum`.
    bool is_optimal(BitView x, double optimum, double tolerance) const;

 private:
    struct Row {
        std::vector<std::pair<Index, double>> terms;
        double constant;
        double rhs;
        bool equality;
    };
    std::vector<Row> rows_;
    ResolvedForm objective_;
};

struct OracleResult {
    double optimum = 0.0;
    /// One optimal solution over the problem labels (lexicographically
    /// smallest in label order; bin packing uses the smallest item-to-bin map).
    std::map<std::string, Bit> assignment;
    /// Number of distinct optimal assignments of the unreduced problem.
    std::uint64_t optimal_count = 0;
};

inline constexpr std::size_t kTspOracleCap = 10;
inline constexpr std::size_t kKpOracleCap = 30;
inline constexpr std::size_t kBppOracleCap = 10;

/// Exact optimum by permutation enumeration (TSP), capacity DP (KP) or
/// pruned exhaustive assignment search (BPP).
OracleResult oracle_solve(const ProblemInstance& instance);

/// Model bitstring for a label assignment. Labels missing from `assignment`
/// are 0; slack bits get their canonical values.
std::vector<Bit> encode_assignment(const EncodedProblem& encoded, const std::map<std::string, Bit>& assignment);

std::string tsp_label(std::size_t i, std::size_t j);  // 1-based city indices
std::string kp_label(std::size_t i);
std::string bpp_item_label(std::size_t item, std::size_t bin);
std::string bpp_bin_label(std::size_t bin);

}  // namespace uqubo
