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
#include <string_view>

#include "uqubo/qubo.hpp"
#include "uqubo/registry.hpp"

namespace uqubo {

/// Penalty weights: lambda0 for equalities, lambda1/lambda2 for inequalities.
/// The slack encoding only uses lambda1.
struct PenaltyConfig {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    bool operator==(const PenaltyConfig&) const = default;
};

enum class Encoding { slack, unbalanced };

std::string_view to_string(Encoding encoding);
Encoding parse_encoding(std::string_view text);

/// Rewrites a `ge` constraint as the equivalent `le` one (coefficients and
/// bound negated); `le` constraints are returned unchanged.
InequalityConstraint normalized(const InequalityConstraint& constraint);

/// Constraint margin h(x): B - sum l_i x_i for `le`, sum l_i x_i - B for `ge`.
/// Nonnegative exactly when the constraint holds.
double constraint_margin(const InequalityConstraint& constraint, const VariableRegistry& registry, BitView x);

/// Largest margin over all assignments of the free variables, computed from
/// the coefficient signs. Fixed labels are substituted first.
std::int64_t max_margin(const InequalityConstraint& constraint, const VariableRegistry& registry);

/// floor(log2 M) + 1 slack bits for maximal margin M; 0 when M == 0.
/// Throws InfeasibleError when no assignment satisfies the constraint.
std::size_t slack_bit_count(const InequalityConstraint& constraint, const VariableRegistry& registry);

struct EncodedModel {
    QuadraticBinaryModel model;
    VariableRegistry registry;
};

/// Appends slack bits s_0..s_{N-1} (weights 2^k) and adds
/// lambda1 * (B - sum l_i x_i - sum 2^k s_k)^2.
EncodedModel encode_slack(QuadraticBinaryModel model, VariableRegistry registry,
                          const InequalityConstraint& constraint, double lambda1);

/// Adds zeta(x) = -lambda1 h(x) + lambda2 h(x)^2 without new variables.
QuadraticBinaryModel encode_unbalanced(QuadraticBinaryModel model, const VariableRegistry& registry,
                                       const InequalityConstraint& constraint, double lambda1, double lambda2);

/// zeta(h) = -lambda1 h + lambda2 h^2.
constexpr double unbalanced_penalty(double margin, double lambda1, double lambda2) {
    return -lambda1 * margin + lambda2 * margin * margin;
}

}  // namespace uqubo
