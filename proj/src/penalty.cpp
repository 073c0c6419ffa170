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

#include "uqubo/penalty.hpp"

#include <bit>
#include <string>

#include "uqubo/error.hpp"

namespace uqubo {

std::string_view to_string(Encoding encoding) {
    return encoding == Encoding::slack ? "slack" : "unbalanced";
}

Encoding parse_encoding(std::string_view text) {
    if (text == "slack") return Encoding::slack;
    if (text == "unbalanced") return Encoding::unbalanced;
    throw ParameterError("unknown encoding '" + std::string(text) + "' (expected slack or unbalanced)");
}

InequalityConstraint normalized(const InequalityConstraint& constraint) {
    if (constraint.sense == Sense::le) return constraint;
    InequalityConstraint out = constraint;
    for (auto& term : out.coeffs) term.coeff = -term.coeff;
    out.bound = -out.bound;
    out.sense = Sense::le;
    return out;
}

namespace {

/// h(x) = B - sum l_i x_i of the normalized constraint as a resolved form.
ResolvedForm margin_form(const InequalityConstraint& le, const VariableRegistry& registry) {
    ResolvedForm lhs = registry.resolve(le.coeffs);
    ResolvedForm h;
    h.constant = static_cast<double>(le.bound) - lhs.constant;
    h.terms.reserve(lhs.terms.size());
    for (const auto& [i, a] : lhs.terms) h.terms.emplace_back(i, -a);
    return h;
}

void check_nonempty(const InequalityConstraint& constraint) {
    if (constraint.coeffs.empty()) throw ParameterError("inequality constraint '" + constraint.name + "' has no terms");
}

}  // namespace

double constraint_margin(const InequalityConstraint& constraint, const VariableRegistry& registry, BitView x) {
    return margin_form(normalized(constraint), registry).value(x);
}

std::int64_t max_margin(const InequalityConstraint& constraint, const VariableRegistry& registry) {
    check_nonempty(constraint);
    const auto le = normalized(constraint);
    std::int64_t fixed_part = 0;
    std::int64_t negative_part = 0;
    std::map<Index, std::int64_t> merged;
    for (const auto& term : le.coeffs) {
        if (auto v = registry.fixed_value(term.label)) {
            fixed_part += term.coeff * *v;
        } else {
            merged[registry.index_of(term.label)] += term.coeff;
        }
    }
    for (const auto& [i, l] : merged) {
        if (l < 0) negative_part += l;
    }
    const std::int64_t bound = le.bound - fixed_part;
    const std::int64_t largest = bound - negative_part;
    if (largest < 0) {
        throw InfeasibleError("constraint '" + constraint.name + "' is violated by every assignment");
    }
    return largest;
}

std::size_t slack_bit_count(const InequalityConstraint& constraint, const VariableRegistry& registry) {
    const std::int64_t m = max_margin(constraint, registry);
    if (m <= 0) return 0;
    return static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(m)));
}

EncodedModel encode_slack(QuadraticBinaryModel model, VariableRegistry registry,
                          const InequalityConstraint& constraint, double lambda1) {
    if (!(lambda1 >= 0.0)) throw ParameterError("slack penalty weight must be >= 0");
    const std::size_t bits = slack_bit_count(constraint, registry);
    const auto le = normalized(constraint);
    const std::string tag = constraint.name.empty() ? "c" + std::to_string(registry.slack_groups().size())
                                                    : constraint.name;
    SlackGroup group{le, {}};
    ResolvedForm residual = margin_form(le, registry);
    for (std::size_t k = 0; k < bits; ++k) {
        std::string label = "s[" + tag + "][" + std::to_string(k) + "]";
        const Index i = registry.add(label);
        residual.terms.emplace_back(i, -static_cast<double>(std::int64_t{1} << k));
        group.labels.push_back(std::move(label));
    }
    model.resize(registry.num_vars());
    add_weighted_square(model, residual, lambda1);
    registry.add_slack_group(std::move(group));
    return {std::move(model), std::move(registry)};
}

QuadraticBinaryModel encode_unbalanced(QuadraticBinaryModel model, const VariableRegistry& registry,
                                       const InequalityConstraint& constraint, double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw ParameterError("unbalanced penalization needs lambda1 > 0 and lambda2 > 0");
    }
    check_nonempty(constraint);
    if (model.num_vars() < registry.num_vars()) model.resize(registry.num_vars());
    const ResolvedForm h = margin_form(normalized(constraint), registry);
    add_weighted_linear(model, h, -lambda1);
    add_weighted_square(model, h, lambda2);
    return model;
}

}  // namespace uqubo
