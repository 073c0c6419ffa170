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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uqubo/qubo.hpp"

namespace uqubo {

/// One integer-weighted term of a linear form over named variables.
struct Term {
    std::string label;
    std::int64_t coeff = 0;
};

using LinearForm = std::vector<Term>;

enum class Sense { le, ge };

/// sum_i coeffs_i x_i <= bound (le) or >= bound (ge).
struct InequalityConstraint {
    std::string name;
    LinearForm coeffs;
    std::int64_t bound = 0;
    Sense sense = Sense::le;
};

/// sum_i coeffs_i x_i == target.
struct EqualityConstraint {
    std::string name;
    LinearForm coeffs;
    std::int64_t target = 0;
};

/// Left-hand side `sum terms + constant` over model indices, with fixed
/// variables folded into the constant and repeated indices merged.
struct ResolvedForm {
    std::vector<std::pair<Index, double>> terms;
    double constant = 0.0;

    double value(BitView x) const;
};

/// Slack bits attached to one inequality; bit k carries weight 2^k.
struct SlackGroup {
    InequalityConstraint constraint;  // normalized to Sense::le
    std::vector<std::string> labels;
};

/// Maps logical labels (x[1][2], s[...][k], ...) to model indices and keeps
/// the labels that were fixed to constants.
class VariableRegistry {
 public:
    /// Registers a free variable at the next index.
    Index add(std::string label);
    /// Registers a label that is fixed to `value` and never gets an index.
    void add_fixed(std::string label, Bit value);
    /// Turns a free label into a fixed one; later indices shift down by one.
    void fix(std::string_view label, Bit value);

    bool contains(std::string_view label) const;
    bool is_fixed(std::string_view label) const;
    std::optional<Index> find(std::string_view label) const;
    /// Index of a free label; LabelError when unknown or fixed.
    Index index_of(std::string_view label) const;
    std::optional<Bit> fixed_value(std::string_view label) const;

    std::size_t num_vars() const noexcept { return free_.size(); }
    const std::string& label(Index i) const { return free_.at(i); }
    /// Every registered label in registration order (free and fixed).
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<std::string>& free_labels() const noexcept { return free_; }
    const std::map<std::string, Bit, std::less<>>& fixed() const noexcept { return fixed_; }

    /// Value of `label` under the model assignment x (fixed labels included).
    Bit value(std::string_view label, BitView x) const;

    ResolvedForm resolve(const LinearForm& form) const;

    void add_slack_group(SlackGroup group) { slack_groups_.push_back(std::move(group)); }
    const std::vector<SlackGroup>& slack_groups() const noexcept { return slack_groups_; }
    std::size_t num_slack() const;

    /// True when every slack group holds exactly the margin B - sum l_i x_i
    /// of its constraint, i.e. the slack penalties vanish for feasible x.
    bool slack_is_canonical(BitView x) const;

    /// Fills every slack group of x with its canonical value (clamped to the
    /// representable range when the constraint is violated).
    void complete_slack(std::vector<Bit>& x) const;

    bool operator==(const VariableRegistry&) const = default;

 private:
    std::vector<std::string> names_;
    std::vector<std::string> free_;
    std::map<std::string, Index, std::less<>> index_;
    std::map<std::string, Bit, std::less<>> fixed_;
    std::vector<SlackGroup> slack_groups_;
};

/// model += weight * (sum terms + constant)^2, expanded with x_i^2 = x_i.
void add_weighted_square(QuadraticBinaryModel& model, const ResolvedForm& form, double weight);
/// model += weight * (sum terms + constant).
void add_weighted_linear(QuadraticBinaryModel& model, const ResolvedForm& form, double weight);

/// Adds lambda0 * (sum c_i x_i - target)^2 over registry labels.
QuadraticBinaryModel add_equality_penalty(QuadraticBinaryModel model, const VariableRegistry& registry,
                                          const LinearForm& coeffs, std::int64_t target, double lambda0);

struct FixedModel {
    QuadraticBinaryModel model;
    VariableRegistry registry;
};

/// Substitutes label := value and compacts the remaining indices.
FixedModel fix_variable(const QuadraticBinaryModel& model, const VariableRegistry& registry,
                        std::string_view label, Bit value);

}  // namespace uqubo
