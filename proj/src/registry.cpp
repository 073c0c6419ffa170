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

#include "uqubo/registry.hpp"

#include <algorithm>
#include <cmath>

#include "uqubo/error.hpp"

namespace uqubo {

double ResolvedForm::value(BitView x) const {
    double v = constant;
    for (const auto& [i, a] : terms) {
        if (x[i]) v += a;
    }
    return v;
}

Index VariableRegistry::add(std::string label) {
    if (contains(label)) throw LabelError("duplicate variable label '" + label + "'");
    const Index index = free_.size();
    index_.emplace(label, index);
    free_.push_back(label);
    names_.push_back(std::move(label));
    return index;
}

void VariableRegistry::add_fixed(std::string label, Bit value) {
    if (contains(label)) throw LabelError("duplicate variable label '" + label + "'");
    if (value > 1) throw ParameterError("fixed value must be 0 or 1");
    fixed_.emplace(label, value);
    names_.push_back(std::move(label));
}

void VariableRegistry::fix(std::string_view label, Bit value) {
    if (value > 1) throw ParameterError("fixed value must be 0 or 1");
    const Index index = index_of(label);
    index_.erase(index_.find(label));
    fixed_.emplace(std::string(label), value);
    free_.erase(free_.begin() + static_cast<std::ptrdiff_t>(index));
    for (auto& [name, i] : index_) {
        if (i > index) --i;
    }
}

bool VariableRegistry::contains(std::string_view label) const {
    return index_.find(label) != index_.end() || fixed_.find(label) != fixed_.end();
}

bool VariableRegistry::is_fixed(std::string_view label) const { return fixed_.find(label) != fixed_.end(); }

std::optional<Index> VariableRegistry::find(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Index VariableRegistry::index_of(std::string_view label) const {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    if (is_fixed(label)) throw LabelError("variable '" + std::string(label) + "' is fixed");
    throw LabelError("unknown variable '" + std::string(label) + "'");
}

std::optional<Bit> VariableRegistry::fixed_value(std::string_view label) const {
    auto it = fixed_.find(label);
    if (it == fixed_.end()) return std::nullopt;
    return it->second;
}

Bit VariableRegistry::value(std::string_view label, BitView x) const {
    if (auto v = fixed_value(label)) return *v;
    return x[index_of(label)];
}

ResolvedForm VariableRegistry::resolve(const LinearForm& form) const {
    std::map<Index, double> merged;
    ResolvedForm out;
    for (const auto& term : form) {
        if (auto v = fixed_value(term.label)) {
            out.constant += static_cast<double>(term.coeff) * *v;
        } else {
            merged[index_of(term.label)] += static_cast<double>(term.coeff);
        }
    }
    for (const auto& [i, a] : merged) {
        if (a != 0.0) out.terms.emplace_back(i, a);
    }
    return out;
}

std::size_t VariableRegistry::num_slack() const {
    std::size_t n = 0;
    for (const auto& g : slack_groups_) n += g.labels.size();
    return n;
}

namespace {

std::int64_t slack_value(const VariableRegistry& reg, const SlackGroup& group, BitView x) {
    std::int64_t v = 0;
    for (std::size_t k = 0; k < group.labels.size(); ++k) {
        if (reg.value(group.labels[k], x)) v += std::int64_t{1} << k;
    }
    return v;
}

double margin(const VariableRegistry& reg, const SlackGroup& group, BitView x) {
    return static_cast<double>(group.constraint.bound) - reg.resolve(group.constraint.coeffs).value(x);
}

}  // namespace

bool VariableRegistry::slack_is_canonical(BitView x) const {
    for (const auto& g : slack_groups_) {
        if (static_cast<double>(slack_value(*this, g, x)) != margin(*this, g, x)) return false;
    }
    return true;
}

void VariableRegistry::complete_slack(std::vector<Bit>& x) const {
    for (const auto& g : slack_groups_) {
        const auto top = (std::int64_t{1} << g.labels.size()) - 1;
        auto m = static_cast<std::int64_t>(std::llround(margin(*this, g, x)));
        m = std::clamp<std::int64_t>(m, 0, top);
        for (std::size_t k = 0; k < g.labels.size(); ++k) {
            if (auto i = find(g.labels[k])) x[*i] = static_cast<Bit>((m >> k) & 1);
        }
    }
}

void add_weighted_square(QuadraticBinaryModel& model, const ResolvedForm& form, double weight) {
    if (weight == 0.0) return;
    const auto& t = form.terms;
    const double c = form.constant;
    model.add_offset(weight * c * c);
    for (std::size_t a = 0; a < t.size(); ++a) {
        const auto [i, ai] = t[a];
        model.add_linear(i, weight * (ai * ai + 2 * ai * c));
        for (std::size_t b = a + 1; b < t.size(); ++b) {
            model.add_quadratic(i, t[b].first, weight * 2 * ai * t[b].second);
        }
    }
}

void add_weighted_linear(QuadraticBinaryModel& model, const ResolvedForm& form, double weight) {
    if (weight == 0.0) return;
    model.add_offset(weight * form.constant);
    for (const auto& [i, a] : form.terms) model.add_linear(i, weight * a);
}

QuadraticBinaryModel add_equality_penalty(QuadraticBinaryModel model, const VariableRegistry& registry,
                                          const LinearForm& coeffs, std::int64_t target, double lambda0) {
    if (!(lambda0 >= 0.0)) throw ParameterError("equality penalty weight must be >= 0");
    if (model.num_vars() < registry.num_vars()) model.resize(registry.num_vars());
    auto form = registry.resolve(coeffs);
    form.constant -= static_cast<double>(target);
    add_weighted_square(model, form, lambda0);
    return model;
}

FixedModel fix_variable(const QuadraticBinaryModel& model, const VariableRegistry& registry,
                        std::string_view label, Bit value) {
    if (value > 1) throw ParameterError("fixed value must be 0 or 1");
    const Index k = registry.index_of(label);
    if (model.num_vars() != registry.num_vars()) throw DimensionError("model and registry disagree on variable count");

    auto remap = [k](Index i) { return i < k ? i : i - 1; };
    QuadraticBinaryModel reduced(model.num_vars() - 1, model.offset());
    for (const auto& [i, a] : model.linear()) {
        if (i == k) {
            if (value) reduced.add_offset(a);
        } else {
            reduced.add_linear(remap(i), a);
        }
    }
    for (const auto& [ij, q] : model.quadratic()) {
        const auto [i, j] = ij;
        if (i == k || j == k) {
            if (value) reduced.add_linear(remap(i == k ? j : i), q);
        } else {
            reduced.add_quadratic(remap(i), remap(j), q);
        }
    }
    VariableRegistry reg = registry;
    reg.fix(label, value);
    return {std::move(reduced), std::move(reg)};
}

}  // namespace uqubo
