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

#include "uqubo/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "uqubo/error.hpp"

namespace uqubo {

namespace {

template <class Map, class Key>
void accumulate(Map& map, const Key& key, double value) {
    if (value == 0.0) return;
    auto [it, inserted] = map.try_emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0.0) map.erase(it);
    }
}

}  // namespace

void QuadraticBinaryModel::check_index(Index i) const {
    if (i >= num_vars_) {
        throw DimensionError("variable index " + std::to_string(i) + " out of range for " +
                             std::to_string(num_vars_) + " variables");
    }
}

double QuadraticBinaryModel::linear(Index i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? 0.0 : it->second;
}

double QuadraticBinaryModel::quadratic(Index i, Index j) const {
    if (i > j) std::swap(i, j);
    auto it = quadratic_.find({i, j});
    return it == quadratic_.end() ? 0.0 : it->second;
}

void QuadraticBinaryModel::resize(std::size_t num_vars) {
    if (num_vars < num_vars_) throw DimensionError("QuadraticBinaryModel::resize cannot shrink");
    num_vars_ = num_vars;
}

void QuadraticBinaryModel::add_linear(Index i, double value) {
    check_index(i);
    accumulate(linear_, i, value);
}

void QuadraticBinaryModel::add_quadratic(Index i, Index j, double value) {
    check_index(i);
    check_index(j);
    if (i == j) {
        accumulate(linear_, i, value);
        return;
    }
    if (i > j) std::swap(i, j);
    accumulate(quadratic_, std::pair{i, j}, value);
}

double QuadraticBinaryModel::evaluate(BitView x) const {
    if (x.size() != num_vars_) {
        throw DimensionError("assignment has length " + std::to_string(x.size()) + ", model has " +
                             std::to_string(num_vars_) + " variables");
    }
    double energy = offset_;
    for (const auto& [i, a] : linear_) {
        if (x[i]) energy += a;
    }
    for (const auto& [ij, q] : quadratic_) {
        if (x[ij.first] && x[ij.second]) energy += q;
    }
    return energy;
}

QuadraticBinaryModel& QuadraticBinaryModel::operator+=(const QuadraticBinaryModel& other) {
    num_vars_ = std::max(num_vars_, other.num_vars_);
    offset_ += other.offset_;
    for (const auto& [i, a] : other.linear_) accumulate(linear_, i, a);
    for (const auto& [ij, q] : other.quadratic_) accumulate(quadratic_, ij, q);
    return *this;
}

QuadraticBinaryModel operator+(QuadraticBinaryModel lhs, const QuadraticBinaryModel& rhs) {
    lhs += rhs;
    return lhs;
}

double evaluate(const QuadraticBinaryModel& model, BitView x) { return model.evaluate(x); }

void IsingModel::add_field(Index i, double value) {
    if (i >= num_spins_) throw DimensionError("spin index out of range");
    accumulate(h_, i, value);
}

void IsingModel::add_coupling(Index i, Index j, double value) {
    if (i >= num_spins_ || j >= num_spins_) throw DimensionError("spin index out of range");
    if (i == j) {
        offset_ += value;
        return;
    }
    if (i > j) std::swap(i, j);
    accumulate(J_, std::pair{i, j}, value);
}

double IsingModel::energy(SpinView z) const {
    if (z.size() != num_spins_) throw DimensionError("spin configuration length mismatch");
    double energy = offset_;
    for (const auto& [i, h] : h_) energy += h * z[i];
    for (const auto& [ij, J] : J_) energy += J * z[ij.first] * z[ij.second];
    return energy;
}

double IsingModel::energy_of_bits(BitView x) const {
    if (x.size() != num_spins_) throw DimensionError("bitstring length mismatch");
    double energy = offset_;
    for (const auto& [i, h] : h_) energy += x[i] ? -h : h;
    for (const auto& [ij, J] : J_) energy += (x[ij.first] == x[ij.second]) ? J : -J;
    return energy;
}

double IsingModel::max_abs_coefficient(bool include_fields) const {
    double m = 0.0;
    if (include_fields) {
        for (const auto& [i, h] : h_) m = std::max(m, std::abs(h));
    }
    for (const auto& [ij, J] : J_) m = std::max(m, std::abs(J));
    return m;
}

IsingModel to_ising(const QuadraticBinaryModel& model) {
    IsingModel ising(model.num_vars(), model.offset());
    // a x = a/2 - a/2 z
    for (const auto& [i, a] : model.linear()) {
        ising.add_offset(a / 2);
        ising.add_field(i, -a / 2);
    }
    // q x_i x_j = q/4 (1 - z_i - z_j + z_i z_j)
    for (const auto& [ij, q] : model.quadratic()) {
        ising.add_offset(q / 4);
        ising.add_field(ij.first, -q / 4);
        ising.add_field(ij.second, -q / 4);
        ising.add_coupling(ij.first, ij.second, q / 4);
    }
    return ising;
}

QuadraticBinaryModel to_qubo(const IsingModel& ising) {
    QuadraticBinaryModel model(ising.num_spins(), ising.offset());
    // h z = h - 2h x
    for (const auto& [i, h] : ising.h()) {
        model.add_offset(h);
        model.add_linear(i, -2 * h);
    }
    // J z_i z_j = J (1 - 2x_i)(1 - 2x_j)
    for (const auto& [ij, J] : ising.J()) {
        model.add_offset(J);
        model.add_linear(ij.first, -2 * J);
        model.add_linear(ij.second, -2 * J);
        model.add_quadratic(ij.first, ij.second, 4 * J);
    }
    return model;
}

double CompiledModel::evaluate(BitView x) const {
    double energy = offset;
    for (std::size_t i = 0; i < num_vars; ++i) {
        if (!x[i]) continue;
        energy += linear[i];
        for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) {
            if (neighbor[k] > i && x[neighbor[k]]) energy += weight[k];
        }
    }
    return energy;
}

CompiledModel compile(const QuadraticBinaryModel& model) {
    CompiledModel c;
    c.num_vars = model.num_vars();
    c.offset = model.offset();
    c.linear.assign(c.num_vars, 0.0);
    for (const auto& [i, a] : model.linear()) c.linear[i] = a;

    std::vector<std::size_t> degree(c.num_vars, 0);
    for (const auto& [ij, q] : model.quadratic()) {
        ++degree[ij.first];
        ++degree[ij.second];
    }
    c.row_start.assign(c.num_vars + 1, 0);
    for (std::size_t i = 0; i < c.num_vars; ++i) c.row_start[i + 1] = c.row_start[i] + degree[i];
    c.neighbor.resize(c.row_start.back());
    c.weight.resize(c.row_start.back());
    std::vector<std::size_t> fill(c.row_start.begin(), c.row_start.end() - 1);
    // map iteration order keeps every row sorted by neighbor index
    for (const auto& [ij, q] : model.quadratic()) {
        c.neighbor[fill[ij.first]] = ij.second;
        c.weight[fill[ij.first]++] = q;
        c.neighbor[fill[ij.second]] = ij.first;
        c.weight[fill[ij.second]++] = q;
    }
    return c;
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

std::string to_text(const QuadraticBinaryModel& model) {
    std::string out = "qubo " + std::to_string(model.num_vars()) + " " + format_double(model.offset()) + "\n";
    for (const auto& [i, a] : model.linear()) {
        out += "L " + std::to_string(i) + " " + format_double(a) + "\n";
    }
    for (const auto& [ij, q] : model.quadratic()) {
        out += "Q " + std::to_string(ij.first) + " " + std::to_string(ij.second) + " " + format_double(q) + "\n";
    }
    return out;
}

namespace {

double parse_double(std::string_view token, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw FormatError("line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
    }
    return value;
}

Index parse_index(std::string_view token, std::size_t line) {
    Index value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw FormatError("line " + std::to_string(line) + ": bad index '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

}  // namespace

QuadraticBinaryModel qubo_from_text(std::string_view text) {
    QuadraticBinaryModel model;
    bool header = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 3 || tok[0] != "qubo") throw FormatError("missing 'qubo <num_vars> <offset>' header");
            model = QuadraticBinaryModel(parse_index(tok[1], line_no), parse_double(tok[2], line_no));
            header = true;
        } else if (tok[0] == "L" && tok.size() == 3) {
            model.add_linear(parse_index(tok[1], line_no), parse_double(tok[2], line_no));
        } else if (tok[0] == "Q" && tok.size() == 4) {
            Index i = parse_index(tok[1], line_no);
            Index j = parse_index(tok[2], line_no);
            if (i >= j) throw FormatError("line " + std::to_string(line_no) + ": quadratic term needs i < j");
            model.add_quadratic(i, j, parse_double(tok[3], line_no));
        } else {
            throw FormatError("line " + std::to_string(line_no) + ": unrecognized term");
        }
    }
    if (!header) throw FormatError("empty QUBO document");
    return model;
}

std::vector<Bit> bits_of(std::uint64_t state, std::size_t n) {
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<Bit>((state >> i) & 1U);
    return bits;
}

std::uint64_t state_of(BitView bits) {
    std::uint64_t state = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) state |= std::uint64_t{1} << i;
    }
    return state;
}

}  // namespace uqubo
