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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uqubo {

using Index = std::size_t;
using Bit = std::uint8_t;
using BitView = std::span<const Bit>;
using Spin = std::int8_t;
using SpinView = std::span<const Spin>;

/// Quadratic polynomial over binary variables plus a constant offset.
///
/// Storage is canonical: quadratic keys are (i, j) with i < j, products
/// x_i * x_i are folded into the linear term, and coefficients that become
/// exactly zero are erased.
class QuadraticBinaryModel {
 public:
    using Linear = std::map<Index, double>;
    using Quadratic = std::map<std::pair<Index, Index>, double>;

    QuadraticBinaryModel() = default;
    explicit QuadraticBinaryModel(std::size_t num_vars, double offset = 0.0)
            : num_vars_(num_vars), offset_(offset) {}

    std::size_t num_vars() const noexcept { return num_vars_; }
    double offset() const noexcept { return offset_; }
    const Linear& linear() const noexcept { return linear_; }
    const Quadratic& quadratic() const noexcept { return quadratic_; }
    std::size_t num_interactions() const noexcept { return quadratic_.size(); }

    double linear(Index i) const;
    double quadratic(Index i, Index j) const;

    /// Appends a variable and returns its index.
    Index add_variable() { return num_vars_++; }
    /// Grows the variable count; shrinking is not allowed.
    void resize(std::size_t num_vars);

    void add_offset(double value) { offset_ += value; }
    void add_linear(Index i, double value);
    void add_quadratic(Index i, Index j, double value);

    double evaluate(BitView x) const;

    QuadraticBinaryModel& operator+=(const QuadraticBinaryModel& other);
    bool operator==(const QuadraticBinaryModel&) const = default;

 private:
    void check_index(Index i) const;

    std::size_t num_vars_ = 0;
    double offset_ = 0.0;
    Linear linear_;
    Quadratic quadratic_;
};

QuadraticBinaryModel operator+(QuadraticBinaryModel lhs, const QuadraticBinaryModel& rhs);

/// offset + sum_i linear_i x_i + sum_{i<j} quadratic_ij x_i x_j.
double evaluate(const QuadraticBinaryModel& model, BitView x);

/// Spin Hamiltonian offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j, z_i = +-1.
class IsingModel {
 public:
    using Fields = std::map<Index, double>;
    using Couplings = std::map<std::pair<Index, Index>, double>;

    IsingModel() = default;
    explicit IsingModel(std::size_t num_spins, double offset = 0.0)
            : num_spins_(num_spins), offset_(offset) {}

    std::size_t num_spins() const noexcept { return num_spins_; }
    double offset() const noexcept { return offset_; }
    const Fields& h() const noexcept { return h_; }
    const Couplings& J() const noexcept { return J_; }

    void add_offset(double value) { offset_ += value; }
    void add_field(Index i, double value);
    /// Adds value * z_i z_j; i == j contributes a constant (z_i^2 = 1).
    void add_coupling(Index i, Index j, double value);

    double energy(SpinView z) const;
    /// Energy of the bitstring x under z_i = 1 - 2 x_i.
    double energy_of_bits(BitView x) const;

    /// Largest absolute coefficient among h (optional) and J.
    double max_abs_coefficient(bool include_fields = true) const;

    bool operator==(const IsingModel&) const = default;

 private:
    std::size_t num_spins_ = 0;
    double offset_ = 0.0;
    Fields h_;
    Couplings J_;
};

/// Substitutes x_i = (1 - z_i) / 2.
IsingModel to_ising(const QuadraticBinaryModel& model);
/// Inverse substitution z_i = 1 - 2 x_i.
QuadraticBinaryModel to_qubo(const IsingModel& ising);

/// Symmetric adjacency (CSR) form for inner loops that flip single variables.
struct CompiledModel {
    std::size_t num_vars = 0;
    double offset = 0.0;
    std::vector<double> linear;
    std::vector<std::size_t> row_start;  // size num_vars + 1
    std::vector<Index> neighbor;
    std::vector<double> weight;

    double evaluate(BitView x) const;
};

CompiledModel compile(const QuadraticBinaryModel& model);

/// Text form: `qubo <num_vars> <offset>` followed by `L <i> <coeff>` and
/// `Q <i> <j> <coeff>` lines. Numbers use the shortest round-trip decimal.
std::string to_text(const QuadraticBinaryModel& model);
QuadraticBinaryModel qubo_from_text(std::string_view text);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Bitstring of state index `state`: bit i of the index is variable i.
std::vector<Bit> bits_of(std::uint64_t state, std::size_t n);
std::uint64_t state_of(BitView bits);

}  // namespace uqubo
