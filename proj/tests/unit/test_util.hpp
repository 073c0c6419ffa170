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
#include <vector>

#include "uqubo/qubo.hpp"
#include "uqubo/random.hpp"

namespace uqubo::testing {

/// Random dense-ish model with coefficients in [-scale, scale].
inline QuadraticBinaryModel random_model(std::size_t n, std::uint64_t seed, double density = 0.6, double scale = 5.0) {
    Rng rng(seed);
    QuadraticBinaryModel m(n, rng.uniform_real(-scale, scale));
    for (std::size_t i = 0; i < n; ++i) {
        m.add_linear(i, rng.uniform_real(-scale, scale));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform() < density) m.add_quadratic(i, j, rng.uniform_real(-scale, scale));
        }
    }
    return m;
}

/// Direct sum over the term maps, independent of QuadraticBinaryModel::evaluate.
inline double brute_energy(const QuadraticBinaryModel& m, std::uint64_t state) {
    double e = m.offset();
    for (const auto& [i, a] : m.linear()) {
        if (state >> i & 1) e += a;
    }
    for (const auto& [ij, q] : m.quadratic()) {
        if ((state >> ij.first & 1) && (state >> ij.second & 1)) e += q;
    }
    return e;
}

}  // namespace uqubo::testing
