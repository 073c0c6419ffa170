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

#include "uqubo/qaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "uqubo/error.hpp"
#include "uqubo/spectrum.hpp"

namespace uqubo {

namespace {

using cplx = std::complex<double>;

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap || n > 40) {
        throw CapabilityError("state-vector simulation of " + std::to_string(n) + " qubits exceeds the cap of " +
                              std::to_string(cap));
    }
}

/// E(z) - offset for every basis index.
std::vector<double> centered_energies(const IsingModel& ising, std::size_t cap) {
    IsingModel centered = ising;
    centered.add_offset(-ising.offset());
    return all_energies(to_qubo(centered), cap);
}

void apply_phase(StateVector& a, const std::vector<double>& energies, double gamma) {
    for (std::size_t y = 0; y < a.size(); ++y) a[y] *= std::polar(1.0, -gamma * energies[y]);
}

void apply_mixer(StateVector& a, std::size_t n, double beta) {
    const double c = std::cos(beta);
    const cplx is{0.0, std::sin(beta)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t stride = std::size_t{1} << k;
        for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
            for (std::size_t y = base; y < base + stride; ++y) {
                const cplx a0 = a[y];
                const cplx a1 = a[y + stride];
                a[y] = c * a0 + is * a1;
                a[y + stride] = is * a0 + c * a1;
            }
        }
    }
}

double centered_expectation(const StateVector& a, const std::vector<double>& energies) {
    double e = 0.0;
    for (std::size_t y = 0; y < a.size(); ++y) e += std::norm(a[y]) * energies[y];
    return e;
}

std::vector<double> cell_axis(double lower, std::size_t points) {
    std::vector<double> axis(points);
    for (std::size_t k = 0; k < points; ++k) axis[k] = lower * (static_cast<double>(k) + 0.5) / static_cast<double>(points);
    return axis;
}

/// gamma-only factors of the p=1 energy
/// E(gamma, beta) = offset + sin(2b) A + sin(4b) B + sin^2(2b) C.
struct P1Coefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

class ClosedFormP1 {
 public:
    explicit ClosedFormP1(const IsingModel& ising) : n_(ising.num_spins()), h_(n_, 0.0), J_(n_ * n_, 0.0) {
        for (const auto& [i, v] : ising.h()) h_[i] = v;
        for (const auto& [ij, v] : ising.J()) {
            J_[ij.first * n_ + ij.second] = v;
            J_[ij.second * n_ + ij.first] = v;
            edges_.push_back(ij);
        }
    }

    P1Coefficients at(double gamma) const {
        const double t = 2.0 * gamma;
        P1Coefficients out;
        for (std::size_t u = 0; u < n_; ++u) {
            if (h_[u] == 0.0) continue;
            double prod = 1.0;
            for (std::size_t w = 0; w < n_; ++w) {
                if (w != u) prod *= std::cos(t * J(u, w));
            }
            out.a -= h_[u] * std::sin(t * h_[u]) * prod;
        }
        for (const auto& [u, v] : edges_) {
            const double juv = J(u, v);
            double pu = 1.0, pv = 1.0, pminus = 1.0, pplus = 1.0;
            for (std::size_t w = 0; w < n_; ++w) {
                if (w == u || w == v) continue;
                pu *= std::cos(t * J(u, w));
                pv *= std::cos(t * J(v, w));
                pminus *= std::cos(t * (J(u, w) - J(v, w)));
                pplus *= std::cos(t * (J(u, w) + J(v, w)));
            }
            const double yz = std::cos(t * h_[u]) * std::sin(t * juv) * pu;
            const double zy = std::cos(t * h_[v]) * std::sin(t * juv) * pv;
            const double yy = 0.5 * (std::cos(t * (h_[u] - h_[v])) * pminus - std::cos(t * (h_[u] + h_[v])) * pplus);
            out.b -= 0.5 * juv * (yz + zy);
            out.c += juv * yy;
        }
        return out;
    }

 private:
    double J(std::size_t i, std::size_t j) const { return J_[i * n_ + j]; }

    std::size_t n_;
    std::vector<double> h_;
    std::vector<double> J_;
    std::vector<std::pair<Index, Index>> edges_;
};

/// Amplitudes of the optimal states after one layer, grouped by the Hamming
/// distance d from each target: a_z = 2^{-n/2} sum_d cos^{n-d}(b) (i sin b)^d T_d(z).
class DistanceBuckets {
 public:
    DistanceBuckets(const std::vector<double>& energies, std::size_t n, const std::vector<std::uint64_t>& targets)
            : energies_(energies), n_(n), targets_(targets) {}

    /// T_d(z) for every target at one gamma.
    std::vector<cplx> at(double gamma) const {
        std::vector<cplx> t(targets_.size() * (n_ + 1), cplx{0.0, 0.0});
        for (std::uint64_t y = 0; y < energies_.size(); ++y) {
            const cplx phase = std::polar(1.0, -gamma * energies_[y]);
            for (std::size_t k = 0; k < targets_.size(); ++k) {
                t[k * (n_ + 1) + static_cast<std::size_t>(std::popcount(y ^ targets_[k]))] += phase;
            }
        }
        return t;
    }

    /// Probabilities of every target at one beta.
    std::vector<double> probabilities(const std::vector<cplx>& t, double beta) const {
        std::vector<cplx> weight(n_ + 1);
        const double c = std::cos(beta);
        const cplx is{0.0, std::sin(beta)};
        const double norm = std::pow(2.0, -0.5 * static_cast<double>(n_));
        for (std::size_t d = 0; d <= n_; ++d) {
            weight[d] = norm * std::pow(c, static_cast<double>(n_ - d)) * std::pow(is, static_cast<int>(d));
        }
        std::vector<double> out(targets_.size());
        for (std::size_t k = 0; k < targets_.size(); ++k) {
            cplx amp{0.0, 0.0};
            for (std::size_t d = 0; d <= n_; ++d) amp += weight[d] * t[k * (n_ + 1) + d];
            out[k] = std::norm(amp);
        }
        return out;
    }

 private:
    const std::vector<double>& energies_;
    std::size_t n_;
    const std::vector<std::uint64_t>& targets_;
};

std::vector<std::uint64_t> unique_targets(std::vector<std::uint64_t> targets, std::uint64_t size) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    if (!targets.empty() && targets.back() >= size) {
        throw DimensionError("basis index " + std::to_string(targets.back()) + " out of range for " +
                             std::to_string(size) + " amplitudes");
    }
    return targets;
}

}  // namespace

void QaoaParams::validate() const {
    if (gammas.empty() || gammas.size() != betas.size()) {
        throw ParameterError("QAOA needs p >= 1 gammas and the same number of betas");
    }
}

StateVector qaoa_state(const IsingModel& ising, const QaoaParams& params, std::size_t max_qubits) {
    params.validate();
    const std::size_t n = ising.num_spins();
    check_cap(n, max_qubits);
    const auto energies = centered_energies(ising, max_qubits);
    StateVector a(energies.size(), cplx{std::pow(2.0, -0.5 * static_cast<double>(n)), 0.0});
    for (std::size_t layer = 0; layer < params.p(); ++layer) {
        apply_phase(a, energies, params.gammas[layer]);
        apply_mixer(a, n, params.betas[layer]);
    }
    return a;
}

double expectation(const StateVector& state, const IsingModel& ising) {
    const std::size_t n = ising.num_spins();
    if (n >= 63 || state.size() != (std::uint64_t{1} << n)) {
        throw DimensionError("state size does not match a " + std::to_string(n) + "-qubit model");
    }
    return ising.offset() + centered_expectation(state, centered_energies(ising, n));
}

double probability_of_set(const StateVector& state, const std::vector<std::uint64_t>& targets) {
    double p = 0.0;
    for (auto z : unique_targets(targets, state.size())) p += std::norm(state[z]);
    return p;
}

LandscapeGrid scan_landscape(const IsingModel& ising, const std::vector<std::uint64_t>& optimal_set,
                             const GridSpec& spec) {
    const std::size_t n = ising.num_spins();
    check_cap(n, spec.max_qubits);
    if (spec.gamma_points == 0 || spec.beta_points == 0) throw ParameterError("grid needs at least one point per axis");
    const auto targets = unique_targets(optimal_set, std::uint64_t{1} << n);

    LandscapeGrid g;
    g.num_qubits = n;
    g.method = spec.method;
    if (g.method == ScanMethod::automatic) {
        g.method = n <= kAutoStatevectorLimit ? ScanMethod::statevector : ScanMethod::closed_form;
    }
    g.q_max = ising.max_abs_coefficient(spec.qmax_includes_fields);
    const double q = g.q_max > 0.0 ? g.q_max : 1.0;
    g.gamma_axis = cell_axis(-std::numbers::pi / q, spec.gamma_points);
    g.beta_axis = cell_axis(-std::numbers::pi / 2.0, spec.beta_points);
    const std::size_t cells = spec.gamma_points * spec.beta_points;
    g.energy.assign(cells, 0.0);
    g.p_opt.assign(cells, 0.0);
    g.p_opt_max.assign(cells, 0.0);

    const auto energies = centered_energies(ising, spec.max_qubits);
    const double offset = ising.offset();

    if (g.method == ScanMethod::statevector) {
        const double amp0 = std::pow(2.0, -0.5 * static_cast<double>(n));
        detail::parallel_ranges(spec.gamma_points, spec.workers, 1, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
            StateVector phased(energies.size()), a;
            for (std::uint64_t gi = begin; gi < end; ++gi) {
                std::fill(phased.begin(), phased.end(), cplx{amp0, 0.0});
                apply_phase(phased, energies, g.gamma_axis[gi]);
                for (std::size_t bi = 0; bi < spec.beta_points; ++bi) {
                    a = phased;
                    apply_mixer(a, n, g.beta_axis[bi]);
                    const auto cell = g.index(gi, bi);
                    g.energy[cell] = offset + centered_expectation(a, energies);
                    for (auto z : targets) {
                        const double p = std::norm(a[z]);
                        g.p_opt[cell] += p;
                        g.p_opt_max[cell] = std::max(g.p_opt_max[cell], p);
                    }
                }
            }
        });
    } else {
        const ClosedFormP1 closed(ising);
        const DistanceBuckets buckets(energies, n, targets);
        detail::parallel_ranges(spec.gamma_points, spec.workers, 1, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
            for (std::uint64_t gi = begin; gi < end; ++gi) {
                const auto coeff = closed.at(g.gamma_axis[gi]);
                const auto t = targets.empty() ? std::vector<cplx>{} : buckets.at(g.gamma_axis[gi]);
                for (std::size_t bi = 0; bi < spec.beta_points; ++bi) {
                    const double b = g.beta_axis[bi];
                    const double s2 = std::sin(2.0 * b);
                    const auto cell = g.index(gi, bi);
                    g.energy[cell] = offset + s2 * coeff.a + std::sin(4.0 * b) * coeff.b + s2 * s2 * coeff.c;
                    if (targets.empty()) continue;
                    for (double p : buckets.probabilities(t, b)) {
                        g.p_opt[cell] += p;
                        g.p_opt_max[cell] = std::max(g.p_opt_max[cell], p);
                    }
                }
            }
        });
    }

    std::size_t best = 0;
    for (std::size_t cell = 1; cell < cells; ++cell) {
        if (g.energy[cell] < g.energy[best]) best = cell;
    }
    g.min_cell = {best / spec.beta_points, best % spec.beta_points};
    return g;
}

double cop(double p_opt, std::size_t num_qubits) {
    if (!(p_opt >= 0.0 && p_opt <= 1.0)) throw ParameterError("probability must lie in [0, 1]");
    return std::ldexp(p_opt, static_cast<int>(num_qubits));
}

CopPoint cop_at_minimum(const EncodedProblem& encoded, const OracleResult& oracle, const GridSpec& spec) {
    const auto targets = optimal_states(encoded, oracle, {.max_vars = spec.max_qubits});
    const auto g = scan_landscape(to_ising(encoded.model), targets, spec);
    CopPoint out;
    out.size = size_of(encoded.instance);
    out.instance_seed = seed_of(encoded.instance);
    out.num_qubits = g.num_qubits;
    out.gamma = g.gamma_axis[g.min_cell.first];
    out.beta = g.beta_axis[g.min_cell.second];
    out.energy = g.min_energy();
    out.p_opt = g.p_opt_at_min();
    out.p_opt_max = g.p_opt_max[g.index(g.min_cell.first, g.min_cell.second)];
    out.cop = cop(std::min(out.p_opt, 1.0), out.num_qubits);
    return out;
}

const char* to_string(ScanMethod method) {
    switch (method) {
        case ScanMethod::automatic:
            return "auto";
        case ScanMethod::statevector:
            return "statevector";
        case ScanMethod::closed_form:
            return "closed-form";
    }
    return "?";
}

ScanMethod parse_scan_method(const std::string& text) {
    if (text == "auto") return ScanMethod::automatic;
    if (text == "statevector") return ScanMethod::statevector;
    if (text == "closed-form") return ScanMethod::closed_form;
    throw ParameterError("unknown scan method '" + text + "'");
}

}  // namespace uqubo
