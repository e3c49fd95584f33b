// Copyright 2026 The qladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qladder/circuit.hpp"
#include "qladder/rng.hpp"

namespace qladder {

using cplx = std::complex<double>;

/// Dense statevector over the currently live qubits. `qubit_order[p]` maps
/// bit position p of the amplitude index to a circuit qubit id, so basis
/// index i carries qubit_order[p] in state bit_p(i).
struct StateVector {
    std::vector<cplx> amps;
    std::vector<std::uint32_t> qubit_order;

    [[nodiscard]] std::size_t dim() const { return amps.size(); }
    [[nodiscard]] std::size_t num_qubits() const { return qubit_order.size(); }

    static StateVector zeros(std::uint32_t n) {
        StateVector s;
        s.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
        s.amps[0] = 1.0;
        s.qubit_order.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) s.qubit_order[i] = i;
        return s;
    }

    static StateVector from_amplitudes(std::vector<cplx> amps) {
        StateVector s;
        std::size_t n = 0;
        while ((std::size_t{1} << n) < amps.size()) ++n;
        if ((std::size_t{1} << n) != amps.size())
            throw std::invalid_argument("amplitude count is not a power of two");
        s.amps = std::move(amps);
        s.qubit_order.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.qubit_order[i] = static_cast<std::uint32_t>(i);
        return s;
    }

    [[nodiscard]] std::size_t position_of(std::uint32_t qubit) const {
        for (std::size_t p = 0; p < qubit_order.size(); ++p)
            if (qubit_order[p] == qubit) return p;
        throw std::invalid_argument("qubit " + std::to_string(qubit) + " is not live");
    }

    [[nodiscard]] double norm_sq() const {
        double n = 0.0;
        for (const auto& a : amps) n += std::norm(a);
        return n;
    }

    void scale(double f) {
        for (auto& a : amps) a *= f;
    }
};

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    cplx o{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) o += std::conj(a.amps[i]) * b.amps[i];
    return o;
}

/// |<a|b>|^2; global-phase insensitive.
inline double state_fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

namespace sv {

inline void apply_1q(StateVector& s, std::size_t pos, cplx m00, cplx m01, cplx m10, cplx m11) {
    const std::size_t stride = std::size_t{1} << pos;
    for (std::size_t base = 0; base < s.dim(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx a0 = s.amps[i];
            const cplx a1 = s.amps[i + stride];
            s.amps[i] = m00 * a0 + m01 * a1;
            s.amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

inline void apply_rotation(StateVector& s, std::size_t pos, RotationAxis axis, double theta) {
    const double c = std::cos(theta / 2.0);
    const double d = std::sin(theta / 2.0);
    switch (axis) {
        case RotationAxis::X:
            apply_1q(s, pos, {c, 0}, {0, -d}, {0, -d}, {c, 0});
            break;
        case RotationAxis::Y:
            apply_1q(s, pos, {c, 0}, {-d, 0}, {d, 0}, {c, 0});
            break;
        case RotationAxis::Z:
            apply_1q(s, pos, {c, -d}, {0, 0}, {0, 0}, {c, d});
            break;
    }
}

inline void apply_gate1(StateVector& s, std::size_t pos, Gate1Name g) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    switch (g) {
        case Gate1Name::X:
            apply_1q(s, pos, {0, 0}, {1, 0}, {1, 0}, {0, 0});
            break;
        case Gate1Name::Z:
            apply_1q(s, pos, {1, 0}, {0, 0}, {0, 0}, {-1, 0});
            break;
        case Gate1Name::H:
            apply_1q(s, pos, {inv_sqrt2, 0}, {inv_sqrt2, 0}, {inv_sqrt2, 0}, {-inv_sqrt2, 0});
            break;
    }
}

inline void apply_pauli(StateVector& s, std::size_t pos, PauliKind p) {
    apply_gate1(s, pos, p == PauliKind::X ? Gate1Name::X : Gate1Name::Z);
}

/// Pauli Y, needed only for noise injection.
inline void apply_y(StateVector& s, std::size_t pos) {
    apply_1q(s, pos, {0, 0}, {0, -1}, {0, 1}, {0, 0});
}

inline void apply_cx(StateVector& s, std::size_t control_pos, std::size_t target_pos) {
    const std::size_t cmask = std::size_t{1} << control_pos;
    const std::size_t tmask = std::size_t{1} << target_pos;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(s.amps[i], s.amps[i | tmask]);
    }
}

/// Tensors a fresh qubit (|0> or |+>) onto the high bit position.
inline void append_qubit(StateVector& s, std::uint32_t qubit, InitState st) {
    const std::size_t d = s.dim();
    std::vector<cplx> out(2 * d);
    if (st == InitState::Zero) {
        for (std::size_t i = 0; i < d; ++i) out[i] = s.amps[i];
    } else {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        for (std::size_t i = 0; i < d; ++i) {
            out[i] = s.amps[i] * inv_sqrt2;
            out[i + d] = s.amps[i] * inv_sqrt2;
        }
    }
    s.amps = std::move(out);
    s.qubit_order.push_back(qubit);
}

/// Probability that the qubit at `pos` reads `outcome` under a Z measurement.
inline double outcome_probability(const StateVector& s, std::size_t pos, int outcome) {
    const std::size_t mask = std::size_t{1} << pos;
    double p = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (((i & mask) != 0) == (outcome != 0)) p += std::norm(s.amps[i]);
    return p;
}

/// Projects onto `outcome`, removes the qubit from the state (its
/// post-measurement factor is a product state) and returns the unnormalized
/// projection weight. Caller decides how to renormalize.
inline double project_and_drop(StateVector& s, std::size_t pos, int outcome) {
    const std::size_t mask = std::size_t{1} << pos;
    const std::size_t low = mask - 1;
    std::vector<cplx> out(s.dim() / 2);
    double weight = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::size_t i = (j & low) | ((j & ~low) << 1) | (outcome ? mask : 0);
        out[j] = s.amps[i];
        weight += std::norm(out[j]);
    }
    s.amps = std::move(out);
    s.qubit_order.erase(s.qubit_order.begin() + static_cast<std::ptrdiff_t>(pos));
    return weight;
}

/// Reorders live qubits so qubit_order becomes ascending. Used to present
/// final register states in a canonical layout.
inline void sort_qubit_order(StateVector& s) {
    // Selection-sort with adjacent-bit swaps; states here are small.
    const std::size_t n = s.qubit_order.size();
    for (std::size_t target = 0; target < n; ++target) {
        std::size_t best = target;
        for (std::size_t p = target + 1; p < n; ++p)
            if (s.qubit_order[p] < s.qubit_order[best]) best = p;
        for (std::size_t p = best; p > target; --p) {
            // swap bit positions p and p-1
            const std::size_t m0 = std::size_t{1} << (p - 1);
            const std::size_t m1 = std::size_t{1} << p;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                const bool b0 = i & m0;
                const bool b1 = i & m1;
                if (b0 && !b1) std::swap(s.amps[i], s.amps[(i ^ m0) | m1]);
            }
            std::swap(s.qubit_order[p], s.qubit_order[p - 1]);
        }
    }
}

}  // namespace sv

/// Haar-random single-qubit product state on n qubits.
inline StateVector random_product_state(std::uint32_t n, Rng& rng) {
    StateVector s = StateVector::zeros(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double theta = std::acos(z);
        sv::apply_1q(s, q, {std::cos(theta / 2), 0},
                     {-std::sin(theta / 2) * std::cos(phi), std::sin(theta / 2) * std::sin(phi)},
                     {std::sin(theta / 2) * std::cos(phi), std::sin(theta / 2) * std::sin(phi)},
                     {std::cos(theta / 2), 0});
    }
    return s;
}

/// Haar-random state of the full n-qubit register (generically entangled).
inline StateVector random_entangled_state(std::uint32_t n, Rng& rng) {
    StateVector s = StateVector::zeros(n);
    for (auto& a : s.amps) a = cplx{rng.normal(), rng.normal()};
    s.scale(1.0 / std::sqrt(s.norm_sq()));
    return s;
}

}  // namespace qladder
