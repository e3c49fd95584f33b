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

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qladder/circuit.hpp"
#include "qladder/rewrite.hpp"

namespace qladder {

enum class CoreKind : std::uint8_t { Core1 = 1, Core2 = 2, Core3 = 3 };
enum class AnsatzForm : std::uint8_t { Unitary, NonUnitary, Deferred };
enum class RotationSet : std::uint8_t { SingleY, TripleXYZ };

struct AnsatzSpec {
    std::uint32_t n = 4;
    std::uint32_t layers = 1;
    CoreKind core = CoreKind::Core1;
    RotationSet rotations = RotationSet::SingleY;
    AnsatzForm form = AnsatzForm::Unitary;

    [[nodiscard]] std::uint32_t parameter_count() const {
        const std::uint32_t per_layer = rotations == RotationSet::SingleY ? n : 3 * n;
        return per_layer * (layers + 1);
    }
};

/// Builds the entangling core on n register qubits.
///   core 1: descending CX ladder, depth n-1
///   core 2: core 1 plus the cyclic wrap CX(n-1 -> 0), depth n
///   core 3: descending ladder then ascending ladder (controls leading both
///           ways), depth 2(n-1)
inline Circuit build_core(CoreKind kind, std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("core width must be at least 3");
    Circuit c = Circuit::with_registers(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) c.add(Instruction::cx(i, i + 1));
    switch (kind) {
        case CoreKind::Core1:
            break;
        case CoreKind::Core2:
            c.add(Instruction::cx(n - 1, 0));
            break;
        case CoreKind::Core3:
            for (std::uint32_t i = n - 1; i >= 1; --i) c.add(Instruction::cx(i, i - 1));
            break;
    }
    return c;
}

namespace detail {

/// Splices a (possibly rewritten) core into an ansatz under construction,
/// renumbering its auxiliary qubits and classical bits into the layer's slot.
inline void splice_core(Circuit& ansatz, const Circuit& core, std::uint32_t n,
                        std::uint32_t aux_offset, std::uint32_t bit_offset) {
    for (Instruction in : core.instructions) {
        if (in.q0 >= n) in.q0 += aux_offset;
        if (in.kind == InstrKind::Cx && in.q1 >= n) in.q1 += aux_offset;
        if (in.kind == InstrKind::Measure || in.kind == InstrKind::Conditional)
            in.bit += bit_offset;
        ansatz.add(in);
    }
}

}  // namespace detail

/// Assembles the layered ansatz: L repetitions of (rotation layer, core),
/// then one final rotation layer. Parameter ids run layer-major,
/// qubit-minor. Non-unitary and deferred forms rewrite the core before
/// assembly; each layer gets its own auxiliary qubits and classical bits.
inline Circuit build_ansatz(const AnsatzSpec& spec) {
    if (spec.layers < 1) throw std::invalid_argument("layer count must be positive");
    Circuit core = build_core(spec.core, spec.n);
    if (spec.form != AnsatzForm::Unitary) {
        core = rewrite_ladder(core, PrimitiveVariant::PlusX, true).first;
        if (spec.form == AnsatzForm::Deferred) core = rewrite_deferred(core).first;
    }
    const std::uint32_t aux_per_layer = core.auxiliary_count();
    const std::uint32_t bits_per_layer = core.num_cbits;

    Circuit ansatz = Circuit::with_registers(spec.n);
    ansatz.parameter_count = spec.parameter_count();
    for (std::uint32_t layer = 0; layer < spec.layers; ++layer)
        for (std::uint32_t a = 0; a < aux_per_layer; ++a) ansatz.add_auxiliary();
    ansatz.num_cbits = bits_per_layer * spec.layers;

    std::uint32_t next_param = 0;
    auto rotation_layer = [&] {
        for (std::uint32_t q = 0; q < spec.n; ++q) {
            if (spec.rotations == RotationSet::SingleY) {
                ansatz.add(Instruction::rotation(RotationAxis::Y, q, next_param++));
            } else {
                ansatz.add(Instruction::rotation(RotationAxis::X, q, next_param++));
                ansatz.add(Instruction::rotation(RotationAxis::Y, q, next_param++));
                ansatz.add(Instruction::rotation(RotationAxis::Z, q, next_param++));
            }
        }
    };

    for (std::uint32_t layer = 0; layer < spec.layers; ++layer) {
        rotation_layer();
        detail::splice_core(ansatz, core, spec.n, layer * aux_per_layer, layer * bits_per_layer);
    }
    rotation_layer();
    return ansatz;
}

inline std::string to_string(CoreKind k) { return "core" + std::to_string(static_cast<int>(k)); }

}  // namespace qladder
