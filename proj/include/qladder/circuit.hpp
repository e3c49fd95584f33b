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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qladder {

/// Role of a qubit inside a dynamic circuit. Register qubits carry the
/// payload state from circuit start to end; auxiliary qubits are born at an
/// Init instruction and die at their measurement.
enum class QubitRole : std::uint8_t { Register, Auxiliary };

enum class RotationAxis : std::uint8_t { X, Y, Z };
enum class Gate1Name : std::uint8_t { X, Z, H };
enum class InitState : std::uint8_t { Zero, Plus };
enum class MeasBasis : std::uint8_t { Z, X };
enum class PauliKind : std::uint8_t { X, Z };

enum class InstrKind : std::uint8_t {
    Rotation,     // parameterized single-qubit rotation
    Gate1,        // fixed single-qubit gate
    Cx,           // controlled-X
    Init,         // auxiliary qubit preparation
    Measure,      // projective measurement writing one classical bit
    Conditional,  // single-qubit Pauli applied iff a classical bit is 1
};

struct QubitRef {
    std::uint32_t index = 0;
    QubitRole role = QubitRole::Register;

    friend bool operator==(const QubitRef&, const QubitRef&) = default;
};

/// One circuit instruction. A flat tagged struct keeps serialization and
/// rewriting simple; only the fields relevant to `kind` are meaningful.
struct Instruction {
    InstrKind kind = InstrKind::Cx;
    std::uint32_t q0 = 0;  // main qubit; control for Cx
    std::uint32_t q1 = 0;  // target for Cx
    std::uint32_t param = 0;
    std::uint32_t bit = 0;
    RotationAxis axis = RotationAxis::Y;
    Gate1Name gate = Gate1Name::X;
    InitState state = InitState::Zero;
    MeasBasis basis = MeasBasis::Z;
    PauliKind pauli = PauliKind::X;

    static Instruction rotation(RotationAxis axis, std::uint32_t qubit, std::uint32_t param) {
        Instruction i;
        i.kind = InstrKind::Rotation;
        i.axis = axis;
        i.q0 = qubit;
        i.param = param;
        return i;
    }
    static Instruction gate1(Gate1Name name, std::uint32_t qubit) {
        Instruction i;
        i.kind = InstrKind::Gate1;
        i.gate = name;
        i.q0 = qubit;
        return i;
    }
    static Instruction cx(std::uint32_t control, std::uint32_t target) {
        Instruction i;
        i.kind = InstrKind::Cx;
        i.q0 = control;
        i.q1 = target;
        return i;
    }
    static Instruction init(InitState state, std::uint32_t qubit) {
        Instruction i;
        i.kind = InstrKind::Init;
        i.state = state;
        i.q0 = qubit;
        return i;
    }
    static Instruction measure(MeasBasis basis, std::uint32_t qubit, std::uint32_t bit) {
        Instruction i;
        i.kind = InstrKind::Measure;
        i.basis = basis;
        i.q0 = qubit;
        i.bit = bit;
        return i;
    }
    static Instruction conditional(PauliKind pauli, std::uint32_t qubit, std::uint32_t bit) {
        Instruction i;
        i.kind = InstrKind::Conditional;
        i.pauli = pauli;
        i.q0 = qubit;
        i.bit = bit;
        return i;
    }

    [[nodiscard]] bool touches(std::uint32_t q) const {
        if (kind == InstrKind::Cx) return q0 == q || q1 == q;
        return q0 == q;
    }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Dynamic-circuit IR: an ordered instruction list over register and
/// auxiliary qubits plus classical bits. Parameter values are bound at
/// simulation time; the circuit stores only parameter ids.
struct Circuit {
    std::vector<QubitRef> qubits;
    std::uint32_t num_cbits = 0;
    std::vector<Instruction> instructions;
    std::uint32_t parameter_count = 0;

    static Circuit with_registers(std::uint32_t n) {
        Circuit c;
        c.qubits.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) c.qubits.push_back({i, QubitRole::Register});
        return c;
    }

    [[nodiscard]] std::uint32_t register_count() const {
        std::uint32_t n = 0;
        for (const auto& q : qubits)
            if (q.role == QubitRole::Register) ++n;
        return n;
    }

    [[nodiscard]] std::uint32_t auxiliary_count() const {
        return static_cast<std::uint32_t>(qubits.size()) - register_count();
    }

    /// Appends a fresh auxiliary qubit and returns its index.
    std::uint32_t add_auxiliary() {
        std::uint32_t next = 0;
        for (const auto& q : qubits) next = std::max(next, q.index + 1);
        qubits.push_back({next, QubitRole::Auxiliary});
        return next;
    }

    std::uint32_t add_cbit() { return num_cbits++; }

    void add(const Instruction& i) { instructions.push_back(i); }

    [[nodiscard]] std::size_t count(InstrKind kind) const {
        std::size_t n = 0;
        for (const auto& i : instructions)
            if (i.kind == kind) ++n;
        return n;
    }

    [[nodiscard]] bool has_qubit(std::uint32_t index) const {
        for (const auto& q : qubits)
            if (q.index == index) return true;
        return false;
    }

    [[nodiscard]] QubitRole role_of(std::uint32_t index) const {
        for (const auto& q : qubits)
            if (q.index == index) return q.role;
        throw std::invalid_argument("unknown qubit index " + std::to_string(index));
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Outcome of `validate`: success, or the first violated invariant together
/// with the offending instruction index.
struct ValidationReport {
    bool ok = true;
    std::string message;
    std::optional<std::size_t> instruction;

    static ValidationReport success() { return {}; }
    static ValidationReport failure(std::string msg, std::size_t index) {
        return {false, std::move(msg), index};
    }
    static ValidationReport failure(std::string msg) { return {false, std::move(msg), std::nullopt}; }
};

inline ValidationReport validate(const Circuit& c) {
    // Register indices contiguous from 0, all indices unique.
    std::vector<std::uint32_t> reg_indices;
    std::vector<std::uint32_t> seen;
    for (const auto& q : c.qubits) {
        for (auto s : seen)
            if (s == q.index) return ValidationReport::failure("duplicate qubit index");
        seen.push_back(q.index);
        if (q.role == QubitRole::Register) reg_indices.push_back(q.index);
    }
    std::sort(reg_indices.begin(), reg_indices.end());
    for (std::size_t i = 0; i < reg_indices.size(); ++i)
        if (reg_indices[i] != i) return ValidationReport::failure("register indices not contiguous from 0");

    std::vector<int> bit_writes(c.num_cbits, 0);
    struct QState {
        bool initialized = false;  // aux only
        bool measured = false;
    };
    std::vector<QState> qs(seen.empty() ? 0 : 1 + *std::max_element(seen.begin(), seen.end()));

    for (std::size_t idx = 0; idx < c.instructions.size(); ++idx) {
        const Instruction& in = c.instructions[idx];
        const std::uint32_t ops[2] = {in.q0, in.q1};
        const int nops = in.kind == InstrKind::Cx ? 2 : 1;
        for (int k = 0; k < nops; ++k) {
            if (!c.has_qubit(ops[k]))
                return ValidationReport::failure("unknown qubit operand", idx);
            if (qs[ops[k]].measured)
                return ValidationReport::failure("use-after-measure", idx);
            if (in.kind != InstrKind::Init && c.role_of(ops[k]) == QubitRole::Auxiliary &&
                !qs[ops[k]].initialized)
                return ValidationReport::failure("auxiliary used before init", idx);
        }
        switch (in.kind) {
            case InstrKind::Cx:
                if (in.q0 == in.q1) return ValidationReport::failure("self-loop", idx);
                break;
            case InstrKind::Rotation:
                if (in.param >= c.parameter_count)
                    return ValidationReport::failure("parameter id out of range", idx);
                break;
            case InstrKind::Init:
                if (c.role_of(in.q0) != QubitRole::Auxiliary)
                    return ValidationReport::failure("init on register qubit", idx);
                if (qs[in.q0].initialized)
                    return ValidationReport::failure("double init", idx);
                qs[in.q0].initialized = true;
                break;
            case InstrKind::Measure:
                if (in.bit >= c.num_cbits)
                    return ValidationReport::failure("unknown classical bit", idx);
                if (bit_writes[in.bit]++)
                    return ValidationReport::failure("bit written twice", idx);
                qs[in.q0].measured = true;
                break;
            case InstrKind::Conditional:
                if (in.bit >= c.num_cbits)
                    return ValidationReport::failure("unknown classical bit", idx);
                if (bit_writes[in.bit] == 0)
                    return ValidationReport::failure("read-before-write", idx);
                break;
            case InstrKind::Gate1:
                break;
        }
    }
    return ValidationReport::success();
}

}  // namespace qladder
