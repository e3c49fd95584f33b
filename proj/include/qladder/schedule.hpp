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
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qladder/circuit.hpp"

namespace qladder {

/// Time model used for idle accounting:
///   - CX gates occupy one step each; steps are greedy as-soon-as-possible.
///   - Rotations, fixed single-qubit gates, inits and measurements take zero
///     time (they ride along between steps).
///   - All conditionals form a single terminal feedforward step.
///   - Register qubits are live from circuit start to circuit end; an
///     auxiliary qubit is live from its first CX step to its last (its
///     measurement follows immediately, after which it is dead).
struct Schedule {
    std::vector<std::vector<std::size_t>> cx_steps;  // instruction indices per step
    std::optional<std::vector<std::size_t>> conditional_step;

    struct Lifetime {
        std::size_t first_step = 0;  // 1-based; 0 = never scheduled
        std::size_t last_step = 0;
    };
    // Derived data kept so idle counting needs no second look at the circuit.
    std::vector<QubitRef> qubits;
    std::map<std::uint32_t, Lifetime> aux_lifetimes;
    std::vector<std::set<std::uint32_t>> occupied;           // per CX step
    std::set<std::uint32_t> registers_with_conditional;

    [[nodiscard]] std::size_t cx_depth() const { return cx_steps.size(); }
};

inline Schedule schedule_asap(const Circuit& c) {
    Schedule s;
    s.qubits = c.qubits;

    std::map<std::uint32_t, std::size_t> last_cx_step;
    std::vector<std::size_t> conditionals;

    for (std::size_t idx = 0; idx < c.instructions.size(); ++idx) {
        const Instruction& in = c.instructions[idx];
        switch (in.kind) {
            case InstrKind::Cx: {
                const std::size_t step =
                    std::max(last_cx_step[in.q0], last_cx_step[in.q1]) + 1;
                if (step > s.cx_steps.size()) {
                    s.cx_steps.emplace_back();
                    s.occupied.emplace_back();
                }
                s.cx_steps[step - 1].push_back(idx);
                s.occupied[step - 1].insert(in.q0);
                s.occupied[step - 1].insert(in.q1);
                last_cx_step[in.q0] = step;
                last_cx_step[in.q1] = step;
                for (auto q : {in.q0, in.q1}) {
                    if (c.role_of(q) != QubitRole::Auxiliary) continue;
                    auto& lt = s.aux_lifetimes[q];
                    if (lt.first_step == 0) lt.first_step = step;
                    lt.last_step = step;
                }
                break;
            }
            case InstrKind::Conditional:
                conditionals.push_back(idx);
                break;
            default:
                break;  // zero-duration
        }
    }
    if (!conditionals.empty()) {
        s.conditional_step = conditionals;
        for (auto idx : conditionals) {
            const auto q = c.instructions[idx].q0;
            if (c.role_of(q) == QubitRole::Register) s.registers_with_conditional.insert(q);
        }
    }
    return s;
}

/// Idle slots: per CX step, live qubits with no operation in that step; plus,
/// when a conditional step exists, register qubits that receive no conditional.
inline std::uint64_t count_idle(const Schedule& s) {
    std::uint64_t idle = 0;
    std::uint32_t num_registers = 0;
    for (const auto& q : s.qubits)
        if (q.role == QubitRole::Register) ++num_registers;

    for (std::size_t step = 1; step <= s.cx_steps.size(); ++step) {
        const auto& occ = s.occupied[step - 1];
        for (const auto& q : s.qubits) {
            bool live;
            if (q.role == QubitRole::Register) {
                live = true;
            } else {
                auto it = s.aux_lifetimes.find(q.index);
                live = it != s.aux_lifetimes.end() && it->second.first_step <= step &&
                       step <= it->second.last_step;
            }
            if (live && !occ.contains(q.index)) ++idle;
        }
    }
    if (s.conditional_step)
        idle += num_registers - static_cast<std::uint32_t>(s.registers_with_conditional.size());
    return idle;
}

inline std::uint64_t count_idle(const Circuit& c) { return count_idle(schedule_asap(c)); }

}  // namespace qladder
