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
#include <list>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qladder/circuit.hpp"

namespace qladder {

/// The two equivalent measurement-based CX primitives. plus_x entangles the
/// auxiliary with the target first, which is what lets one ladder's worth of
/// substitutions pack into two CX steps; zero_z is the mirrored construction
/// with the conditional landing on the control.
enum class PrimitiveVariant : std::uint8_t { PlusX, ZeroZ };

struct RewriteReport {
    std::vector<std::size_t> substituted_gates;  // indices into the input circuit
    std::size_t aux_added = 0;
    std::size_t conditionals_added = 0;

    enum class EventKind : std::uint8_t { FreePass, Spawn, Block, Cancel };
    struct CommuteEvent {
        EventKind kind;
        PauliKind pauli;
        std::uint32_t qubit;
        std::uint32_t bit;
    };
    std::vector<CommuteEvent> events;
    std::vector<std::size_t> classical_corrections;  // deferred rewrite only

    void merge(const RewriteReport& other) {
        substituted_gates.insert(substituted_gates.end(), other.substituted_gates.begin(),
                                 other.substituted_gates.end());
        aux_added += other.aux_added;
        conditionals_added += other.conditionals_added;
        events.insert(events.end(), other.events.begin(), other.events.end());
    }
};

namespace detail {

inline void emit_primitive(std::vector<Instruction>& out, PrimitiveVariant variant,
                           std::uint32_t control, std::uint32_t target, std::uint32_t aux,
                           std::uint32_t bit) {
    if (variant == PrimitiveVariant::PlusX) {
        out.push_back(Instruction::init(InitState::Plus, aux));
        out.push_back(Instruction::cx(aux, target));
        out.push_back(Instruction::cx(control, aux));
        out.push_back(Instruction::measure(MeasBasis::Z, aux, bit));
        out.push_back(Instruction::conditional(PauliKind::X, target, bit));
    } else {
        out.push_back(Instruction::init(InitState::Zero, aux));
        out.push_back(Instruction::cx(control, aux));
        out.push_back(Instruction::cx(aux, target));
        out.push_back(Instruction::measure(MeasBasis::X, aux, bit));
        out.push_back(Instruction::conditional(PauliKind::Z, control, bit));
    }
}

using InstrList = std::list<Instruction>;

inline bool same_conditional(const Instruction& a, const Instruction& b) {
    return a.kind == InstrKind::Conditional && b.kind == InstrKind::Conditional &&
           a.pauli == b.pauli && a.q0 == b.q0 && a.bit == b.bit;
}

/// True when a conditional Pauli passes this CX without picking up a twin.
inline bool cx_free_pass(const Instruction& cond, const Instruction& cx) {
    return (cond.pauli == PauliKind::X && cond.q0 == cx.q1) ||
           (cond.pauli == PauliKind::Z && cond.q0 == cx.q0);
}

/// The qubit a propagated twin lands on: X on control copies onto the target,
/// Z on target copies onto the control.
inline std::uint32_t cx_twin_qubit(const Instruction& cond, const Instruction& cx) {
    return cond.pauli == PauliKind::X ? cx.q1 : cx.q0;
}

/// Next non-conditional instruction touching `qubit` in [from, end).
inline InstrList::iterator next_op_on(InstrList::iterator from, InstrList::iterator end,
                                      std::uint32_t qubit) {
    for (auto it = from; it != end; ++it)
        if (it->kind != InstrKind::Conditional && it->touches(qubit)) return it;
    return end;
}

/// Moves the conditional at `cond_it` as far right as the propagation rules
/// permit, bounded by `bound`. A move through a CX that would strand the
/// spawned twin directly in front of its qubit's measurement is not taken;
/// the conditional halts in place instead (that placement is what realizes
/// the outcome-parity feedforward with single-bit conditionals). Identical
/// conditionals met along the way cancel in pairs; distinct conditionals
/// never reorder among themselves.
inline void commute_one(InstrList& list, InstrList::iterator cond_it, InstrList::iterator bound,
                        RewriteReport& report) {
    const Instruction cond = *cond_it;
    auto pos = list.erase(cond_it);
    auto insert_at = pos;  // settles after the last non-conditional it crossed
    std::vector<InstrList::iterator> spawned;
    bool annihilated = false;
    while (pos != bound) {
        const Instruction& j = *pos;
        if (j.kind == InstrKind::Conditional) {
            if (same_conditional(cond, j)) {
                list.erase(pos);
                report.events.push_back(
                    {RewriteReport::EventKind::Cancel, cond.pauli, cond.q0, cond.bit});
                annihilated = true;
                break;
            }
            ++pos;  // commutes, but does not justify moving past it
            continue;
        }
        if (!j.touches(cond.q0)) {
            ++pos;
            insert_at = pos;
            continue;
        }
        if (j.kind != InstrKind::Cx) break;  // rotation/measure/init on this qubit
        if (cx_free_pass(cond, j)) {
            report.events.push_back(
                {RewriteReport::EventKind::FreePass, cond.pauli, cond.q0, cond.bit});
            ++pos;
            insert_at = pos;
            continue;
        }
        // Propagation would spawn a twin.
        const std::uint32_t twin_qubit = cx_twin_qubit(cond, j);
        auto blocker = next_op_on(std::next(pos), bound, twin_qubit);
        if (blocker != bound && blocker->kind == InstrKind::Measure) {
            report.events.push_back(
                {RewriteReport::EventKind::Block, cond.pauli, cond.q0, cond.bit});
            break;  // halt just before this CX
        }
        report.events.push_back({RewriteReport::EventKind::Spawn, cond.pauli, twin_qubit, cond.bit});
        auto twin_it =
            list.insert(std::next(pos), Instruction::conditional(cond.pauli, twin_qubit, cond.bit));
        spawned.push_back(twin_it);
        pos = twin_it;
        insert_at = pos;  // the originator settles ahead of its twin
    }
    if (!annihilated) list.insert(insert_at, cond);
    // Twins walk after their originator settles, rightmost first, so each one
    // only ever meets already-settled conditionals.
    for (auto it = spawned.rbegin(); it != spawned.rend(); ++it)
        commute_one(list, *it, bound, report);
}

inline void commute_region(InstrList& list, InstrList::iterator begin, InstrList::iterator bound,
                           RewriteReport& report) {
    // Settle conditionals right to left so each one walks over already-settled
    // neighbours.
    std::vector<InstrList::iterator> conds;
    for (auto it = begin; it != bound; ++it)
        if (it->kind == InstrKind::Conditional) conds.push_back(it);
    for (auto rit = conds.rbegin(); rit != conds.rend(); ++rit)
        commute_one(list, *rit, bound, report);
}

struct LadderRun {
    std::size_t first_gate;
    std::size_t last_gate;
};

/// Splits a chained CX sequence into ladder runs. Gates must chain (each
/// control is the previous target); a gate whose target revisits a qubit the
/// current run already touched starts a new run (core 3's turn, core 2's
/// wrap).
inline std::vector<LadderRun> detect_runs(const Circuit& c) {
    for (const auto& in : c.instructions)
        if (in.kind != InstrKind::Cx)
            throw std::invalid_argument("rewrite expects a pure CX ladder circuit");
    std::vector<LadderRun> runs;
    if (c.instructions.empty()) return runs;
    std::set<std::uint32_t> touched = {c.instructions[0].q0, c.instructions[0].q1};
    std::size_t start = 0;
    for (std::size_t j = 1; j < c.instructions.size(); ++j) {
        const auto& prev = c.instructions[j - 1];
        const auto& cur = c.instructions[j];
        if (cur.q0 != prev.q1)
            throw std::invalid_argument(
                "too dense: CX sequence is not a ladder (gate " + std::to_string(j) +
                " does not start on the qubit where the previous gate ends)");
        if (touched.contains(cur.q1)) {
            runs.push_back({start, j - 1});
            start = j;
            touched = {cur.q0, cur.q1};
        } else {
            touched.insert(cur.q1);
        }
    }
    runs.push_back({start, c.instructions.size() - 1});
    return runs;
}

}  // namespace detail

/// Replaces the CX at `gate_index` with the five-instruction measurement-based
/// primitive on a freshly allocated auxiliary qubit and classical bit.
inline std::pair<Circuit, RewriteReport> substitute_cx(const Circuit& c, std::size_t gate_index,
                                                       PrimitiveVariant variant) {
    if (gate_index >= c.instructions.size())
        throw std::invalid_argument("gate index out of range");
    if (c.instructions[gate_index].kind != InstrKind::Cx)
        throw std::invalid_argument("instruction at index is not a CX");

    Circuit out = c;
    const std::uint32_t aux = out.add_auxiliary();
    const std::uint32_t bit = out.add_cbit();
    const Instruction gate = c.instructions[gate_index];

    std::vector<Instruction> prim;
    detail::emit_primitive(prim, variant, gate.q0, gate.q1, aux, bit);
    out.instructions.erase(out.instructions.begin() + static_cast<std::ptrdiff_t>(gate_index));
    out.instructions.insert(out.instructions.begin() + static_cast<std::ptrdiff_t>(gate_index),
                            prim.begin(), prim.end());

    RewriteReport report;
    report.substituted_gates.push_back(gate_index);
    report.aux_added = 1;
    report.conditionals_added = 1;
    return {std::move(out), report};
}

/// Moves every conditional Pauli as far toward the end of the circuit as the
/// propagation rules allow: X passes a CX it targets and copies onto the
/// target when it sits on the control; Z mirrors that (passes on the control,
/// copies onto the control when it sits on the target). Duplicate
/// conditionals on the same (qubit, bit, pauli) cancel in pairs.
inline std::pair<Circuit, RewriteReport> commute_conditionals(const Circuit& c) {
    Circuit out = c;
    detail::InstrList list(out.instructions.begin(), out.instructions.end());
    RewriteReport report;
    detail::commute_region(list, list.begin(), list.end(), report);
    out.instructions.assign(list.begin(), list.end());
    return {std::move(out), report};
}

/// Rewrites a ladder-structured unitary circuit into the shallow non-unitary
/// equivalent: substitutes every interior CX of each ladder run (all gates if
/// keep_ends is false), then commutes conditionals within their run.
inline std::pair<Circuit, RewriteReport> rewrite_ladder(const Circuit& c,
                                                        PrimitiveVariant variant = PrimitiveVariant::PlusX,
                                                        bool keep_ends = true) {
    const auto runs = detail::detect_runs(c);

    Circuit out;
    out.qubits = c.qubits;
    out.num_cbits = c.num_cbits;
    out.parameter_count = c.parameter_count;

    RewriteReport report;
    detail::InstrList assembled;

    for (const auto& run : runs) {
        std::vector<Instruction> region;
        for (std::size_t j = run.first_gate; j <= run.last_gate; ++j) {
            const bool is_end = j == run.first_gate || j == run.last_gate;
            if (keep_ends && is_end) {
                region.push_back(c.instructions[j]);
                continue;
            }
            const std::uint32_t aux = out.add_auxiliary();
            const std::uint32_t bit = out.add_cbit();
            detail::emit_primitive(region, variant, c.instructions[j].q0, c.instructions[j].q1, aux,
                                   bit);
            report.substituted_gates.push_back(j);
            ++report.aux_added;
        }
        detail::InstrList run_list(region.begin(), region.end());
        detail::commute_region(run_list, run_list.begin(), run_list.end(), report);
        assembled.splice(assembled.end(), run_list);
    }
    out.instructions.assign(assembled.begin(), assembled.end());
    report.conditionals_added = out.count(InstrKind::Conditional);
    return {std::move(out), report};
}

/// Deferred-measurement variant: every measurement is pushed to the end of
/// the circuit. Conditionals that still precede quantum operations on their
/// qubit become coherent controlled gates from the (still live) auxiliary;
/// trailing conditionals stay classical and are flagged as corrections.
inline std::pair<Circuit, RewriteReport> rewrite_deferred(const Circuit& c) {
    RewriteReport report;
    if (c.count(InstrKind::Measure) == 0) return {c, report};

    std::vector<std::uint32_t> bit_source(c.num_cbits, 0);  // bit -> measured qubit
    for (const auto& in : c.instructions)
        if (in.kind == InstrKind::Measure) bit_source[in.bit] = in.q0;

    auto has_later_quantum_op = [&](std::size_t idx, std::uint32_t qubit) {
        for (std::size_t k = idx + 1; k < c.instructions.size(); ++k) {
            const auto& in = c.instructions[k];
            if (in.kind == InstrKind::Conditional) continue;
            if (in.touches(qubit)) return true;
        }
        return false;
    };

    Circuit out;
    out.qubits = c.qubits;
    out.num_cbits = c.num_cbits;
    out.parameter_count = c.parameter_count;

    std::vector<Instruction> measures;
    std::vector<Instruction> tail;

    for (std::size_t idx = 0; idx < c.instructions.size(); ++idx) {
        const Instruction& in = c.instructions[idx];
        switch (in.kind) {
            case InstrKind::Measure:
                if (in.basis == MeasBasis::X)
                    out.add(Instruction::gate1(Gate1Name::H, in.q0));
                measures.push_back(Instruction::measure(MeasBasis::Z, in.q0, in.bit));
                break;
            case InstrKind::Conditional: {
                if (!has_later_quantum_op(idx, in.q0)) {
                    tail.push_back(in);
                    break;
                }
                const std::uint32_t aux = bit_source[in.bit];
                if (in.pauli == PauliKind::X) {
                    out.add(Instruction::cx(aux, in.q0));
                } else {
                    out.add(Instruction::gate1(Gate1Name::H, in.q0));
                    out.add(Instruction::cx(aux, in.q0));
                    out.add(Instruction::gate1(Gate1Name::H, in.q0));
                }
                break;
            }
            default:
                out.add(in);
                break;
        }
    }
    for (const auto& m : measures) out.add(m);
    for (const auto& t : tail) {
        report.classical_corrections.push_back(out.instructions.size());
        out.add(t);
    }
    report.conditionals_added = tail.size();
    return {std::move(out), report};
}

}  // namespace qladder
