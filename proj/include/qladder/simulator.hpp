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
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qladder/circuit.hpp"
#include "qladder/parallel.hpp"
#include "qladder/statevector.hpp"

namespace qladder {

/// One measurement-outcome branch of a dynamic-circuit run: the outcome bits
/// in measurement order, the branch probability, and the final state of the
/// register qubits (auxiliaries are traced out at their measurement).
struct Branch {
    std::vector<std::uint8_t> outcomes;
    double probability = 1.0;
    StateVector state;
};

struct RunOptions {
    std::vector<double> params;
    // Optional per-instruction hook (instruction index, live state); used by
    // tests to check invariants such as normalization.
    std::function<void(std::size_t, const StateVector&)> trace;
};

namespace detail {

constexpr double kBranchPruneThreshold = 1e-12;

struct SimContext {
    const Circuit& circuit;
    const RunOptions& opts;
    const std::vector<std::uint8_t>* forced = nullptr;  // branch mode
    Rng* rng = nullptr;                                 // sample mode
    bool enumerate = false;
};

inline void apply_unitary_instr(const Instruction& in, StateVector& state,
                                const std::vector<double>& params) {
    switch (in.kind) {
        case InstrKind::Rotation:
            sv::apply_rotation(state, state.position_of(in.q0), in.axis, params.at(in.param));
            break;
        case InstrKind::Gate1:
            sv::apply_gate1(state, state.position_of(in.q0), in.gate);
            break;
        case InstrKind::Cx:
            sv::apply_cx(state, state.position_of(in.q0), state.position_of(in.q1));
            break;
        default:
            throw std::logic_error("not a unitary instruction");
    }
}

inline Branch finalize(const SimContext& ctx, StateVector state, std::vector<std::uint8_t> outcomes,
                       double probability) {
    for (auto q : state.qubit_order)
        if (ctx.circuit.role_of(q) == QubitRole::Auxiliary)
            throw std::runtime_error("auxiliary qubit " + std::to_string(q) +
                                     " still live at end of circuit (missing measurement)");
    sv::sort_qubit_order(state);
    return Branch{std::move(outcomes), probability, std::move(state)};
}

// Depth-first walk over instructions; forks at measurements in enumerate mode.
inline void walk(const SimContext& ctx, std::size_t from, StateVector state,
                 std::vector<std::uint8_t> bits, std::vector<std::uint8_t> outcomes,
                 double probability, std::vector<Branch>& sink) {
    const auto& instrs = ctx.circuit.instructions;
    for (std::size_t idx = from; idx < instrs.size(); ++idx) {
        const Instruction& in = instrs[idx];
        switch (in.kind) {
            case InstrKind::Rotation:
            case InstrKind::Gate1:
            case InstrKind::Cx:
                apply_unitary_instr(in, state, ctx.opts.params);
                break;
            case InstrKind::Init:
                sv::append_qubit(state, in.q0, in.state);
                break;
            case InstrKind::Conditional:
                if (bits[in.bit]) sv::apply_pauli(state, state.position_of(in.q0), in.pauli);
                break;
            case InstrKind::Measure: {
                const std::size_t pos = state.position_of(in.q0);
                if (in.basis == MeasBasis::X) sv::apply_gate1(state, pos, Gate1Name::H);
                if (ctx.enumerate) {
                    const double p1 = sv::outcome_probability(state, pos, 1);
                    const double p0 = 1.0 - p1;
                    for (int outcome : {0, 1}) {
                        const double p = outcome ? p1 : p0;
                        if (p <= kBranchPruneThreshold) continue;
                        StateVector next = state;
                        const double w = sv::project_and_drop(next, pos, outcome);
                        next.scale(1.0 / std::sqrt(w));
                        auto next_bits = bits;
                        next_bits[in.bit] = static_cast<std::uint8_t>(outcome);
                        auto next_outcomes = outcomes;
                        next_outcomes.push_back(static_cast<std::uint8_t>(outcome));
                        if (ctx.opts.trace) ctx.opts.trace(idx, next);
                        walk(ctx, idx + 1, std::move(next), std::move(next_bits),
                             std::move(next_outcomes), probability * p, sink);
                    }
                    return;
                }
                int outcome;
                if (ctx.forced) {
                    if (outcomes.size() >= ctx.forced->size())
                        throw std::invalid_argument("forced outcome list too short");
                    outcome = (*ctx.forced)[outcomes.size()];
                } else {
                    const double p1 = sv::outcome_probability(state, pos, 1);
                    outcome = ctx.rng->uniform() < p1 ? 1 : 0;
                }
                const double w = sv::project_and_drop(state, pos, outcome);
                if (w <= kBranchPruneThreshold)
                    throw std::runtime_error("probability underflow: branch is impossible");
                state.scale(1.0 / std::sqrt(w));
                probability *= w;
                bits[in.bit] = static_cast<std::uint8_t>(outcome);
                outcomes.push_back(static_cast<std::uint8_t>(outcome));
                break;
            }
        }
        if (ctx.opts.trace && in.kind != InstrKind::Measure) ctx.opts.trace(idx, state);
    }
    sink.push_back(finalize(ctx, std::move(state), std::move(outcomes), probability));
}

inline StateVector prepare_input(const Circuit& c, const StateVector* input) {
    const std::uint32_t n = c.register_count();
    if (!input) return StateVector::zeros(n);
    if (input->dim() != (std::size_t{1} << n))
        throw std::invalid_argument("input dimension does not match register count");
    StateVector s = *input;
    s.qubit_order.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) s.qubit_order[i] = i;
    return s;
}

inline void check_params(const Circuit& c, const RunOptions& opts) {
    if (opts.params.size() != c.parameter_count)
        throw std::invalid_argument("expected " + std::to_string(c.parameter_count) +
                                    " parameter values, got " + std::to_string(opts.params.size()));
}

}  // namespace detail

/// Runs one sampled trajectory: measurement outcomes drawn from the Born rule.
inline Branch run_sampled(const Circuit& c, const RunOptions& opts, const StateVector* input,
                          std::uint64_t seed) {
    detail::check_params(c, opts);
    Rng rng(seed);
    detail::SimContext ctx{c, opts};
    ctx.rng = &rng;
    std::vector<Branch> sink;
    detail::walk(ctx, 0, detail::prepare_input(c, input), std::vector<std::uint8_t>(c.num_cbits, 0),
                 {}, 1.0, sink);
    return std::move(sink.front());
}

/// Runs the branch selected by the given outcome bits (measurement order).
inline Branch run_branch(const Circuit& c, const RunOptions& opts, const StateVector* input,
                         const std::vector<std::uint8_t>& outcomes) {
    detail::check_params(c, opts);
    detail::SimContext ctx{c, opts};
    ctx.forced = &outcomes;
    std::vector<Branch> sink;
    detail::walk(ctx, 0, detail::prepare_input(c, input), std::vector<std::uint8_t>(c.num_cbits, 0),
                 {}, 1.0, sink);
    return std::move(sink.front());
}

/// Exhaustive branch enumeration; zero-probability branches are pruned.
/// Branches come back in lexicographic outcome order.
inline std::vector<Branch> run_enumerate(const Circuit& c, const RunOptions& opts,
                                         const StateVector* input) {
    detail::check_params(c, opts);
    detail::SimContext ctx{c, opts};
    ctx.enumerate = true;
    std::vector<Branch> sink;
    detail::walk(ctx, 0, detail::prepare_input(c, input), std::vector<std::uint8_t>(c.num_cbits, 0),
                 {}, 1.0, sink);
    return sink;
}

struct EquivalenceReport {
    bool equivalent = false;
    double worst_infidelity = 0.0;
    std::size_t inputs_checked = 0;
    std::size_t branches_checked = 0;
    std::string worst_input;

    static constexpr double kTolerance = 1e-10;
};

/// Executable form of the register-channel equivalence claim: enumerates all
/// branches of both circuits on every computational-basis input plus random
/// product and entangled inputs, and reports the worst branch infidelity
/// against circuit `a`'s first branch on that input. Inputs are independent
/// work items; the result does not depend on the thread count.
inline EquivalenceReport channel_equivalent(const Circuit& a, const Circuit& b,
                                            std::uint32_t trials, std::uint64_t seed,
                                            const std::vector<double>& params = {},
                                            std::uint32_t threads = 1) {
    const std::uint32_t n = a.register_count();
    if (n != b.register_count()) throw std::invalid_argument("register-count mismatch");

    struct Job {
        StateVector input;
        std::string label;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        StateVector input = StateVector::zeros(n);
        input.amps[0] = 0.0;
        input.amps[i] = 1.0;
        jobs.push_back({std::move(input), "basis " + std::to_string(i)});
    }
    Rng rng(seed);
    for (std::uint32_t t = 0; t < trials; ++t) {
        const bool product = (t % 2) == 0;
        jobs.push_back({product ? random_product_state(n, rng) : random_entangled_state(n, rng),
                        (product ? "product " : "entangled ") + std::to_string(t)});
    }

    RunOptions opts;
    opts.params = params;
    std::vector<double> worst(jobs.size(), 0.0);
    std::vector<std::size_t> branches(jobs.size(), 0);
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const auto branches_a = run_enumerate(a, opts, &jobs[j].input);
        const auto branches_b = run_enumerate(b, opts, &jobs[j].input);
        double total_a = 0.0;
        double total_b = 0.0;
        const StateVector& ref = branches_a.front().state;
        for (const auto& br : branches_a) {
            total_a += br.probability;
            worst[j] = std::max(worst[j], 1.0 - state_fidelity(br.state, ref));
        }
        for (const auto& br : branches_b) {
            total_b += br.probability;
            worst[j] = std::max(worst[j], 1.0 - state_fidelity(br.state, ref));
        }
        if (std::abs(total_a - 1.0) > 1e-10 || std::abs(total_b - 1.0) > 1e-10)
            throw std::runtime_error("branch probabilities do not sum to 1");
        branches[j] = branches_a.size() + branches_b.size();
    });

    EquivalenceReport report;
    report.inputs_checked = jobs.size();
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        report.branches_checked += branches[j];
        if (worst[j] > report.worst_infidelity) {
            report.worst_infidelity = worst[j];
            report.worst_input = jobs[j].label;
        }
    }
    report.equivalent = report.worst_infidelity < EquivalenceReport::kTolerance;
    return report;
}

}  // namespace qladder
