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
#include <cstdint>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qladder/ansatz.hpp"
#include "qladder/parallel.hpp"
#include "qladder/rng.hpp"
#include "qladder/simulator.hpp"
#include "qladder/statevector.hpp"

namespace qladder {

/// 1 - |<target|simulated>|^2, the pure-state infidelity. Clamped at zero so
/// rounding near a perfect match cannot leave the [0, 1] range.
inline double infidelity(const StateVector& simulated, const StateVector& target) {
    if (simulated.dim() != target.dim()) throw std::invalid_argument("dimension mismatch");
    return std::max(0.0, 1.0 - state_fidelity(simulated, target));
}

enum class OptimizerKind : std::uint8_t { GradientDescentMomentum, QuasiNewton };

struct TrainConfig {
    AnsatzSpec ansatz;
    StateVector target;
    std::uint32_t max_iterations = 10000;
    std::uint32_t restarts = 5;
    std::uint64_t seed = 1;
    OptimizerKind optimizer = OptimizerKind::QuasiNewton;
    double init_lo = -std::numbers::pi;
    double init_hi = std::numbers::pi;
    std::uint32_t threads = 1;
};

struct TrainResult {
    std::vector<double> best_params;
    std::vector<double> infidelity_history;  // best-so-far per iteration
    double final_infidelity = 1.0;
    std::uint32_t iterations = 0;
};

namespace detail {

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Collapse-free forward pass: the all-zeros measurement branch with its
/// conditional corrections. Each measurement outcome has probability exactly
/// 1/2 for circuits produced by the ladder rewrite, so the projection is a
/// fixed linear map (scale by sqrt(2)); that is what makes this path
/// differentiable and identical to every other branch.
struct ForwardPass {
    StateVector state;
    std::vector<std::pair<std::uint32_t, StateVector>> rotation_snapshots;  // (param, state after)
    cplx overlap{0.0, 0.0};
};

inline double measure_zero_scaled(StateVector& state, std::size_t pos, MeasBasis basis) {
    if (basis == MeasBasis::X) sv::apply_gate1(state, pos, Gate1Name::H);
    const double w = sv::project_and_drop(state, pos, 0);
    state.scale(std::numbers::sqrt2);
    return w;
}

inline ForwardPass forward_collapse_free(const Circuit& c, const std::vector<double>& params,
                                         const StateVector& target, bool keep_snapshots) {
    ForwardPass fp;
    fp.state = StateVector::zeros(c.register_count());
    for (const Instruction& in : c.instructions) {
        switch (in.kind) {
            case InstrKind::Rotation:
                sv::apply_rotation(fp.state, fp.state.position_of(in.q0), in.axis,
                                   params.at(in.param));
                if (keep_snapshots) fp.rotation_snapshots.emplace_back(in.param, fp.state);
                break;
            case InstrKind::Gate1:
                sv::apply_gate1(fp.state, fp.state.position_of(in.q0), in.gate);
                break;
            case InstrKind::Cx:
                sv::apply_cx(fp.state, fp.state.position_of(in.q0), fp.state.position_of(in.q1));
                break;
            case InstrKind::Init:
                sv::append_qubit(fp.state, in.q0, in.state);
                break;
            case InstrKind::Measure: {
                const double w =
                    measure_zero_scaled(fp.state, fp.state.position_of(in.q0), in.basis);
                if (std::abs(w - 0.5) > 1e-9)
                    throw std::runtime_error(
                        "collapse-free mode needs outcome-independent branches (p != 1/2)");
                break;
            }
            case InstrKind::Conditional:
                break;  // all bits are zero in this branch
        }
    }
    sv::sort_qubit_order(fp.state);
    fp.overlap = inner_product(target, fp.state);
    return fp;
}

/// Applies the adjoint of one instruction to a bra-side state.
inline void apply_adjoint(const Instruction& in, StateVector& bra,
                          const std::vector<double>& params) {
    switch (in.kind) {
        case InstrKind::Rotation:
            sv::apply_rotation(bra, bra.position_of(in.q0), in.axis, -params.at(in.param));
            break;
        case InstrKind::Gate1:
            sv::apply_gate1(bra, bra.position_of(in.q0), in.gate);  // X, Z, H self-adjoint
            break;
        case InstrKind::Cx:
            sv::apply_cx(bra, bra.position_of(in.q0), bra.position_of(in.q1));
            break;
        case InstrKind::Init: {
            // adjoint of tensoring |0>/|+>: contract the qubit against it
            const std::size_t pos = bra.position_of(in.q0);
            if (in.state == InitState::Plus) sv::apply_gate1(bra, pos, Gate1Name::H);
            sv::project_and_drop(bra, pos, 0);
            break;
        }
        case InstrKind::Measure: {
            // adjoint of sqrt(2) <0| (collapse-free branch): embed |0> * sqrt(2)
            sv::append_qubit(bra, in.q0, InitState::Zero);
            bra.scale(std::numbers::sqrt2);
            if (in.basis == MeasBasis::X)
                sv::apply_gate1(bra, bra.position_of(in.q0), Gate1Name::H);
            break;
        }
        case InstrKind::Conditional:
            break;
    }
}

inline void apply_pauli_for_axis(StateVector& s, std::size_t pos, RotationAxis axis) {
    switch (axis) {
        case RotationAxis::X:
            sv::apply_gate1(s, pos, Gate1Name::X);
            break;
        case RotationAxis::Y:
            sv::apply_y(s, pos);
            break;
        case RotationAxis::Z:
            sv::apply_gate1(s, pos, Gate1Name::Z);
            break;
    }
}

/// <a|b> with both sides brought to ascending qubit order first; the bra and
/// the forward snapshots can hold the same live qubits in different layouts.
inline cplx aligned_overlap(const StateVector& a, const StateVector& b) {
    StateVector sa = a;
    StateVector sb = b;
    sv::sort_qubit_order(sa);
    sv::sort_qubit_order(sb);
    return inner_product(sa, sb);
}

}  // namespace detail

/// Infidelity of the circuit output against the target; measurements are
/// executed collapse-free (valid whenever all branches coincide, which the
/// rewrite guarantees).
inline double circuit_infidelity(const Circuit& c, const std::vector<double>& params,
                                 const StateVector& target) {
    if (params.size() != c.parameter_count) throw std::invalid_argument("parameter count mismatch");
    const auto fp = detail::forward_collapse_free(c, params, target, false);
    return std::max(0.0, 1.0 - std::norm(fp.overlap));
}

/// Exact analytic gradient of the infidelity with respect to every rotation
/// angle (adjoint differentiation). Matches central finite differences to
/// 1e-6 by construction of the linear collapse-free map.
inline std::vector<double> circuit_gradient(const Circuit& c, const std::vector<double>& params,
                                            const StateVector& target) {
    if (params.size() != c.parameter_count) throw std::invalid_argument("parameter count mismatch");
    auto fp = detail::forward_collapse_free(c, params, target, true);
    const cplx overlap = fp.overlap;

    std::vector<double> grad(params.size(), 0.0);
    // bra starts as the target and accumulates adjoints of everything after
    // the current instruction.
    StateVector bra = target;
    bra.qubit_order.resize(c.register_count());
    for (std::uint32_t i = 0; i < c.register_count(); ++i) bra.qubit_order[i] = i;

    auto snapshot = fp.rotation_snapshots.rbegin();
    for (auto it = c.instructions.rbegin(); it != c.instructions.rend(); ++it) {
        if (it->kind == InstrKind::Rotation) {
            // d/dtheta R = (-i P / 2) R; contribution -2 Re(conj(o) <bra|G|chi>)
            StateVector chi = snapshot->second;
            detail::apply_pauli_for_axis(chi, chi.position_of(it->q0), it->axis);
            const cplx g = detail::aligned_overlap(bra, chi) * cplx{0.0, -0.5};
            grad[snapshot->first] += -2.0 * std::real(std::conj(overlap) * g);
            ++snapshot;
        }
        detail::apply_adjoint(*it, bra, params);
    }
    return grad;
}

namespace detail {

struct Objective {
    const Circuit& circuit;
    const StateVector& target;

    double value(const std::vector<double>& x) const {
        return circuit_infidelity(circuit, x, target);
    }
    std::vector<double> gradient(const std::vector<double>& x) const {
        return circuit_gradient(circuit, x, target);
    }
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline void clip_gradient(std::vector<double>& g, double cap) {
    const double norm = std::sqrt(dot(g, g));
    if (norm > cap)
        for (double& x : g) x *= cap / norm;
}

struct OptimizerTrace {
    std::vector<double> best_x;
    double best_value = 1.0;
    std::vector<double> history;
    std::uint32_t iterations = 0;
};

inline OptimizerTrace lbfgs_minimize(const Objective& obj, std::vector<double> x,
                                     std::uint32_t max_iter) {
    constexpr std::size_t kHistory = 8;
    constexpr double kArmijo = 1e-4;
    constexpr double kGradTol = 1e-13;
    constexpr double kValueTol = 1e-15;

    OptimizerTrace trace;
    double f = obj.value(x);
    std::vector<double> g = obj.gradient(x);
    clip_gradient(g, 1e3);
    trace.best_x = x;
    trace.best_value = f;

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (std::uint32_t iter = 0; iter < max_iter; ++iter) {
        trace.iterations = iter + 1;
        if (f < trace.best_value) {
            trace.best_value = f;
            trace.best_x = x;
        }
        trace.history.push_back(trace.best_value);
        if (max_abs(g) < kGradTol || f < kValueTol) break;

        // two-loop recursion
        std::vector<double> d = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * dot(s_hist[k], d);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const double gamma =
                dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (double& v : d) v *= gamma;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], d);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] += (alpha[k] - beta) * s_hist[k][i];
        }
        for (double& v : d) v = -v;

        double gd = dot(g, d);
        if (gd > -1e-18) {  // not a descent direction; restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g[i];
            gd = dot(g, d);
            if (gd > -1e-18) break;
        }

        double step = 1.0;
        double f_new = f;
        std::vector<double> x_new = x;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + step * d[i];
            f_new = obj.value(x_new);
            if (f_new <= f + kArmijo * step * gd) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> g_new = obj.gradient(x_new);
        clip_gradient(g_new, 1e3);
        std::vector<double> s_vec(x.size()), y_vec(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            s_vec[i] = x_new[i] - x[i];
            y_vec[i] = g_new[i] - g[i];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-14) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kHistory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = std::move(x_new);
        f = f_new;
        g = std::move(g_new);
    }
    if (f < trace.best_value) {
        trace.best_value = f;
        trace.best_x = x;
    }
    return trace;
}

inline OptimizerTrace momentum_minimize(const Objective& obj, std::vector<double> x,
                                        std::uint32_t max_iter) {
    constexpr double kLearningRate = 0.05;
    constexpr double kMomentum = 0.9;
    OptimizerTrace trace;
    trace.best_x = x;
    trace.best_value = obj.value(x);
    std::vector<double> v(x.size(), 0.0);
    for (std::uint32_t iter = 0; iter < max_iter; ++iter) {
        trace.iterations = iter + 1;
        std::vector<double> g = obj.gradient(x);
        clip_gradient(g, 1e2);
        for (std::size_t i = 0; i < x.size(); ++i) {
            v[i] = kMomentum * v[i] - kLearningRate * g[i];
            x[i] += v[i];
        }
        const double f = obj.value(x);
        if (f < trace.best_value) {
            trace.best_value = f;
            trace.best_x = x;
        }
        trace.history.push_back(trace.best_value);
        if (trace.best_value < 1e-15) break;
    }
    return trace;
}

}  // namespace detail

/// Runs independent restarts from random angle initializations (input state
/// |0...0> on the registers) and returns the best. `warm_start`, when given,
/// replaces restart 0; layer_sweep uses it to seed layer L from layer L-1.
inline TrainResult train(const TrainConfig& cfg,
                         const std::vector<double>* warm_start = nullptr) {
    const Circuit circuit = build_ansatz(cfg.ansatz);
    if (cfg.target.dim() != (std::size_t{1} << cfg.ansatz.n))
        throw std::invalid_argument("target dimension does not match the ansatz register");
    const detail::Objective obj{circuit, cfg.target};

    std::vector<detail::OptimizerTrace> traces(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
        std::vector<double> x0(circuit.parameter_count);
        if (warm_start && r == 0 && warm_start->size() == x0.size()) {
            x0 = *warm_start;
        } else {
            Rng rng = Rng::stream(cfg.seed, r);
            for (double& v : x0) v = rng.uniform(cfg.init_lo, cfg.init_hi);
        }
        traces[r] = cfg.optimizer == OptimizerKind::QuasiNewton
                        ? detail::lbfgs_minimize(obj, std::move(x0), cfg.max_iterations)
                        : detail::momentum_minimize(obj, std::move(x0), cfg.max_iterations);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < traces.size(); ++r)
        if (traces[r].best_value < traces[best].best_value) best = r;

    TrainResult result;
    result.best_params = traces[best].best_x;
    result.infidelity_history = traces[best].history;
    result.final_infidelity = traces[best].best_value;
    result.iterations = traces[best].iterations;
    return result;
}

/// Reruns train per layer count. Layer L warm-starts from layer L-1's best by
/// prepending a zero-angle layer (the core fixes |0...0>, so the embedding is
/// cost-preserving and the sequence of best infidelities is non-increasing).
inline std::vector<std::pair<std::uint32_t, TrainResult>> layer_sweep(const TrainConfig& base,
                                                                      std::uint32_t layer_lo,
                                                                      std::uint32_t layer_hi) {
    if (layer_lo < 1 || layer_hi < layer_lo) throw std::invalid_argument("invalid layer range");
    std::vector<std::pair<std::uint32_t, TrainResult>> table;
    std::vector<double> previous_best;
    const std::uint32_t per_layer =
        base.ansatz.rotations == RotationSet::SingleY ? base.ansatz.n : 3 * base.ansatz.n;
    for (std::uint32_t layers = layer_lo; layers <= layer_hi; ++layers) {
        TrainConfig cfg = base;
        cfg.ansatz.layers = layers;
        cfg.seed = base.seed + layers;
        std::vector<double> warm;
        const bool have_warm = !previous_best.empty();
        if (have_warm) {
            warm.assign(per_layer, 0.0);  // new bottom layer: identity rotations
            warm.insert(warm.end(), previous_best.begin(), previous_best.end());
        }
        TrainResult r = train(cfg, have_warm ? &warm : nullptr);
        previous_best = r.best_params;
        table.emplace_back(layers, std::move(r));
    }
    return table;
}

}  // namespace qladder
