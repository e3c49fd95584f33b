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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qladder/train.hpp"

using namespace qladder;

namespace {

std::vector<double> finite_difference(const Circuit& c, const std::vector<double>& params,
                                      const StateVector& target, double step = 1e-5) {
    std::vector<double> g(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto plus = params;
        auto minus = params;
        plus[i] += step;
        minus[i] -= step;
        g[i] = (circuit_infidelity(c, plus, target) - circuit_infidelity(c, minus, target)) /
               (2.0 * step);
    }
    return g;
}

StateVector uniform_state(std::uint32_t n) {
    StateVector s = StateVector::zeros(n);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    for (auto& amp : s.amps) amp = a;
    return s;
}

}  // namespace

TEST_CASE("infidelity basics") {
    const StateVector zero = StateVector::zeros(2);
    CHECK(infidelity(zero, zero) == doctest::Approx(0.0));

    StateVector one = StateVector::zeros(2);
    one.amps = {0, 1, 0, 0};
    CHECK(infidelity(zero, one) == doctest::Approx(1.0));

    StateVector plus = StateVector::zeros(1);
    plus.amps = {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
    StateVector ket0 = StateVector::zeros(1);
    CHECK(infidelity(plus, ket0) == doctest::Approx(0.5).epsilon(1e-12));

    StateVector phased = zero;
    phased.amps[0] = cplx{0.0, 1.0};  // global phase i
    CHECK(infidelity(phased, zero) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(infidelity(zero, ket0), std::invalid_argument);
}

TEST_CASE("gradient of a single RY against |1> matches the closed form") {
    // C(theta) = 1 - sin^2(theta/2); dC/dtheta = -sin(theta)/2.
    Circuit c = Circuit::with_registers(1);
    c.parameter_count = 1;
    c.add(Instruction::rotation(RotationAxis::Y, 0, 0));
    StateVector target = StateVector::zeros(1);
    target.amps = {0, 1};

    const auto g = circuit_gradient(c, {std::numbers::pi / 2}, target);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(-0.5).epsilon(1e-12));

    for (double theta : {0.3, 1.1, 2.5}) {
        const auto gt = circuit_gradient(c, {theta}, target);
        CHECK(gt[0] == doctest::Approx(-std::sin(theta) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("gradient vanishes at a global minimum") {
    const AnsatzSpec spec{.n = 4, .layers = 1, .core = CoreKind::Core1};
    const Circuit c = build_ansatz(spec);
    // RY(pi/2) on every qubit then a trivial CX ladder reaches |+...+>.
    std::vector<double> params(c.parameter_count, 0.0);
    for (std::uint32_t q = 0; q < 4; ++q) params[q] = std::numbers::pi / 2;
    const StateVector target = uniform_state(4);
    REQUIRE(circuit_infidelity(c, params, target) < 1e-12);
    for (double g : circuit_gradient(c, params, target)) CHECK(std::abs(g) < 1e-8);
}

TEST_CASE("analytic gradient matches central finite differences, both forms") {
    Rng rng(99);
    for (auto form : {AnsatzForm::Unitary, AnsatzForm::NonUnitary}) {
        const Circuit c = build_ansatz({.n = 4, .layers = 2, .core = CoreKind::Core1, .form = form});
        const StateVector target = random_entangled_state(4, rng);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> params(c.parameter_count);
            for (auto& p : params) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const auto analytic = circuit_gradient(c, params, target);
            const auto numeric = finite_difference(c, params, target);
            for (std::size_t i = 0; i < params.size(); ++i)
                CHECK(std::abs(analytic[i] - numeric[i]) < 1e-6);
        }
    }
}

TEST_CASE("triple-rotation ansatz gradient also matches finite differences") {
    Rng rng(123);
    const Circuit c = build_ansatz({.n = 3,
                                    .layers = 1,
                                    .core = CoreKind::Core1,
                                    .rotations = RotationSet::TripleXYZ,
                                    .form = AnsatzForm::Unitary});
    const StateVector target = random_entangled_state(3, rng);
    std::vector<double> params(c.parameter_count);
    for (auto& p : params) p = rng.uniform(-1.0, 1.0);
    const auto analytic = circuit_gradient(c, params, target);
    const auto numeric = finite_difference(c, params, target);
    for (std::size_t i = 0; i < params.size(); ++i)
        CHECK(std::abs(analytic[i] - numeric[i]) < 1e-6);
}

TEST_CASE("collapse-free cost equals the unitary cost at identical parameters") {
    const Circuit unitary = build_ansatz({.n = 4, .layers = 2, .core = CoreKind::Core1});
    const Circuit nonunitary = build_ansatz(
        {.n = 4, .layers = 2, .core = CoreKind::Core1, .form = AnsatzForm::NonUnitary});
    REQUIRE(unitary.parameter_count == nonunitary.parameter_count);

    Rng rng(5);
    const StateVector target = random_entangled_state(4, rng);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> params(unitary.parameter_count);
        for (auto& p : params) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double cu = circuit_infidelity(unitary, params, target);
        const double cn = circuit_infidelity(nonunitary, params, target);
        CHECK(std::abs(cu - cn) < 1e-10);
    }
}

TEST_CASE("train reaches the uniform superposition exactly") {
    // Oracle: exhaustive grid search over multiples of pi/2 finds an exact
    // solution, so training must reach (numerically) zero infidelity.
    const AnsatzSpec spec{.n = 4, .layers = 1, .core = CoreKind::Core1};
    const Circuit c = build_ansatz(spec);
    const StateVector target = uniform_state(4);

    double oracle_best = 1.0;
    const double grid[3] = {0.0, std::numbers::pi / 2, -std::numbers::pi / 2};
    std::vector<double> params(c.parameter_count, 0.0);
    // Final rotation layer fixed at zero; search the first layer's 4 angles.
    for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1)
            for (int a2 = 0; a2 < 3; ++a2)
                for (int a3 = 0; a3 < 3; ++a3) {
                    params[0] = grid[a0];
                    params[1] = grid[a1];
                    params[2] = grid[a2];
                    params[3] = grid[a3];
                    oracle_best = std::min(oracle_best, circuit_infidelity(c, params, target));
                }
    REQUIRE(oracle_best < 1e-12);

    TrainConfig cfg;
    cfg.ansatz = spec;
    cfg.target = target;
    cfg.restarts = 3;
    cfg.max_iterations = 2000;
    cfg.seed = 2024;
    const TrainResult result = train(cfg);
    CHECK(result.final_infidelity < 1e-10);
}

TEST_CASE("training is deterministic for a fixed seed") {
    TrainConfig cfg;
    cfg.ansatz = {.n = 3, .layers = 1, .core = CoreKind::Core1, .form = AnsatzForm::NonUnitary};
    Rng rng(8);
    cfg.target = random_entangled_state(3, rng);
    cfg.restarts = 2;
    cfg.max_iterations = 300;
    cfg.seed = 77;
    const TrainResult a = train(cfg);
    const TrainResult b = train(cfg);
    CHECK(a.final_infidelity == b.final_infidelity);
    CHECK(a.best_params == b.best_params);
}

TEST_CASE("best-so-far history is non-increasing") {
    TrainConfig cfg;
    cfg.ansatz = {.n = 3, .layers = 2, .core = CoreKind::Core1};
    Rng rng(21);
    cfg.target = random_entangled_state(3, rng);
    cfg.restarts = 1;
    cfg.max_iterations = 500;
    const TrainResult result = train(cfg);
    for (std::size_t i = 1; i < result.infidelity_history.size(); ++i)
        CHECK(result.infidelity_history[i] <= result.infidelity_history[i - 1] + 1e-15);
}

TEST_CASE("rotations-only ansatz cannot reach an entangled target") {
    // Product-state overlap maximization oracle: the best product
    // approximation of the 3-qubit GHZ state has fidelity 1/2.
    Circuit c = Circuit::with_registers(3);
    c.parameter_count = 3;
    for (std::uint32_t q = 0; q < 3; ++q) c.add(Instruction::rotation(RotationAxis::Y, q, q));
    StateVector ghz = StateVector::zeros(3);
    ghz.amps[0] = std::numbers::sqrt2 / 2;
    ghz.amps[7] = std::numbers::sqrt2 / 2;

    double best = 1.0;
    Rng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> params = {rng.uniform(-std::numbers::pi, std::numbers::pi),
                                      rng.uniform(-std::numbers::pi, std::numbers::pi),
                                      rng.uniform(-std::numbers::pi, std::numbers::pi)};
        best = std::min(best, circuit_infidelity(c, params, ghz));
    }
    CHECK(best >= 0.5 - 1e-9);
}

TEST_CASE("momentum optimizer also makes progress") {
    TrainConfig cfg;
    cfg.ansatz = {.n = 3, .layers = 1, .core = CoreKind::Core1};
    cfg.target = uniform_state(3);
    cfg.optimizer = OptimizerKind::GradientDescentMomentum;
    cfg.restarts = 2;
    cfg.max_iterations = 2000;
    const TrainResult result = train(cfg);
    CHECK(result.final_infidelity < 1e-3);
}
