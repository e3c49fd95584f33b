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

#include "qladder/burgers.hpp"

using namespace qladder;

namespace {

double field_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double field_l1(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("constant profiles are fixed points of the dynamics") {
    BurgersConfig cfg;
    cfg.nu = 1.0;
    cfg.t_final = 0.05;
    cfg.grid_points = 32;
    cfg.profile = InitProfile::gaussian(0.5, 1e6, 0.7);  // effectively constant 0.7
    const GridField f = evolve(cfg);
    for (double v : f.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("linear regime matches the analytic heat-kernel decay") {
    // At vanishing amplitude the convective term is negligible and each
    // Fourier mode decays as exp(-nu (2 pi k)^2 t).
    BurgersConfig cfg;
    cfg.nu = 1.0;
    cfg.t_final = 0.01;
    cfg.grid_points = 128;
    cfg.profile = InitProfile::sinusoidal(1.0, 1e-8);
    const GridField f = evolve(cfg);
    const double decay = std::exp(-cfg.nu * 4.0 * std::numbers::pi * std::numbers::pi * cfg.t_final);
    for (std::uint32_t i = 0; i < cfg.grid_points; ++i) {
        const double x = static_cast<double>(i) / cfg.grid_points;
        const double expected = 1e-8 * decay * std::sin(2.0 * std::numbers::pi * x);
        CHECK(f.values[i] == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("sum of u is conserved through the full evolution") {
    for (int state_id : {1, 2, 3}) {
        BurgersConfig cfg = benchmark_config(state_id, 4);
        cfg.refine = 1;
        cfg.grid_points = 64;
        const std::vector<double> u0 = detail::initial_field(cfg.profile, cfg.grid_points);
        const GridField f = evolve(cfg);
        const double drift = std::abs(field_sum(f.values) - field_sum(u0));
        CHECK(drift <= 1e-8 * field_l1(u0));
    }
}

TEST_CASE("upwind scheme also conserves sum of u") {
    BurgersConfig cfg = benchmark_config(3, 4);
    cfg.refine = 1;
    cfg.grid_points = 64;
    cfg.scheme = BurgersScheme::Upwind;
    const std::vector<double> u0 = detail::initial_field(cfg.profile, cfg.grid_points);
    const GridField f = evolve(cfg);
    CHECK(std::abs(field_sum(f.values) - field_sum(u0)) <= 1e-8 * field_l1(u0));
}

TEST_CASE("diffusion keeps max|u| non-increasing for zero-mean data") {
    BurgersConfig cfg;
    cfg.nu = 0.05;
    cfg.grid_points = 128;
    cfg.profile = InitProfile::sinusoidal();
    double prev = 1.0;  // amplitude of the initial sine
    for (double t : {0.01, 0.05, 0.1, 0.3}) {
        cfg.t_final = t;
        const double m = max_abs(evolve(cfg).values);
        CHECK(m <= prev + 1e-12);
        prev = m;
    }
}

TEST_CASE("central scheme converges at second order against a refined oracle") {
    BurgersConfig fine = benchmark_config(1, 4);
    fine.grid_points = 512;
    fine.refine = 1;
    const GridField oracle = evolve(fine);

    auto error_at = [&](std::uint32_t n) {
        BurgersConfig cfg = benchmark_config(1, 4);
        cfg.grid_points = n;
        cfg.refine = 1;
        const GridField f = evolve(cfg);
        const std::uint32_t stride = fine.grid_points / n;
        double err = 0.0;
        for (std::uint32_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(f.values[i] - oracle.values[i * stride]));
        return err;
    };
    const double e64 = error_at(64);
    const double e128 = error_at(128);
    const double order = std::log2(e64 / e128);
    CHECK(order >= 2.0);
}

TEST_CASE("upwind converges at first order or better") {
    BurgersConfig fine = benchmark_config(1, 4);
    fine.grid_points = 512;
    fine.refine = 1;
    fine.scheme = BurgersScheme::Upwind;
    const GridField oracle = evolve(fine);

    auto error_at = [&](std::uint32_t n) {
        BurgersConfig cfg = fine;
        cfg.grid_points = n;
        const GridField f = evolve(cfg);
        const std::uint32_t stride = fine.grid_points / n;
        double err = 0.0;
        for (std::uint32_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(f.values[i] - oracle.values[i * stride]));
        return err;
    };
    CHECK(std::log2(error_at(64) / error_at(128)) >= 0.9);
}

TEST_CASE("explicit dt beyond the stability limit is rejected") {
    BurgersConfig cfg = benchmark_config(1, 4);
    cfg.dt = 1.0;
    CHECK_THROWS_AS(evolve(cfg), std::invalid_argument);
}

TEST_CASE("encode_state normalizes and follows the binary index convention") {
    GridField f;
    f.values = {1.0, 0.0, 0.0, 0.0};
    const StateVector s0 = encode_state(f);
    CHECK(s0.amps[0].real() == doctest::Approx(1.0));

    f.values = {1.0, 1.0, 1.0, 1.0};
    const StateVector uniform = encode_state(f);
    for (const auto& a : uniform.amps) CHECK(a.real() == doctest::Approx(0.5));

    f.values = {0.3, -2.0, 0.7, 1.1};
    const StateVector s = encode_state(f);
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));

    GridField scaled = f;
    for (double& v : scaled.values) v *= 17.5;
    const StateVector s2 = encode_state(scaled);
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(s.amps[i] - s2.amps[i]) < 1e-14);

    GridField zero;
    zero.values = {0.0, 0.0};
    CHECK_THROWS_AS(encode_state(zero), std::invalid_argument);
}
