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
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qladder/statevector.hpp"

namespace qladder {

enum class BurgersScheme : std::uint8_t { ConservativeCentral, Upwind };

struct InitProfile {
    enum class Kind : std::uint8_t { Gaussian, Sinusoidal } kind = Kind::Gaussian;
    // gaussian
    double center = 0.5;
    double width = 0.1;
    // shared
    double amplitude = 1.0;
    // sinusoidal
    double wavenumber = 1.0;

    static InitProfile gaussian(double center = 0.5, double width = 0.1, double amplitude = 1.0) {
        InitProfile p;
        p.kind = Kind::Gaussian;
        p.center = center;
        p.width = width;
        p.amplitude = amplitude;
        return p;
    }
    static InitProfile sinusoidal(double wavenumber = 1.0, double amplitude = 1.0) {
        InitProfile p;
        p.kind = Kind::Sinusoidal;
        p.wavenumber = wavenumber;
        p.amplitude = amplitude;
        return p;
    }
};

/// 1-D viscous Burgers setup on the periodic unit interval,
/// du/dt = nu d2u/dx2 - d(u^2/2)/dx.
struct BurgersConfig {
    double nu = 10.0;
    double t_final = 0.083;
    std::uint32_t grid_points = 16;  // power of two
    double dt = 0.0;                 // 0 selects the stability-limited step
    InitProfile profile;
    BurgersScheme scheme = BurgersScheme::ConservativeCentral;
    std::uint32_t refine = 1;  // solve on refine x grid, subsample the result
};

struct GridField {
    std::vector<double> values;
    double time = 0.0;
};

namespace detail {

inline std::vector<double> initial_field(const InitProfile& p, std::uint32_t n) {
    std::vector<double> u(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        if (p.kind == InitProfile::Kind::Gaussian) {
            const double d = x - p.center;
            u[i] = p.amplitude * std::exp(-d * d / (2.0 * p.width * p.width));
        } else {
            u[i] = p.amplitude * std::sin(2.0 * std::numbers::pi * p.wavenumber * x);
        }
    }
    return u;
}

/// Flux-difference right-hand side; both schemes telescope over the periodic
/// grid, so sum(u) is a discrete invariant.
inline void burgers_rhs(const std::vector<double>& u, double nu, double dx, BurgersScheme scheme,
                        std::vector<double>& out) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = (i + n - 1) % n;
        const std::size_t ip = (i + 1) % n;
        const double diffusion = nu * (u[ip] - 2.0 * u[i] + u[im]) / (dx * dx);
        double flux_right;
        double flux_left;
        if (scheme == BurgersScheme::ConservativeCentral) {
            flux_right = 0.25 * (u[i] * u[i] + u[ip] * u[ip]);
            flux_left = 0.25 * (u[im] * u[im] + u[i] * u[i]);
        } else {
            flux_right = (u[i] + u[ip] > 0.0) ? 0.5 * u[i] * u[i] : 0.5 * u[ip] * u[ip];
            flux_left = (u[im] + u[i] > 0.0) ? 0.5 * u[im] * u[im] : 0.5 * u[i] * u[i];
        }
        out[i] = diffusion - (flux_right - flux_left) / dx;
    }
}

}  // namespace detail

inline double stable_time_step(const BurgersConfig& cfg, const std::vector<double>& u0) {
    const std::uint32_t n = cfg.grid_points * std::max<std::uint32_t>(cfg.refine, 1);
    const double dx = 1.0 / n;
    double umax = 0.0;
    for (double v : u0) umax = std::max(umax, std::abs(v));
    double dt = dx * dx / (2.0 * std::max(cfg.nu, 1e-300));
    if (umax > 0.0) dt = std::min(dt, dx / umax);
    return 0.4 * dt;
}

/// RK4 time integration of the semi-discretized equation; returns the field
/// at t_final on the requested grid (subsampled when refine > 1).
inline GridField evolve(const BurgersConfig& cfg) {
    if (cfg.grid_points < 2 || (cfg.grid_points & (cfg.grid_points - 1)) != 0)
        throw std::invalid_argument("grid_points must be a power of two");
    if (cfg.nu <= 0.0) throw std::invalid_argument("viscosity must be positive");
    const std::uint32_t refine = std::max<std::uint32_t>(cfg.refine, 1);
    const std::uint32_t n = cfg.grid_points * refine;
    const double dx = 1.0 / n;

    std::vector<double> u = detail::initial_field(cfg.profile, n);
    double dt = cfg.dt > 0.0 ? cfg.dt : stable_time_step(cfg, u);
    {
        const double limit = stable_time_step(cfg, u) / 0.4;
        if (dt > 0.5 * limit + 1e-15)
            throw std::invalid_argument("dt " + std::to_string(dt) +
                                        " violates the stability limit " + std::to_string(limit));
    }

    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    double t = 0.0;
    while (t < cfg.t_final - 1e-15) {
        const double h = std::min(dt, cfg.t_final - t);
        detail::burgers_rhs(u, cfg.nu, dx, cfg.scheme, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        detail::burgers_rhs(tmp, cfg.nu, dx, cfg.scheme, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        detail::burgers_rhs(tmp, cfg.nu, dx, cfg.scheme, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
        detail::burgers_rhs(tmp, cfg.nu, dx, cfg.scheme, k4);
        for (std::size_t i = 0; i < n; ++i)
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
        if (!std::isfinite(u[0]))
            throw std::runtime_error("solution diverged (NaN) at t = " + std::to_string(t));
    }
    for (double v : u)
        if (!std::isfinite(v)) throw std::runtime_error("solution diverged (NaN)");

    GridField f;
    f.time = cfg.t_final;
    f.values.resize(cfg.grid_points);
    for (std::uint32_t i = 0; i < cfg.grid_points; ++i) f.values[i] = u[i * refine];
    return f;
}

/// Amplitude encoding: u_i / ||u||_2 at basis index i (|bin_n(i)> ordering).
inline StateVector encode_state(const GridField& field) {
    double norm_sq = 0.0;
    for (double v : field.values) norm_sq += v * v;
    if (norm_sq <= 0.0) throw std::invalid_argument("cannot encode an all-zero field");
    const double inv = 1.0 / std::sqrt(norm_sq);
    std::vector<cplx> amps(field.values.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = field.values[i] * inv;
    return StateVector::from_amplitudes(std::move(amps));
}

/// The three target-state configurations studied with the n-qubit ansatz.
inline BurgersConfig benchmark_config(int state_id, std::uint32_t qubits) {
    BurgersConfig cfg;
    cfg.grid_points = 1u << qubits;
    cfg.refine = 4;
    switch (state_id) {
        case 1:
            cfg.profile = InitProfile::gaussian();
            cfg.nu = 10.0;
            cfg.t_final = 0.083;
            break;
        case 2:
            cfg.profile = InitProfile::gaussian();
            cfg.nu = 1e-3;
            cfg.t_final = 0.83;
            break;
        case 3:
            cfg.profile = InitProfile::sinusoidal();
            cfg.nu = 1e-3;
            cfg.t_final = 0.83;
            break;
        default:
            throw std::invalid_argument("state id must be 1, 2 or 3");
    }
    return cfg;
}

}  // namespace qladder
