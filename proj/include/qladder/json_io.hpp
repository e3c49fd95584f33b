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

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qladder/circuit.hpp"
#include "qladder/statevector.hpp"

namespace qladder {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Circuit schema, version 1:
//   {"version": 1, "qubits": [{"index": 0, "role": "register"}, ...],
//    "cbits": N, "params": P,
//    "instructions": [{"kind": "cx", "control": i, "target": j}, ...]}
// parse(serialize(c)) == c.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string role_name(QubitRole r) {
    return r == QubitRole::Register ? "register" : "auxiliary";
}
inline QubitRole role_from(const std::string& s) {
    if (s == "register") return QubitRole::Register;
    if (s == "auxiliary") return QubitRole::Auxiliary;
    throw std::invalid_argument("unknown qubit role: " + s);
}

inline std::string axis_name(RotationAxis a) {
    switch (a) {
        case RotationAxis::X: return "x";
        case RotationAxis::Y: return "y";
        case RotationAxis::Z: return "z";
    }
    return "?";
}
inline RotationAxis axis_from(const std::string& s) {
    if (s == "x") return RotationAxis::X;
    if (s == "y") return RotationAxis::Y;
    if (s == "z") return RotationAxis::Z;
    throw std::invalid_argument("unknown rotation axis: " + s);
}

inline std::string gate1_name(Gate1Name g) {
    switch (g) {
        case Gate1Name::X: return "x";
        case Gate1Name::Z: return "z";
        case Gate1Name::H: return "h";
    }
    return "?";
}
inline Gate1Name gate1_from(const std::string& s) {
    if (s == "x") return Gate1Name::X;
    if (s == "z") return Gate1Name::Z;
    if (s == "h") return Gate1Name::H;
    throw std::invalid_argument("unknown gate name: " + s);
}

}  // namespace detail

inline json circuit_to_json(const Circuit& c) {
    json qubits = json::array();
    for (const auto& q : c.qubits)
        qubits.push_back({{"index", q.index}, {"role", detail::role_name(q.role)}});

    json instrs = json::array();
    for (const auto& in : c.instructions) {
        switch (in.kind) {
            case InstrKind::Rotation:
                instrs.push_back({{"kind", "rotation"},
                                  {"axis", detail::axis_name(in.axis)},
                                  {"qubit", in.q0},
                                  {"param", in.param}});
                break;
            case InstrKind::Gate1:
                instrs.push_back(
                    {{"kind", "gate1"}, {"name", detail::gate1_name(in.gate)}, {"qubit", in.q0}});
                break;
            case InstrKind::Cx:
                instrs.push_back({{"kind", "cx"}, {"control", in.q0}, {"target", in.q1}});
                break;
            case InstrKind::Init:
                instrs.push_back({{"kind", "init"},
                                  {"state", in.state == InitState::Zero ? "zero" : "plus"},
                                  {"qubit", in.q0}});
                break;
            case InstrKind::Measure:
                instrs.push_back({{"kind", "measure"},
                                  {"basis", in.basis == MeasBasis::Z ? "z" : "x"},
                                  {"qubit", in.q0},
                                  {"bit", in.bit}});
                break;
            case InstrKind::Conditional:
                instrs.push_back({{"kind", "conditional"},
                                  {"pauli", in.pauli == PauliKind::X ? "x" : "z"},
                                  {"qubit", in.q0},
                                  {"bit", in.bit}});
                break;
        }
    }
    return json{{"version", 1},
                {"qubits", qubits},
                {"cbits", c.num_cbits},
                {"params", c.parameter_count},
                {"instructions", instrs}};
}

inline Circuit circuit_from_json(const json& j) {
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw std::invalid_argument("unsupported circuit schema version");
    Circuit c;
    for (const auto& q : j.at("qubits"))
        c.qubits.push_back(
            {q.at("index").get<std::uint32_t>(), detail::role_from(q.at("role").get<std::string>())});
    c.num_cbits = j.at("cbits").get<std::uint32_t>();
    c.parameter_count = j.value("params", 0u);
    for (const auto& ij : j.at("instructions")) {
        const std::string kind = ij.at("kind").get<std::string>();
        if (kind == "rotation") {
            c.add(Instruction::rotation(detail::axis_from(ij.at("axis").get<std::string>()),
                                        ij.at("qubit").get<std::uint32_t>(),
                                        ij.at("param").get<std::uint32_t>()));
        } else if (kind == "gate1") {
            c.add(Instruction::gate1(detail::gate1_from(ij.at("name").get<std::string>()),
                                     ij.at("qubit").get<std::uint32_t>()));
        } else if (kind == "cx") {
            c.add(Instruction::cx(ij.at("control").get<std::uint32_t>(),
                                  ij.at("target").get<std::uint32_t>()));
        } else if (kind == "init") {
            c.add(Instruction::init(
                ij.at("state").get<std::string>() == "zero" ? InitState::Zero : InitState::Plus,
                ij.at("qubit").get<std::uint32_t>()));
        } else if (kind == "measure") {
            c.add(Instruction::measure(
                ij.at("basis").get<std::string>() == "z" ? MeasBasis::Z : MeasBasis::X,
                ij.at("qubit").get<std::uint32_t>(), ij.at("bit").get<std::uint32_t>()));
        } else if (kind == "conditional") {
            c.add(Instruction::conditional(
                ij.at("pauli").get<std::string>() == "x" ? PauliKind::X : PauliKind::Z,
                ij.at("qubit").get<std::uint32_t>(), ij.at("bit").get<std::uint32_t>()));
        } else {
            throw std::invalid_argument("unknown instruction kind: " + kind);
        }
    }
    return c;
}

// State schema: {"n": m, "amplitudes": [[re, im], ...]}, index i <-> |bin(i)>.

inline json state_to_json(const StateVector& s) {
    json amps = json::array();
    for (const auto& a : s.amps) amps.push_back({a.real(), a.imag()});
    return json{{"n", s.num_qubits()}, {"amplitudes", amps}};
}

inline StateVector state_from_json(const json& j) {
    const auto n = j.at("n").get<std::uint32_t>();
    std::vector<cplx> amps;
    for (const auto& a : j.at("amplitudes"))
        amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    if (amps.size() != (std::size_t{1} << n))
        throw std::invalid_argument("amplitude count does not match qubit count");
    return StateVector::from_amplitudes(std::move(amps));
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qladder
