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

#include "qladder/ansatz.hpp"
#include "qladder/json_io.hpp"
#include "qladder/manifest.hpp"
#include "qladder/rewrite.hpp"

using namespace qladder;

TEST_CASE("circuit JSON round trip is the identity") {
    for (auto core : {CoreKind::Core1, CoreKind::Core2, CoreKind::Core3}) {
        for (auto form : {AnsatzForm::Unitary, AnsatzForm::NonUnitary, AnsatzForm::Deferred}) {
            const Circuit c = build_ansatz({.n = 4, .layers = 2, .core = core, .form = form});
            const Circuit back = circuit_from_json(circuit_to_json(c));
            CHECK(back == c);
        }
    }
}

TEST_CASE("circuit JSON uses the pinned field names") {
    Circuit c = Circuit::with_registers(2);
    c.add(Instruction::cx(0, 1));
    const json j = circuit_to_json(c);
    CHECK(j.at("version") == 1);
    CHECK(j.at("cbits") == 0);
    CHECK(j.at("qubits")[0].at("role") == "register");
    CHECK(j.at("instructions")[0].at("kind") == "cx");
    CHECK(j.at("instructions")[0].at("control") == 0);
    CHECK(j.at("instructions")[0].at("target") == 1);
}

TEST_CASE("unknown schema versions are rejected") {
    json j = circuit_to_json(Circuit::with_registers(1));
    j["version"] = 2;
    CHECK_THROWS_AS(circuit_from_json(j), std::invalid_argument);
}

TEST_CASE("state JSON round trip preserves amplitudes") {
    Rng rng(4);
    const StateVector s = random_entangled_state(3, rng);
    const StateVector back = state_from_json(state_to_json(s));
    REQUIRE(back.dim() == s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(back.amps[i] - s.amps[i]) < 1e-15);

    json bad = state_to_json(s);
    bad["n"] = 5;
    CHECK_THROWS_AS(state_from_json(bad), std::invalid_argument);
}

TEST_CASE("sha256 matches a known vector") {
    // sha256("abc")
    detail::Sha256 sha;
    sha.update(reinterpret_cast<const std::uint8_t*>("abc"), 3);
    CHECK(sha.hex_digest() ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
