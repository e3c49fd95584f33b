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

#include <set>

#include "qladder/ansatz.hpp"
#include "qladder/schedule.hpp"

using namespace qladder;

TEST_CASE("build_core gate counts and depths match the per-core closed forms") {
    CHECK(build_core(CoreKind::Core1, 5).count(InstrKind::Cx) == 4);
    CHECK(schedule_asap(build_core(CoreKind::Core1, 5)).cx_depth() == 4);
    CHECK(build_core(CoreKind::Core2, 5).count(InstrKind::Cx) == 5);
    CHECK(schedule_asap(build_core(CoreKind::Core2, 5)).cx_depth() == 5);
    CHECK(build_core(CoreKind::Core3, 4).count(InstrKind::Cx) == 6);
    CHECK(schedule_asap(build_core(CoreKind::Core3, 4)).cx_depth() == 6);

    for (std::uint32_t n = 3; n <= 12; ++n) {
        CHECK(build_core(CoreKind::Core1, n).count(InstrKind::Cx) == n - 1);
        CHECK(build_core(CoreKind::Core2, n).count(InstrKind::Cx) == n);
        CHECK(build_core(CoreKind::Core3, n).count(InstrKind::Cx) == 2 * n - 2);
    }
}

TEST_CASE("build_core rejects widths below 3") {
    CHECK_THROWS_AS(build_core(CoreKind::Core1, 2), std::invalid_argument);
}

TEST_CASE("build_ansatz: parameter and CX counts follow the layered structure") {
    // L repetitions of (rotation layer, core) and a final rotation layer:
    // n(L+1) parameters and L(n-1) CX gates for core 1.
    const Circuit a = build_ansatz({.n = 4, .layers = 5, .core = CoreKind::Core1});
    CHECK(a.parameter_count == 24);
    CHECK(a.count(InstrKind::Cx) == 15);
    CHECK(a.count(InstrKind::Rotation) == 24);

    const Circuit b = build_ansatz({.n = 4, .layers = 1, .core = CoreKind::Core1});
    CHECK(b.parameter_count == 8);
    CHECK(b.count(InstrKind::Cx) == 3);
}

TEST_CASE("build_ansatz: non-unitary core 1 layer counts match the rewrite") {
    const Circuit a = build_ansatz(
        {.n = 4, .layers = 1, .core = CoreKind::Core1, .form = AnsatzForm::NonUnitary});
    CHECK(a.count(InstrKind::Cx) == 4);
    CHECK(a.count(InstrKind::Measure) == 1);
    CHECK(a.count(InstrKind::Init) == 1);
    CHECK(a.count(InstrKind::Conditional) == 2);
    CHECK(validate(a).ok);

    const Circuit three = build_ansatz(
        {.n = 4, .layers = 3, .core = CoreKind::Core1, .form = AnsatzForm::NonUnitary});
    CHECK(three.count(InstrKind::Measure) == 3);
    CHECK(three.count(InstrKind::Conditional) == 6);
    CHECK(validate(three).ok);
}

TEST_CASE("build_ansatz: unitary form contains no dynamic instructions") {
    for (auto core : {CoreKind::Core1, CoreKind::Core2, CoreKind::Core3}) {
        const Circuit a = build_ansatz({.n = 5, .layers = 2, .core = core});
        CHECK(a.count(InstrKind::Measure) == 0);
        CHECK(a.count(InstrKind::Init) == 0);
        CHECK(a.count(InstrKind::Conditional) == 0);
        CHECK(validate(a).ok);
    }
}

TEST_CASE("build_ansatz: parameter ids are a bijection onto [0, parameter_count)") {
    for (auto rotations : {RotationSet::SingleY, RotationSet::TripleXYZ}) {
        const Circuit a = build_ansatz(
            {.n = 4, .layers = 3, .core = CoreKind::Core2, .rotations = rotations});
        std::set<std::uint32_t> seen;
        for (const auto& in : a.instructions)
            if (in.kind == InstrKind::Rotation) seen.insert(in.param);
        CHECK(seen.size() == a.parameter_count);
        CHECK(*seen.rbegin() == a.parameter_count - 1);
        CHECK(validate(a).ok);
    }
}

TEST_CASE("build_ansatz: triple-rotation option triples the parameter count") {
    const AnsatzSpec spec{
        .n = 4, .layers = 2, .core = CoreKind::Core1, .rotations = RotationSet::TripleXYZ};
    CHECK(spec.parameter_count() == 36);
    CHECK(build_ansatz(spec).parameter_count == 36);
}
