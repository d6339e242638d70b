// Copyright 2026 The vnpointer Authors
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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vnp/pointer.hpp"
#include "vnp/system.hpp"

namespace vnp {

enum class Artifact {
    PsDensity,
    PpsDensity,
    WeakValue,
    Oracle,
    Momentum,
    Interference,
};

std::string_view artifact_name(Artifact a) noexcept;
bool artifact_needs_postselection(Artifact a) noexcept;

struct ProjectorSpec {
    enum class Kind { Matrix, State };
    Kind kind = Kind::State;
    Matrix matrix; // Kind::Matrix
    Vector state;  // Kind::State, rank-1 projector |v><v|

    bool operator==(const ProjectorSpec &other) const;
};

struct PointerSpec {
    double q_min = -20.0;
    double q_max = 20.0;
    std::size_t n = 1024;
    double sigma = 1.0;
    double center = 0.0;

    bool operator==(const PointerSpec &) const = default;
};

/// Declarative description of one measurement run. Vectors are normalized at
/// load (after a 1e-8 normalization check).
struct Scenario {
    std::string name;
    std::size_t system_dim = 2;
    ProjectorSpec projector;
    Vector preselection;
    std::optional<Vector> postselection;
    PointerSpec pointer;
    double gamma = 0.0;
    double hbar = 1.0;
    std::vector<Artifact> outputs; // empty selects every applicable artifact

    bool operator==(const Scenario &other) const;

    Projector build_projector() const;
    SystemState build_preselection() const;
    std::optional<SystemState> build_postselection() const;
    PointerGrid build_grid() const;
    PointerWavefunction build_pointer() const;
    MeasurementConfig build_config() const;
    /// `outputs`, or every applicable artifact when it is empty.
    std::vector<Artifact> selected_outputs() const;
};

/// Parses and validates a scenario document. Validation failures throw
/// InvalidConfig with the offending field path in the message.
Scenario scenario_from_json(std::string_view text);
Scenario load_scenario(const std::filesystem::path &path);

/// Canonical JSON form; scenario_from_json(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario &s);

} // namespace vnp
