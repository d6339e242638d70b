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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vnp/scenario.hpp"

namespace vnp {

/// Tolerances a run must meet; exceeding any of them marks the outcome as a
/// tolerance breach (exit code 4).
inline constexpr double kOracleTolerance = 1e-9;
inline constexpr double kInverseTolerance = 1e-10;
inline constexpr double kPsNormTolerance = 1e-10;
inline constexpr double kPsCrossTolerance = 1e-10;
inline constexpr double kNegativeControlThreshold = 1e-3;

/// Report document plus the artifact files it refers to.
struct RunOutcome {
    std::string report_json;
    std::vector<std::pair<std::string, std::string>> files; // file name -> contents
    bool tolerance_breach = false;
};

RunOutcome run_scenario(const Scenario &s);

/// PS and PPS pipelines side by side on the same (A, psi_i, phi, gamma).
/// Throws InvalidConfig when the scenario has no postselection.
RunOutcome compare_scenario(const Scenario &s);

/// One summary row per value of `param` ("gamma", "hbar", "sigma" or "center").
RunOutcome sweep_scenario(const Scenario &s, std::string_view param,
                          std::span<const double> values);

struct VerifyOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 2026;
};

/// Randomized oracle battery: operator identity, inverse/adjoint identity and
/// PS norm over random projectors, plus the non-projector negative control.
RunOutcome verify_battery(const VerifyOptions &options);

/// Writes every artifact file and report.json into `dir` (created if needed).
void write_outcome(const RunOutcome &outcome, const std::filesystem::path &dir);

/// Columns as CSV with 15 significant digits.
std::string format_csv(const std::vector<std::string> &header,
                       const std::vector<const std::vector<double> *> &columns);

} // namespace vnp
