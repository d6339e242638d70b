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

#include "vnp/measurement.hpp"

namespace vnp {

/// Integrated size of the interference cross term of a density decomposition.
struct InterferenceReport {
    double cross_l1 = 0.0;     // integral of |cross| dq
    double cross_signed = 0.0; // integral of cross dq
    double max_abs_cross = 0.0;
    Complex weak_value;
    Complex shifted_overlap;
};

/// Throws ShapeMismatch if the component vectors do not match the grid.
InterferenceReport interference_report(const DensityDecomposition &parts);

/// <p> of a joint state with the system traced out.
double momentum_expectation(const EntangledState &state, double hbar = 1.0);

/// <p>_after - <p>_before.
double momentum_shift(const PointerWavefunction &before, const PointerWavefunction &after,
                      double hbar = 1.0);
double momentum_shift(const PointerWavefunction &before, const EntangledState &after,
                      double hbar = 1.0);

struct GlobalPhase {
    double theta = 0.0;    // arg <a|b>
    double residual = 0.0; // max_k |b_k - e^{i theta} a_k|
};

/// Phase that best aligns `a` onto `b`. Throws DegenerateOverlap when
/// |<a|b>| < 1e-12.
GlobalPhase global_phase_between(const PointerWavefunction &a, const PointerWavefunction &b);

} // namespace vnp
