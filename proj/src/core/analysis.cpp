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

#include "vnp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "vnp/error.hpp"
#include "vnp/spectral.hpp"

namespace vnp {

InterferenceReport interference_report(const DensityDecomposition &parts) {
    const std::size_t n = parts.grid.size();
    if (parts.cross.size() != n || parts.total.size() != n || parts.unshifted.size() != n ||
        parts.shifted.size() != n) {
        fail(ErrorCode::ShapeMismatch, "density components do not share the grid");
    }
    InterferenceReport report;
    for (double c : parts.cross) {
        report.cross_l1 += std::abs(c);
        report.cross_signed += c;
        report.max_abs_cross = std::max(report.max_abs_cross, std::abs(c));
    }
    report.cross_l1 *= parts.grid.dq();
    report.cross_signed *= parts.grid.dq();
    report.weak_value = parts.weak_value;
    report.shifted_overlap = parts.shifted_overlap;
    return report;
}

double momentum_expectation(const EntangledState &state, double hbar) {
    const PointerGrid &grid = state.grid();
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < state.dim(); ++j) {
        const Samples spectrum = forward_dft(state.component(j).samples());
        for (std::size_t k = 0; k < spectrum.size(); ++k) {
            const double w = std::norm(spectrum[k]);
            weighted += grid.wavenumber(k) * w;
            total += w;
        }
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "momentum expectation of a vanishing state");
    }
    return hbar * weighted / total;
}

double momentum_shift(const PointerWavefunction &before, const PointerWavefunction &after,
                      double hbar) {
    if (!(before.grid() == after.grid())) {
        fail(ErrorCode::ShapeMismatch, "momentum_shift requires identical grids");
    }
    return momentum_expectation(after, hbar) - momentum_expectation(before, hbar);
}

double momentum_shift(const PointerWavefunction &before, const EntangledState &after,
                      double hbar) {
    if (!(before.grid() == after.grid())) {
        fail(ErrorCode::ShapeMismatch, "momentum_shift requires identical grids");
    }
    return momentum_expectation(after, hbar) - momentum_expectation(before, hbar);
}

GlobalPhase global_phase_between(const PointerWavefunction &a, const PointerWavefunction &b) {
    const Complex ab = overlap(a, b);
    if (std::abs(ab) < 1e-12) {
        fail(ErrorCode::DegenerateOverlap, "states are orthogonal; global phase is undefined");
    }
    GlobalPhase out;
    out.theta = std::arg(ab);
    const Complex rotation = std::polar(1.0, out.theta);
    for (std::size_t k = 0; k < a.samples().size(); ++k) {
        out.residual = std::max(out.residual, std::abs(b.samples()[k] - rotation * a.samples()[k]));
    }
    return out;
}

} // namespace vnp
