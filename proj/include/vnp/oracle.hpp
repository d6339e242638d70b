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
#include <vector>

#include "vnp/measurement.hpp"

namespace vnp {

/// Controls the scaling-and-squaring Taylor exponential.
struct OracleConfig {
    double series_tolerance = 1e-16; ///< stop once a Taylor term's 1-norm drops below this
    double scaling_threshold = 0.5;  ///< halve the argument until its 1-norm is at most this
    bool check_residual = true;      ///< verify ||e^M e^-M - 1|| <= 1e-9 on every call
};

/// Throws InvalidConfig unless series_tolerance is in (0, 1e-10] and
/// scaling_threshold in [0.25, 1].
void validate_oracle_config(const OracleConfig &cfg);

/// e^M by scaling and squaring of a truncated Taylor series. No structural
/// assumption is made about M. Throws InvalidMatrix for non-square or
/// non-finite input and ToleranceBreach if the inverse residual check fails.
Matrix matrix_exponential(const Matrix &m, const OracleConfig &cfg = {});

/// max-entry |e^M e^-M - 1|, both factors from matrix_exponential.
double exponential_residual(const Matrix &m, const OracleConfig &cfg = {});

/// Brute-force exp(-(i/hbar) gamma M p) on a joint state: every momentum
/// sample p of the pointer gets its own d x d exponential of -i gamma p M / hbar.
/// M is any square matrix; linearity is the only property used.
class CouplingPropagator {
  public:
    CouplingPropagator(const Matrix &op, const PointerGrid &grid, const MeasurementConfig &cfg,
                       const OracleConfig &ocfg = {});

    std::size_t dim() const noexcept { return dim_; }
    const PointerGrid &grid() const noexcept { return grid_; }

    /// Throws ToleranceBreach if the norm changes by more than 1e-9 relative.
    EntangledState apply(const EntangledState &state) const;
    EntangledState apply(const SystemState &psi, const PointerWavefunction &phi) const;

  private:
    std::size_t dim_;
    PointerGrid grid_;
    std::vector<Matrix> per_momentum_;
};

/// The literal exponential evolution of psi (x) phi under projector A.
EntangledState momentum_space_evolve(const Projector &a, const SystemState &psi,
                                     const PointerWavefunction &phi, const MeasurementConfig &cfg,
                                     const OracleConfig &ocfg = {});

/// Max per-amplitude deviation between the oracle propagator and the closed
/// form 1 - A + A S over the product states |j> (x) probe, for every basis
/// vector |j> and two probe pointers (a Gaussian and a boosted Gaussian,
/// both centred on the grid with sigma = extent / 40).
double operator_identity_check(const Projector &a, const MeasurementConfig &cfg,
                               const PointerGrid &grid, const OracleConfig &ocfg = {});

/// Same check for an arbitrary square operator; used as the negative control.
double operator_identity_deviation(const Matrix &op, const MeasurementConfig &cfg,
                                   const PointerGrid &grid, const OracleConfig &ocfg = {});

/// Applies (1 - A + A S) and then (1 - A + A S^dagger) to random product
/// states and returns the max deviation from the input.
double inverse_identity_check(const Projector &a, const MeasurementConfig &cfg,
                              const PointerGrid &grid, std::uint64_t seed = 7,
                              int trials = 4);

/// Probe pointers used by the identity checks.
std::vector<PointerWavefunction> identity_probes(const PointerGrid &grid);

} // namespace vnp
