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
#include <vector>

#include "vnp/pointer.hpp"
#include "vnp/system.hpp"

namespace vnp {

/// Joint system (x) pointer state. Row j holds the pointer samples attached
/// to system basis state |j>.
class EntangledState {
  public:
    EntangledState(PointerGrid grid, Matrix amplitudes);
    static EntangledState product(const SystemState &psi, const PointerWavefunction &phi);

    const PointerGrid &grid() const noexcept { return grid_; }
    const Matrix &amplitudes() const noexcept { return amplitudes_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.rows()); }

    /// sum_{j,k} |c_jk|^2 dq.
    double norm_squared() const noexcept;
    /// Pointer density with the system traced out, sum_j |c_jk|^2.
    std::vector<double> marginal_density() const;
    /// Row j as a pointer wavefunction.
    PointerWavefunction component(std::size_t j) const;

  private:
    PointerGrid grid_;
    Matrix amplitudes_;
};

/// (1 - A + A S) applied to an arbitrary joint state, or its adjoint
/// (1 - A + A S^dagger) when `adjoint` is set. A acts on the system factor and
/// S on the pointer factor, so [A, S] = 0 holds by construction.
EntangledState apply_measurement_operator(const Projector &a, const EntangledState &state,
                                          const MeasurementConfig &cfg, bool adjoint = false);

/// Pointer state after measuring A on the preselected |psi>:
/// c_jk = [(1 - A) psi]_j phi(q_k) + [A psi]_j phi(q_k - gamma).
EntangledState ps_measure(const Projector &a, const SystemState &psi,
                          const PointerWavefunction &phi, const MeasurementConfig &cfg);

/// (1 - <A>) |phi(q)|^2 + <A> |phi(q - gamma)|^2.
std::vector<double> ps_pointer_density(const Projector &a, const SystemState &psi,
                                       const PointerWavefunction &phi,
                                       const MeasurementConfig &cfg);

/// Marginal of ps_measure minus ps_pointer_density. Vanishes for any
/// idempotent A.
std::vector<double> ps_cross_term(const Projector &a, const SystemState &psi,
                                  const PointerWavefunction &phi, const MeasurementConfig &cfg);

struct PostselectedPointer {
    PointerWavefunction pointer; // normalized
    double probability = 0.0;    // squared norm before normalization
};

/// Projects the system factor onto <post|. Throws PostselectionImpossible if
/// the projected squared norm is below 1e-20.
PostselectedPointer postselect(const EntangledState &state, const SystemState &post);

struct PpsResult {
    PointerWavefunction pointer;
    WeakValueReport report;
    double postselection_probability = 0.0;
};

/// e^{i chi} / N * [(1 - Aw) phi(q) + Aw phi(q - gamma)].
PpsResult pps_pointer_state(const Projector &a, const SystemState &pre, const SystemState &post,
                            const PointerWavefunction &phi, const MeasurementConfig &cfg);

/// Pointwise split of a pointer density into the unshifted profile, the
/// shifted profile and the interference cross term.
struct DensityDecomposition {
    PointerGrid grid;
    std::vector<double> total;
    std::vector<double> unshifted;
    std::vector<double> shifted;
    std::vector<double> cross;
    Complex weak_value;      // Aw for PPS, <A> for PS
    Complex shifted_overlap; // <phi|S|phi>
};

/// PPS density: total = (1/N^2){|1-Aw|^2|phi(q)|^2 + |Aw|^2|phi(q-gamma)|^2
///                               + 2 Re[Aw (1-Aw*) phi*(q) phi(q-gamma)]}.
DensityDecomposition pps_pointer_density(const Projector &a, const SystemState &pre,
                                         const SystemState &post, const PointerWavefunction &phi,
                                         const MeasurementConfig &cfg);

/// PS counterpart: total is the marginal of ps_measure and cross is
/// ps_cross_term.
DensityDecomposition ps_density_decomposition(const Projector &a, const SystemState &psi,
                                              const PointerWavefunction &phi,
                                              const MeasurementConfig &cfg);

} // namespace vnp
