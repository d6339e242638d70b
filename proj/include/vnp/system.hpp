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

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace vnp {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Below this |<post|pre>| a postselection is treated as orthogonal.
inline constexpr double kOverlapEpsilon = 1e-10;
inline constexpr double kStateNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kIdempotencyTolerance = 1e-10;
inline constexpr double kSpectrumTolerance = 1e-8;

/// Normalized pure state of a finite-dimensional system (d >= 2).
class SystemState {
  public:
    /// Throws InvalidState unless the L2 norm is 1 within 1e-12.
    static SystemState from_amplitudes(Vector amplitudes);
    /// Rescales to unit norm. Throws InvalidState for a zero vector.
    static SystemState normalized(Vector amplitudes);
    static SystemState basis(std::size_t dim, std::size_t index);

    const Vector &amplitudes() const noexcept { return amplitudes_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

    /// e^{i alpha} |this>.
    SystemState with_global_phase(double alpha) const;

  private:
    explicit SystemState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {}
    Vector amplitudes_;
};

struct ProjectorValidation {
    double hermiticity_residual = 0.0; // max_ij |M_ij - conj(M_ji)|
    double idempotency_residual = 0.0; // max_ij |(M^2 - M)_ij|
    double spectrum_residual = 0.0;    // max distance of an eigenvalue from {0, 1}
    bool passed = false;
};

/// Residuals of a candidate projector. `passed` compares the Hermiticity and
/// idempotency residuals against `tol` and the spectrum against
/// max(tol, kSpectrumTolerance). Throws ShapeMismatch for non-square input.
ProjectorValidation validate_projector(const Matrix &m, double tol = kIdempotencyTolerance);

/// Hermitian idempotent operator on the system space.
class Projector {
  public:
    /// Throws InvalidProjector when any invariant (1e-12 Hermiticity,
    /// 1e-10 idempotency, 1e-8 spectrum) fails.
    static Projector from_matrix(Matrix m);
    /// Skips validation. Only for negative controls that need a deliberately
    /// broken operator; every downstream invariant is void for such values.
    static Projector unchecked(Matrix m);
    static Projector zero(std::size_t dim);
    static Projector identity(std::size_t dim);

    const Matrix &matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    /// 1 - A.
    Projector complement() const;

  private:
    explicit Projector(Matrix m) : matrix_(std::move(m)) {}
    Matrix matrix_;
};

/// |v><v|.
Projector make_projector_from_state(const SystemState &v);

/// Orthogonal projector onto span(vectors). The vectors must share a
/// dimension and be linearly independent.
Projector make_projector_onto_span(std::span<const SystemState> vectors);

/// <psi|A|psi>.
double expectation(const Projector &a, const SystemState &psi);

/// <post|pre>.
Complex inner_product(const SystemState &post, const SystemState &pre);

/// <post|A|pre> / <post|pre>. Throws OrthogonalPostselection when
/// |<post|pre>| <= kOverlapEpsilon.
Complex weak_value(const Projector &a, const SystemState &pre, const SystemState &post);

struct PancharatnamPhase {
    double chi = 0.0; // principal branch (-pi, pi]
    Complex overlap;  // <post|pre>
};

PancharatnamPhase pancharatnam_phase(const SystemState &pre, const SystemState &post);

/// Maps an angle onto (-pi, pi].
double wrap_phase(double angle) noexcept;

/// sqrt(|1 - Aw|^2 + |Aw|^2 + 2 Re[Aw (1 - Aw*) <phi|S|phi>]).
/// Small negative radicands (>= -1e-10) clamp to zero; anything lower
/// throws NumericalDegeneracy.
double normalization_constant(Complex weak_value, Complex shifted_overlap);

struct WeakValueReport {
    Complex weak_value;
    Complex overlap;
    double phase_chi = 0.0;
    double normalization = 0.0;
    Complex shifted_overlap; // <phi|S|phi> used for `normalization`
};

WeakValueReport make_weak_value_report(const Projector &a, const SystemState &pre,
                                       const SystemState &post, Complex shifted_overlap);

} // namespace vnp
