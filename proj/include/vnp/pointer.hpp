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
#include <vector>

namespace vnp {

using Samples = std::vector<std::complex<double>>;

/// Uniform periodic position grid q_k = q_min + k*dq, k = 0..n-1.
/// n must be a power of two and at least 64.
class PointerGrid {
  public:
    PointerGrid(double q_min, double dq, std::size_t n);
    /// Grid covering [q_min, q_max) with n points.
    static PointerGrid from_extent(double q_min, double q_max, std::size_t n);
    /// [-20, 20) with 1024 points.
    static PointerGrid standard();

    double q_min() const noexcept { return q_min_; }
    double dq() const noexcept { return dq_; }
    std::size_t size() const noexcept { return n_; }
    double q_max() const noexcept { return q_min_ + dq_ * static_cast<double>(n_); }
    double position(std::size_t k) const noexcept { return q_min_ + dq_ * static_cast<double>(k); }

    /// Angular wavenumber of DFT bin j in FFT order; the Nyquist bin maps to
    /// the negative edge -pi/dq.
    double wavenumber(std::size_t j) const noexcept;
    std::vector<double> positions() const;
    std::vector<double> wavenumbers() const;

    bool operator==(const PointerGrid &) const = default;

  private:
    double q_min_;
    double dq_;
    std::size_t n_;
};

/// Pointer wavefunction sampled on a grid. Not necessarily normalized: the
/// unnormalized postselected pointer is also represented by this type.
class PointerWavefunction {
  public:
    PointerWavefunction(PointerGrid grid, Samples samples);

    const PointerGrid &grid() const noexcept { return grid_; }
    const Samples &samples() const noexcept { return samples_; }

    /// sum_k |phi_k|^2 dq.
    double norm_squared() const noexcept;
    PointerWavefunction normalized() const;
    PointerWavefunction scaled(std::complex<double> factor) const;

    /// |phi| at both edges below rel * max|phi|.
    bool boundary_decay_ok(double rel = 1e-8) const noexcept;

  private:
    PointerGrid grid_;
    Samples samples_;
};

enum class ShiftMode {
    Automatic,    ///< roll when gamma/dq is an integer within 1e-9, spectral otherwise
    Commensurate, ///< index roll; gamma must be commensurate with dq
    Spectral,     ///< multiply by exp(-i k gamma) in the momentum representation
};

/// Interaction strength and action scale of the impulsive coupling.
struct MeasurementConfig {
    double gamma = 0.0;
    double hbar = 1.0;
    ShiftMode shift_mode = ShiftMode::Automatic;
};

/// Throws InvalidConfig if hbar is not positive or gamma is not finite.
void validate_config(const MeasurementConfig &cfg);

/// True when gamma/dq is within 1e-9 of an integer.
bool is_commensurate(const PointerGrid &grid, double gamma) noexcept;

/// Normalized real Gaussian proportional to exp(-(q - center)^2 / (4 sigma^2)).
/// Throws GridTooSmall unless [center - 6 sigma, center + 6 sigma] lies inside
/// the grid.
PointerWavefunction gaussian_pointer(const PointerGrid &grid, double center, double sigma);

/// phi(q) * exp(i k q).
PointerWavefunction boost(const PointerWavefunction &phi, double wavenumber);

/// (S phi)(q) = phi(q - gamma). Throws GridOverflow if amplitude above
/// 1e-8 * max|phi| would wrap across the periodic boundary.
PointerWavefunction translate(const PointerWavefunction &phi, double gamma,
                              ShiftMode mode = ShiftMode::Automatic);

/// sum_k conj(a_k) b_k dq. Throws ShapeMismatch for different grids.
std::complex<double> overlap(const PointerWavefunction &a, const PointerWavefunction &b);

/// <p> evaluated from the momentum-space density, p = hbar * k.
double momentum_expectation(const PointerWavefunction &phi, double hbar = 1.0);

/// <q> of the (normalized) position density.
double position_expectation(const PointerWavefunction &phi);

/// |phi_k|^2 per grid point.
std::vector<double> probability_density(const PointerWavefunction &phi);

} // namespace vnp
