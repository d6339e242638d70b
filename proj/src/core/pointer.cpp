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

#include "vnp/pointer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "vnp/error.hpp"
#include "vnp/spectral.hpp"

namespace vnp {

namespace {

constexpr double kCommensurateTolerance = 1e-9;
constexpr double kWrapTolerance = 1e-8;

double max_abs(const Samples &s) {
    double m = 0.0;
    for (const auto &v : s) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Fails if samples that a shift by `count` bins would carry across the
// periodic boundary hold significant amplitude.
void check_wrap(const Samples &s, long count) {
    const long n = static_cast<long>(s.size());
    if (count == 0) {
        return;
    }
    if (std::labs(count) >= n) {
        fail(ErrorCode::GridOverflow, "shift exceeds the grid extent; enlarge the grid");
    }
    const double limit = kWrapTolerance * max_abs(s);
    const long begin = count > 0 ? n - count : 0;
    const long end = count > 0 ? n : -count;
    for (long k = begin; k < end; ++k) {
        if (std::abs(s[static_cast<std::size_t>(k)]) > limit) {
            fail(ErrorCode::GridOverflow,
                 "translation pushes pointer amplitude across the grid boundary; "
                 "enlarge the grid or reduce |gamma|");
        }
    }
}

Samples roll(const Samples &s, long count) {
    const long n = static_cast<long>(s.size());
    Samples out(s.size());
    for (long k = 0; k < n; ++k) {
        long src = (k - count) % n;
        if (src < 0) {
            src += n;
        }
        out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(src)];
    }
    return out;
}

} // namespace

PointerGrid::PointerGrid(double q_min, double dq, std::size_t n) : q_min_(q_min), dq_(dq), n_(n) {
    if (!std::isfinite(q_min) || !std::isfinite(dq) || dq <= 0.0) {
        fail(ErrorCode::InvalidGrid, "grid spacing must be positive and finite");
    }
    if (n < 64 || !std::has_single_bit(n)) {
        fail(ErrorCode::InvalidGrid,
             "grid size must be a power of two >= 64, got " + std::to_string(n));
    }
}

PointerGrid PointerGrid::from_extent(double q_min, double q_max, std::size_t n) {
    if (!(q_max > q_min)) {
        fail(ErrorCode::InvalidGrid, "grid requires q_max > q_min");
    }
    if (n == 0) {
        fail(ErrorCode::InvalidGrid, "grid size must be positive");
    }
    return PointerGrid(q_min, (q_max - q_min) / static_cast<double>(n), n);
}

PointerGrid PointerGrid::standard() { return from_extent(-20.0, 20.0, 1024); }

double PointerGrid::wavenumber(std::size_t j) const noexcept {
    const auto n = static_cast<long>(n_);
    long f = static_cast<long>(j);
    if (f >= n / 2) {
        f -= n;
    }
    return 2.0 * std::numbers::pi * static_cast<double>(f) / (static_cast<double>(n_) * dq_);
}

std::vector<double> PointerGrid::positions() const {
    std::vector<double> q(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        q[k] = position(k);
    }
    return q;
}

std::vector<double> PointerGrid::wavenumbers() const {
    std::vector<double> k(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        k[j] = wavenumber(j);
    }
    return k;
}

PointerWavefunction::PointerWavefunction(PointerGrid grid, Samples samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        fail(ErrorCode::ShapeMismatch, "sample count " + std::to_string(samples_.size()) +
                                           " does not match grid size " +
                                           std::to_string(grid_.size()));
    }
}

double PointerWavefunction::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto &v : samples_) {
        sum += std::norm(v);
    }
    return sum * grid_.dq();
}

PointerWavefunction PointerWavefunction::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "cannot normalize a vanishing pointer");
    }
    return scaled(1.0 / std::sqrt(n2));
}

PointerWavefunction PointerWavefunction::scaled(std::complex<double> factor) const {
    Samples out(samples_);
    for (auto &v : out) {
        v *= factor;
    }
    return PointerWavefunction(grid_, std::move(out));
}

bool PointerWavefunction::boundary_decay_ok(double rel) const noexcept {
    const double limit = rel * max_abs(samples_);
    return std::abs(samples_.front()) < limit && std::abs(samples_.back()) < limit;
}

void validate_config(const MeasurementConfig &cfg) {
    if (!std::isfinite(cfg.gamma)) {
        fail(ErrorCode::InvalidConfig, "gamma must be finite");
    }
    if (!std::isfinite(cfg.hbar) || cfg.hbar <= 0.0) {
        fail(ErrorCode::InvalidConfig, "hbar must be positive");
    }
}

bool is_commensurate(const PointerGrid &grid, double gamma) noexcept {
    const double bins = gamma / grid.dq();
    return std::abs(bins - std::round(bins)) <= kCommensurateTolerance;
}

PointerWavefunction gaussian_pointer(const PointerGrid &grid, double center, double sigma) {
    if (!std::isfinite(sigma) || sigma <= 0.0 || !std::isfinite(center)) {
        fail(ErrorCode::InvalidArgument, "Gaussian width must be positive and finite");
    }
    if (center - 6.0 * sigma < grid.q_min() || center + 6.0 * sigma > grid.q_max()) {
        fail(ErrorCode::GridTooSmall,
             "grid does not cover center +/- 6 sigma; enlarge the grid or narrow the pointer");
    }
    Samples s(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double x = grid.position(k) - center;
        s[k] = std::exp(-x * x / (4.0 * sigma * sigma));
    }
    return PointerWavefunction(grid, std::move(s)).normalized();
}

PointerWavefunction boost(const PointerWavefunction &phi, double wavenumber) {
    Samples s(phi.samples());
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] *= std::polar(1.0, wavenumber * phi.grid().position(k));
    }
    return PointerWavefunction(phi.grid(), std::move(s));
}

PointerWavefunction translate(const PointerWavefunction &phi, double gamma, ShiftMode mode) {
    if (!std::isfinite(gamma)) {
        fail(ErrorCode::InvalidArgument, "shift must be finite");
    }
    const PointerGrid &grid = phi.grid();
    const double bins = gamma / grid.dq();
    if (mode == ShiftMode::Automatic) {
        mode = is_commensurate(grid, gamma) ? ShiftMode::Commensurate : ShiftMode::Spectral;
    }
    if (mode == ShiftMode::Commensurate) {
        if (!is_commensurate(grid, gamma)) {
            fail(ErrorCode::InvalidArgument, "shift is not an integer multiple of the grid spacing");
        }
        const auto count = static_cast<long>(std::llround(bins));
        check_wrap(phi.samples(), count);
        return PointerWavefunction(grid, roll(phi.samples(), count));
    }

    const auto wrapped = static_cast<long>(bins > 0 ? std::ceil(bins) : std::floor(bins));
    check_wrap(phi.samples(), wrapped);
    Samples spectrum = forward_dft(phi.samples());
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        spectrum[j] *= std::polar(1.0, -grid.wavenumber(j) * gamma);
    }
    return PointerWavefunction(grid, inverse_dft(spectrum));
}

std::complex<double> overlap(const PointerWavefunction &a, const PointerWavefunction &b) {
    if (!(a.grid() == b.grid())) {
        fail(ErrorCode::ShapeMismatch, "overlap requires identical grids");
    }
    std::complex<double> sum = 0.0;
    const auto &x = a.samples();
    const auto &y = b.samples();
    for (std::size_t k = 0; k < x.size(); ++k) {
        sum += std::conj(x[k]) * y[k];
    }
    return sum * a.grid().dq();
}

double momentum_expectation(const PointerWavefunction &phi, double hbar) {
    const Samples spectrum = forward_dft(phi.samples());
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        const double w = std::norm(spectrum[j]);
        weighted += phi.grid().wavenumber(j) * w;
        total += w;
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "momentum expectation of a vanishing pointer");
    }
    return hbar * weighted / total;
}

double position_expectation(const PointerWavefunction &phi) {
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < phi.samples().size(); ++k) {
        const double w = std::norm(phi.samples()[k]);
        weighted += phi.grid().position(k) * w;
        total += w;
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "position expectation of a vanishing pointer");
    }
    return weighted / total;
}

std::vector<double> probability_density(const PointerWavefunction &phi) {
    std::vector<double> rho(phi.samples().size());
    for (std::size_t k = 0; k < rho.size(); ++k) {
        rho[k] = std::norm(phi.samples()[k]);
    }
    return rho;
}

} // namespace vnp
