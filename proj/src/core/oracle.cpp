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

#include "vnp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vnp/error.hpp"
#include "vnp/random.hpp"
#include "vnp/spectral.hpp"

namespace vnp {

namespace {

constexpr double kExponentialResidualLimit = 1e-9;
constexpr double kUnitarityLimit = 1e-9;
constexpr int kMaxTaylorTerms = 200;

double one_norm(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

Matrix exponential_unchecked(const Matrix &m, const OracleConfig &cfg) {
    const Eigen::Index d = m.rows();
    const double norm = one_norm(m);
    int squarings = 0;
    if (norm > cfg.scaling_threshold) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / cfg.scaling_threshold)));
    }
    const Matrix scaled = m * std::ldexp(1.0, -squarings);

    Matrix sum = Matrix::Identity(d, d);
    Matrix term = Matrix::Identity(d, d);
    int k = 1;
    for (; k <= kMaxTaylorTerms; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        sum += term;
        if (one_norm(term) <= cfg.series_tolerance) {
            break;
        }
    }
    if (k > kMaxTaylorTerms) {
        fail(ErrorCode::Internal, "Taylor series did not converge");
    }
    for (int s = 0; s < squarings; ++s) {
        sum = (sum * sum).eval();
    }
    return sum;
}

double max_deviation(const Matrix &a, const Matrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

EntangledState with_basis_row(const PointerWavefunction &probe, std::size_t dim,
                              std::size_t row) {
    return EntangledState::product(SystemState::basis(dim, row), probe);
}

} // namespace

void validate_oracle_config(const OracleConfig &cfg) {
    if (!(cfg.series_tolerance > 0.0 && cfg.series_tolerance <= 1e-10)) {
        fail(ErrorCode::InvalidConfig, "series_tolerance must lie in (0, 1e-10]");
    }
    if (!(cfg.scaling_threshold >= 0.25 && cfg.scaling_threshold <= 1.0)) {
        fail(ErrorCode::InvalidConfig, "scaling_threshold must lie in [0.25, 1]");
    }
}

Matrix matrix_exponential(const Matrix &m, const OracleConfig &cfg) {
    validate_oracle_config(cfg);
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorCode::InvalidMatrix, "matrix exponential needs a non-empty square matrix");
    }
    if (!m.allFinite()) {
        fail(ErrorCode::InvalidMatrix, "matrix exponential of non-finite entries");
    }
    Matrix result = exponential_unchecked(m, cfg);
    if (cfg.check_residual) {
        const Matrix inverse = exponential_unchecked(-m, cfg);
        const Eigen::Index d = m.rows();
        const double residual = max_deviation(result * inverse, Matrix::Identity(d, d));
        if (residual > kExponentialResidualLimit) {
            fail(ErrorCode::ToleranceBreach,
                 "matrix exponential residual " + std::to_string(residual) + " exceeds 1e-9");
        }
    }
    return result;
}

double exponential_residual(const Matrix &m, const OracleConfig &cfg) {
    OracleConfig unchecked = cfg;
    unchecked.check_residual = false;
    const Matrix forward = matrix_exponential(m, unchecked);
    const Matrix backward = matrix_exponential(-m, unchecked);
    return max_deviation(forward * backward, Matrix::Identity(m.rows(), m.cols()));
}

CouplingPropagator::CouplingPropagator(const Matrix &op, const PointerGrid &grid,
                                       const MeasurementConfig &cfg, const OracleConfig &ocfg)
    : dim_(static_cast<std::size_t>(op.rows())), grid_(grid) {
    validate_config(cfg);
    validate_oracle_config(ocfg);
    if (op.rows() != op.cols()) {
        fail(ErrorCode::InvalidMatrix, "coupling operator must be square");
    }
    per_momentum_.reserve(grid.size());
    const Complex minus_i(0.0, -1.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double p = cfg.hbar * grid.wavenumber(j);
        const Matrix generator = (minus_i * (cfg.gamma * p / cfg.hbar)) * op;
        per_momentum_.push_back(matrix_exponential(generator, ocfg));
    }
}

EntangledState CouplingPropagator::apply(const EntangledState &state) const {
    if (state.dim() != dim_ || !(state.grid() == grid_)) {
        fail(ErrorCode::ShapeMismatch, "propagator and state shapes differ");
    }
    const Matrix &c = state.amplitudes();
    const Eigen::Index d = c.rows();
    const Eigen::Index n = c.cols();

    Matrix spectrum(d, n);
    for (Eigen::Index j = 0; j < d; ++j) {
        Samples row(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            row[static_cast<std::size_t>(k)] = c(j, k);
        }
        const Samples transformed = forward_dft(row);
        for (Eigen::Index k = 0; k < n; ++k) {
            spectrum(j, k) = transformed[static_cast<std::size_t>(k)];
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        spectrum.col(k) = (per_momentum_[static_cast<std::size_t>(k)] * spectrum.col(k)).eval();
    }
    Matrix out(d, n);
    for (Eigen::Index j = 0; j < d; ++j) {
        Samples row(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            row[static_cast<std::size_t>(k)] = spectrum(j, k);
        }
        const Samples back = inverse_dft(row);
        for (Eigen::Index k = 0; k < n; ++k) {
            out(j, k) = back[static_cast<std::size_t>(k)];
        }
    }

    EntangledState result(grid_, std::move(out));
    const double before = state.norm_squared();
    const double after = result.norm_squared();
    if (std::abs(after - before) > kUnitarityLimit * std::max(before, 1.0)) {
        fail(ErrorCode::ToleranceBreach, "oracle evolution failed to preserve the norm");
    }
    return result;
}

EntangledState CouplingPropagator::apply(const SystemState &psi,
                                         const PointerWavefunction &phi) const {
    return apply(EntangledState::product(psi, phi));
}

EntangledState momentum_space_evolve(const Projector &a, const SystemState &psi,
                                     const PointerWavefunction &phi, const MeasurementConfig &cfg,
                                     const OracleConfig &ocfg) {
    if (a.dim() != psi.dim()) {
        fail(ErrorCode::ShapeMismatch, "momentum_space_evolve: dimension mismatch");
    }
    return CouplingPropagator(a.matrix(), phi.grid(), cfg, ocfg).apply(psi, phi);
}

std::vector<PointerWavefunction> identity_probes(const PointerGrid &grid) {
    const double extent = grid.q_max() - grid.q_min();
    const double sigma = extent / 40.0;
    const double center = grid.q_min() + 0.5 * extent;
    const PointerWavefunction gaussian = gaussian_pointer(grid, center, sigma);
    return {gaussian, boost(gaussian, 1.3 / sigma)};
}

double operator_identity_deviation(const Matrix &op, const MeasurementConfig &cfg,
                                   const PointerGrid &grid, const OracleConfig &ocfg) {
    const CouplingPropagator propagator(op, grid, cfg, ocfg);
    const Projector closed_form = Projector::unchecked(op);
    double deviation = 0.0;
    for (const PointerWavefunction &probe : identity_probes(grid)) {
        for (std::size_t j = 0; j < propagator.dim(); ++j) {
            const EntangledState input = with_basis_row(probe, propagator.dim(), j);
            const EntangledState exact = propagator.apply(input);
            const EntangledState closed = apply_measurement_operator(closed_form, input, cfg);
            deviation = std::max(deviation, max_deviation(exact.amplitudes(), closed.amplitudes()));
        }
    }
    return deviation;
}

double operator_identity_check(const Projector &a, const MeasurementConfig &cfg,
                               const PointerGrid &grid, const OracleConfig &ocfg) {
    return operator_identity_deviation(a.matrix(), cfg, grid, ocfg);
}

double inverse_identity_check(const Projector &a, const MeasurementConfig &cfg,
                              const PointerGrid &grid, std::uint64_t seed, int trials) {
    Rng rng(seed);
    const std::vector<PointerWavefunction> probes = identity_probes(grid);
    double deviation = 0.0;
    for (int t = 0; t < trials; ++t) {
        const SystemState psi = random_state(a.dim(), rng);
        const PointerWavefunction &probe = probes[static_cast<std::size_t>(t) % probes.size()];
        const EntangledState input = EntangledState::product(psi, probe);
        const EntangledState forward = apply_measurement_operator(a, input, cfg, false);
        const EntangledState back = apply_measurement_operator(a, forward, cfg, true);
        deviation = std::max(deviation, max_deviation(back.amplitudes(), input.amplitudes()));
    }
    return deviation;
}

} // namespace vnp
