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

#include "vnp/measurement.hpp"

#include <cmath>
#include <string>

#include "vnp/error.hpp"

namespace vnp {

namespace {

constexpr double kPointerNormTolerance = 1e-10;
constexpr double kMinPostselectedNorm = 1e-20;

void require_dims(const Projector &a, const SystemState &psi, const char *what) {
    if (a.dim() != psi.dim()) {
        fail(ErrorCode::ShapeMismatch, std::string(what) + ": projector dimension " +
                                           std::to_string(a.dim()) + " vs state dimension " +
                                           std::to_string(psi.dim()));
    }
}

void require_normalized(const PointerWavefunction &phi, const char *what) {
    if (std::abs(phi.norm_squared() - 1.0) > kPointerNormTolerance) {
        fail(ErrorCode::InvalidArgument, std::string(what) + ": pointer is not normalized");
    }
}

Samples row_samples(const Matrix &m, Eigen::Index row) {
    Samples s(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        s[static_cast<std::size_t>(k)] = m(row, k);
    }
    return s;
}

struct ShiftedPair {
    PointerWavefunction shifted;
    Complex shifted_overlap;
};

ShiftedPair shift_pointer(const PointerWavefunction &phi, const MeasurementConfig &cfg) {
    validate_config(cfg);
    PointerWavefunction shifted = translate(phi, cfg.gamma, cfg.shift_mode);
    const Complex so = overlap(phi, shifted);
    return {std::move(shifted), so};
}

} // namespace

EntangledState::EntangledState(PointerGrid grid, Matrix amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.cols()) != grid_.size()) {
        fail(ErrorCode::ShapeMismatch, "entangled state column count does not match the grid");
    }
    if (amplitudes_.rows() < 1) {
        fail(ErrorCode::ShapeMismatch, "entangled state needs at least one system row");
    }
}

EntangledState EntangledState::product(const SystemState &psi, const PointerWavefunction &phi) {
    const auto n = static_cast<Eigen::Index>(phi.samples().size());
    Eigen::RowVectorXcd pointer(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        pointer(k) = phi.samples()[static_cast<std::size_t>(k)];
    }
    return EntangledState(phi.grid(), psi.amplitudes() * pointer);
}

double EntangledState::norm_squared() const noexcept {
    return amplitudes_.squaredNorm() * grid_.dq();
}

std::vector<double> EntangledState::marginal_density() const {
    std::vector<double> rho(grid_.size(), 0.0);
    for (Eigen::Index k = 0; k < amplitudes_.cols(); ++k) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < amplitudes_.rows(); ++j) {
            sum += std::norm(amplitudes_(j, k));
        }
        rho[static_cast<std::size_t>(k)] = sum;
    }
    return rho;
}

PointerWavefunction EntangledState::component(std::size_t j) const {
    if (j >= dim()) {
        fail(ErrorCode::InvalidArgument, "system index out of range");
    }
    return PointerWavefunction(grid_, row_samples(amplitudes_, static_cast<Eigen::Index>(j)));
}

EntangledState apply_measurement_operator(const Projector &a, const EntangledState &state,
                                          const MeasurementConfig &cfg, bool adjoint) {
    validate_config(cfg);
    if (a.dim() != state.dim()) {
        fail(ErrorCode::ShapeMismatch, "apply_measurement_operator: dimension mismatch");
    }
    const Matrix &c = state.amplitudes();
    const double shift = adjoint ? -cfg.gamma : cfg.gamma;
    Matrix shifted(c.rows(), c.cols());
    for (Eigen::Index j = 0; j < c.rows(); ++j) {
        const PointerWavefunction row(state.grid(), row_samples(c, j));
        const PointerWavefunction moved = translate(row, shift, cfg.shift_mode);
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            shifted(j, k) = moved.samples()[static_cast<std::size_t>(k)];
        }
    }
    Matrix out = c - a.matrix() * c + a.matrix() * shifted;
    return EntangledState(state.grid(), std::move(out));
}

EntangledState ps_measure(const Projector &a, const SystemState &psi,
                          const PointerWavefunction &phi, const MeasurementConfig &cfg) {
    require_dims(a, psi, "ps_measure");
    require_normalized(phi, "ps_measure");
    const ShiftedPair pair = shift_pointer(phi, cfg);
    const Vector a_psi = a.matrix() * psi.amplitudes();
    const Vector rest = psi.amplitudes() - a_psi;

    const auto d = static_cast<Eigen::Index>(psi.dim());
    const auto n = static_cast<Eigen::Index>(phi.samples().size());
    Matrix c(d, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex unshifted = phi.samples()[static_cast<std::size_t>(k)];
        const Complex moved = pair.shifted.samples()[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < d; ++j) {
            c(j, k) = rest(j) * unshifted + a_psi(j) * moved;
        }
    }
    return EntangledState(phi.grid(), std::move(c));
}

std::vector<double> ps_pointer_density(const Projector &a, const SystemState &psi,
                                       const PointerWavefunction &phi,
                                       const MeasurementConfig &cfg) {
    require_dims(a, psi, "ps_pointer_density");
    require_normalized(phi, "ps_pointer_density");
    const double weight = expectation(a, psi);
    const ShiftedPair pair = shift_pointer(phi, cfg);
    std::vector<double> rho(phi.samples().size());
    for (std::size_t k = 0; k < rho.size(); ++k) {
        rho[k] = (1.0 - weight) * std::norm(phi.samples()[k]) +
                 weight * std::norm(pair.shifted.samples()[k]);
    }
    return rho;
}

std::vector<double> ps_cross_term(const Projector &a, const SystemState &psi,
                                  const PointerWavefunction &phi, const MeasurementConfig &cfg) {
    const std::vector<double> marginal = ps_measure(a, psi, phi, cfg).marginal_density();
    std::vector<double> cross = ps_pointer_density(a, psi, phi, cfg);
    for (std::size_t k = 0; k < cross.size(); ++k) {
        cross[k] = marginal[k] - cross[k];
    }
    return cross;
}

PostselectedPointer postselect(const EntangledState &state, const SystemState &post) {
    if (post.dim() != state.dim()) {
        fail(ErrorCode::ShapeMismatch, "postselect: dimension mismatch");
    }
    const Eigen::RowVectorXcd u = post.amplitudes().adjoint() * state.amplitudes();
    Samples samples(static_cast<std::size_t>(u.size()));
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        samples[static_cast<std::size_t>(k)] = u(k);
    }
    PointerWavefunction unnormalized(state.grid(), std::move(samples));
    const double probability = unnormalized.norm_squared();
    if (probability < kMinPostselectedNorm) {
        fail(ErrorCode::PostselectionImpossible,
             "postselected pointer vanishes; the postselected state is unreachable");
    }
    return {unnormalized.scaled(1.0 / std::sqrt(probability)), probability};
}

PpsResult pps_pointer_state(const Projector &a, const SystemState &pre, const SystemState &post,
                            const PointerWavefunction &phi, const MeasurementConfig &cfg) {
    require_dims(a, pre, "pps_pointer_state");
    require_dims(a, post, "pps_pointer_state");
    require_normalized(phi, "pps_pointer_state");
    const ShiftedPair pair = shift_pointer(phi, cfg);
    const WeakValueReport report = make_weak_value_report(a, pre, post, pair.shifted_overlap);
    if (!(report.normalization > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "PPS normalization constant vanishes");
    }

    const Complex aw = report.weak_value;
    Samples bare(phi.samples().size());
    for (std::size_t k = 0; k < bare.size(); ++k) {
        bare[k] = (1.0 - aw) * phi.samples()[k] + aw * pair.shifted.samples()[k];
    }
    const PointerWavefunction unnormalized(phi.grid(), std::move(bare));
    const Complex prefactor = std::polar(1.0 / report.normalization, report.phase_chi);
    const double probability = std::norm(report.overlap) * unnormalized.norm_squared();
    return {unnormalized.scaled(prefactor), report, probability};
}

DensityDecomposition pps_pointer_density(const Projector &a, const SystemState &pre,
                                         const SystemState &post, const PointerWavefunction &phi,
                                         const MeasurementConfig &cfg) {
    require_dims(a, pre, "pps_pointer_density");
    require_dims(a, post, "pps_pointer_density");
    require_normalized(phi, "pps_pointer_density");
    const ShiftedPair pair = shift_pointer(phi, cfg);
    const WeakValueReport report = make_weak_value_report(a, pre, post, pair.shifted_overlap);
    if (!(report.normalization > 0.0)) {
        fail(ErrorCode::NumericalDegeneracy, "PPS normalization constant vanishes");
    }

    const Complex aw = report.weak_value;
    const double inv_n2 = 1.0 / (report.normalization * report.normalization);
    const double w_unshifted = std::norm(1.0 - aw) * inv_n2;
    const double w_shifted = std::norm(aw) * inv_n2;
    const Complex interference = aw * (1.0 - std::conj(aw));

    const std::size_t n = phi.samples().size();
    DensityDecomposition out{phi.grid(), {}, {}, {}, {}, aw, pair.shifted_overlap};
    out.total.resize(n);
    out.unshifted.resize(n);
    out.shifted.resize(n);
    out.cross.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex f0 = phi.samples()[k];
        const Complex f1 = pair.shifted.samples()[k];
        out.unshifted[k] = w_unshifted * std::norm(f0);
        out.shifted[k] = w_shifted * std::norm(f1);
        out.cross[k] = 2.0 * (interference * std::conj(f0) * f1).real() * inv_n2;
        out.total[k] = out.unshifted[k] + out.shifted[k] + out.cross[k];
    }
    return out;
}

DensityDecomposition ps_density_decomposition(const Projector &a, const SystemState &psi,
                                              const PointerWavefunction &phi,
                                              const MeasurementConfig &cfg) {
    require_dims(a, psi, "ps_density_decomposition");
    require_normalized(phi, "ps_density_decomposition");
    const double weight = expectation(a, psi);
    const ShiftedPair pair = shift_pointer(phi, cfg);
    const std::vector<double> marginal = ps_measure(a, psi, phi, cfg).marginal_density();

    const std::size_t n = phi.samples().size();
    DensityDecomposition out{phi.grid(), marginal, {}, {}, {}, Complex(weight, 0.0),
                             pair.shifted_overlap};
    out.unshifted.resize(n);
    out.shifted.resize(n);
    out.cross.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.unshifted[k] = (1.0 - weight) * std::norm(phi.samples()[k]);
        out.shifted[k] = weight * std::norm(pair.shifted.samples()[k]);
        out.cross[k] = marginal[k] - out.unshifted[k] - out.shifted[k];
    }
    return out;
}

} // namespace vnp
