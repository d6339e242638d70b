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

#include "vnp/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vnp/error.hpp"

namespace vnp {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        fail(ErrorCode::ShapeMismatch, std::string(what) + ": dimension " + std::to_string(a) +
                                           " does not match " + std::to_string(b));
    }
}

double max_abs_entry(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace

SystemState SystemState::from_amplitudes(Vector amplitudes) {
    if (amplitudes.size() < 2) {
        fail(ErrorCode::InvalidState, "system dimension must be at least 2");
    }
    if (!amplitudes.allFinite()) {
        fail(ErrorCode::InvalidState, "state amplitudes must be finite");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kStateNormTolerance) {
        fail(ErrorCode::InvalidState,
             "state is not normalized (norm = " + std::to_string(norm) + ")");
    }
    return SystemState(std::move(amplitudes));
}

SystemState SystemState::normalized(Vector amplitudes) {
    if (amplitudes.size() < 2) {
        fail(ErrorCode::InvalidState, "system dimension must be at least 2");
    }
    if (!amplitudes.allFinite()) {
        fail(ErrorCode::InvalidState, "state amplitudes must be finite");
    }
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        fail(ErrorCode::InvalidState, "cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return SystemState(std::move(amplitudes));
}

SystemState SystemState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        fail(ErrorCode::InvalidArgument, "basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return from_amplitudes(std::move(v));
}

SystemState SystemState::with_global_phase(double alpha) const {
    return SystemState(amplitudes_ * std::polar(1.0, alpha));
}

ProjectorValidation validate_projector(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        fail(ErrorCode::ShapeMismatch, "projector candidate must be square, got " +
                                           std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
    }
    ProjectorValidation report;
    if (!m.allFinite()) {
        report.hermiticity_residual = report.idempotency_residual = report.spectrum_residual =
            std::numeric_limits<double>::infinity();
        return report;
    }
    report.hermiticity_residual = max_abs_entry(m - m.adjoint());
    report.idempotency_residual = max_abs_entry(m * m - m);

    // Spectrum of the Hermitian part; for an accepted matrix the two coincide.
    const Matrix hermitian_part = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    double spectrum = 0.0;
    for (double lambda : solver.eigenvalues()) {
        spectrum = std::max(spectrum, std::min(std::abs(lambda), std::abs(lambda - 1.0)));
    }
    report.spectrum_residual = spectrum;
    report.passed = report.hermiticity_residual <= tol && report.idempotency_residual <= tol &&
                    report.spectrum_residual <= std::max(tol, kSpectrumTolerance);
    return report;
}

Projector Projector::from_matrix(Matrix m) {
    if (m.rows() < 2) {
        fail(ErrorCode::InvalidProjector, "projector dimension must be at least 2");
    }
    const ProjectorValidation v = validate_projector(m, kIdempotencyTolerance);
    if (v.hermiticity_residual > kHermiticityTolerance) {
        fail(ErrorCode::InvalidProjector,
             "matrix is not Hermitian (residual " + std::to_string(v.hermiticity_residual) + ")");
    }
    if (v.idempotency_residual > kIdempotencyTolerance) {
        fail(ErrorCode::InvalidProjector,
             "matrix is not idempotent (residual " + std::to_string(v.idempotency_residual) + ")");
    }
    if (v.spectrum_residual > kSpectrumTolerance) {
        fail(ErrorCode::InvalidProjector, "eigenvalues are not in {0, 1}");
    }
    return Projector(std::move(m));
}

Projector Projector::unchecked(Matrix m) {
    if (m.rows() != m.cols()) {
        fail(ErrorCode::ShapeMismatch, "operator must be square");
    }
    return Projector(std::move(m));
}

Projector Projector::zero(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return from_matrix(Matrix::Zero(d, d));
}

Projector Projector::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return from_matrix(Matrix::Identity(d, d));
}

Projector Projector::complement() const {
    const auto d = matrix_.rows();
    return Projector(Matrix::Identity(d, d) - matrix_);
}

Projector make_projector_from_state(const SystemState &v) {
    const Vector &a = v.amplitudes();
    return Projector::from_matrix(a * a.adjoint());
}

Projector make_projector_onto_span(std::span<const SystemState> vectors) {
    if (vectors.empty()) {
        fail(ErrorCode::InvalidArgument, "span needs at least one vector");
    }
    const std::size_t d = vectors.front().dim();
    if (vectors.size() > d) {
        fail(ErrorCode::InvalidArgument, "more spanning vectors than the system dimension");
    }
    const auto rank = static_cast<Eigen::Index>(vectors.size());
    Matrix columns(static_cast<Eigen::Index>(d), rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        require_same_dim(vectors[static_cast<std::size_t>(k)].dim(), d, "make_projector_onto_span");
        columns.col(k) = vectors[static_cast<std::size_t>(k)].amplitudes();
    }
    Eigen::HouseholderQR<Matrix> qr(columns);
    const Matrix r = qr.matrixQR().topRows(rank).template triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < rank; ++k) {
        if (std::abs(r(k, k)) < 1e-10) {
            fail(ErrorCode::InvalidArgument, "spanning vectors are linearly dependent");
        }
    }
    const Matrix q = qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(d), rank);
    Matrix p = q * q.adjoint();
    // Exact Hermitian symmetry; the product is Hermitian only up to rounding.
    p = (0.5 * (p + p.adjoint())).eval();
    return Projector::from_matrix(std::move(p));
}

double expectation(const Projector &a, const SystemState &psi) {
    require_same_dim(a.dim(), psi.dim(), "expectation");
    const Vector &v = psi.amplitudes();
    return v.dot(a.matrix() * v).real();
}

Complex inner_product(const SystemState &post, const SystemState &pre) {
    require_same_dim(post.dim(), pre.dim(), "inner_product");
    // Eigen's dot conjugates its first argument.
    return post.amplitudes().dot(pre.amplitudes());
}

Complex weak_value(const Projector &a, const SystemState &pre, const SystemState &post) {
    require_same_dim(a.dim(), pre.dim(), "weak_value");
    const Complex overlap = inner_product(post, pre);
    if (std::abs(overlap) <= kOverlapEpsilon) {
        fail(ErrorCode::OrthogonalPostselection,
             "pre- and postselected states are orthogonal (|<post|pre>| <= 1e-10)");
    }
    const Complex numerator = post.amplitudes().dot(a.matrix() * pre.amplitudes());
    return numerator / overlap;
}

double wrap_phase(double angle) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);
    if (wrapped <= -std::numbers::pi) {
        wrapped += two_pi;
    }
    return wrapped;
}

PancharatnamPhase pancharatnam_phase(const SystemState &pre, const SystemState &post) {
    const Complex overlap = inner_product(post, pre);
    if (std::abs(overlap) <= kOverlapEpsilon) {
        fail(ErrorCode::OrthogonalPostselection,
             "pre- and postselected states are orthogonal (|<post|pre>| <= 1e-10)");
    }
    return {wrap_phase(std::arg(overlap)), overlap};
}

double normalization_constant(Complex weak_value, Complex shifted_overlap) {
    if (std::abs(shifted_overlap) > 1.0 + 1e-10) {
        fail(ErrorCode::InvalidArgument, "|<phi|S|phi>| exceeds 1");
    }
    const Complex one_minus = 1.0 - weak_value;
    const double radicand = std::norm(one_minus) + std::norm(weak_value) +
                            2.0 * (weak_value * std::conj(one_minus) * shifted_overlap).real();
    if (radicand < -1e-10) {
        fail(ErrorCode::NumericalDegeneracy,
             "normalization radicand is negative (" + std::to_string(radicand) + ")");
    }
    return std::sqrt(std::max(radicand, 0.0));
}

WeakValueReport make_weak_value_report(const Projector &a, const SystemState &pre,
                                       const SystemState &post, Complex shifted_overlap) {
    WeakValueReport report;
    const PancharatnamPhase phase = pancharatnam_phase(pre, post);
    report.weak_value = weak_value(a, pre, post);
    report.overlap = phase.overlap;
    report.phase_chi = phase.chi;
    report.shifted_overlap = shifted_overlap;
    report.normalization = normalization_constant(report.weak_value, shifted_overlap);
    return report;
}

} // namespace vnp
