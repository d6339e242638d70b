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

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vnp/error.hpp"
#include "vnp/oracle.hpp"
#include "vnp/random.hpp"

using namespace vnp;
namespace vt = vnp::testing;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

const PointerGrid kGrid = PointerGrid::standard();

double max_entry(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

// Reference exponential of a Hermitian generator: e^{iH} from the eigendecomposition.
Matrix hermitian_exponential(const Matrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (Eigen::Index j = 0; j < h.rows(); ++j) {
        phases(j) = std::polar(1.0, t * es.eigenvalues()(j));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

TEST(MatrixExponential, Zero) {
    EXPECT_EQ(max_entry(matrix_exponential(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)), 0.0);
}

TEST(MatrixExponential, DiagonalPhase) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.0, std::numbers::pi);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = -1.0;
    expected(1, 1) = 1.0;
    EXPECT_LT(max_entry(matrix_exponential(m) - expected), 1e-14);
}

TEST(MatrixExponential, AntiHermitianIsUnitary) {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Matrix h = random_hermitian(4, rng) * uniform(rng, 0.1, 20.0);
        Matrix u = matrix_exponential(Complex(0.0, 1.0) * h);
        EXPECT_LT(max_entry(u * u.adjoint() - Matrix::Identity(4, 4)), 1e-9);
        EXPECT_LT(max_entry(u - hermitian_exponential(h, 1.0)), 1e-9);
    }
}

TEST(MatrixExponential, RealScalarAndNilpotent) {
    Matrix m(1, 1);
    m(0, 0) = 3.0;
    EXPECT_NEAR(std::abs(matrix_exponential(m)(0, 0) - std::exp(3.0)), 0.0, 1e-12 * std::exp(3.0));
    Matrix n = Matrix::Zero(2, 2);
    n(0, 1) = 5.0;
    Matrix expected = Matrix::Identity(2, 2);
    expected(0, 1) = 5.0;
    EXPECT_LT(max_entry(matrix_exponential(n) - expected), 1e-12);
}

TEST(MatrixExponential, InvalidInput) {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(code_of([&] { matrix_exponential(m); }), ErrorCode::InvalidMatrix);
    m(1, 0) = std::numeric_limits<double>::infinity();
    EXPECT_EQ(code_of([&] { matrix_exponential(m); }), ErrorCode::InvalidMatrix);
    EXPECT_EQ(code_of([] { matrix_exponential(Matrix::Zero(2, 3)); }), ErrorCode::InvalidMatrix);
}

TEST(MatrixExponential, ResidualCheck) {
    Rng rng(9);
    Matrix h = random_hermitian(3, rng);
    EXPECT_LT(exponential_residual(Complex(0.0, 4.0) * h), 1e-12);
}

TEST(OracleConfig, Validation) {
    EXPECT_NO_THROW(validate_oracle_config({}));
    EXPECT_EQ(code_of([] { validate_oracle_config({0.0, 0.5}); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { validate_oracle_config({1e-9, 0.5}); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { validate_oracle_config({1e-12, 0.2}); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { validate_oracle_config({1e-12, 1.5}); }), ErrorCode::InvalidConfig);
    EXPECT_NO_THROW(validate_oracle_config({1e-10, 1.0}));
    EXPECT_NO_THROW(validate_oracle_config({1e-16, 0.25}));
}

TEST(Evolve, ZeroCouplingLeavesProduct) {
    auto phi = gaussian_pointer(kGrid, 0.0, 1.0);
    auto a = make_projector_from_state(vt::plus_state());
    auto psi = vt::plus_i_state();
    auto out = momentum_space_evolve(a, psi, phi, {0.0});
    EXPECT_LT((out.amplitudes() - EntangledState::product(psi, phi).amplitudes()).cwiseAbs().maxCoeff(),
              1e-14);
}

TEST(Evolve, EigenstateShift) {
    auto phi = gaussian_pointer(kGrid, 0.0, 1.0);
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    auto out = momentum_space_evolve(a, SystemState::basis(2, 0), phi, {3.0});
    auto ref = vt::gaussian_samples(kGrid, 3.0, 1.0);
    for (std::size_t k = 0; k < kGrid.size(); ++k) {
        EXPECT_NEAR(std::abs(out.amplitudes()(0, k) - ref[k]), 0.0, 1e-9);
        EXPECT_NEAR(std::abs(out.amplitudes()(1, k)), 0.0, 1e-12);
    }
}

TEST(Evolve, RandomRank2MatchesClosedForm) {
    Rng rng(42);
    auto a = random_projector(4, 2, rng);
    auto psi = random_state(4, rng);
    auto phi = gaussian_pointer(kGrid, 0.0, 1.0);
    MeasurementConfig cfg{2.0};
    auto oracle = momentum_space_evolve(a, psi, phi, cfg);
    auto closed = ps_measure(a, psi, phi, cfg);
    EXPECT_LE((oracle.amplitudes() - closed.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(oracle.norm_squared(), 1.0, 1e-9);
}

TEST(Evolve, HbarScaleInvariance) {
    // the coupling depends on gamma p / hbar = gamma k, so hbar must drop out
    Rng rng(8);
    auto a = random_projector(3, 1, rng);
    auto psi = random_state(3, rng);
    auto phi = gaussian_pointer(kGrid, 0.0, 1.0);
    auto base = momentum_space_evolve(a, psi, phi, {1.7, 1.0});
    auto scaled = momentum_space_evolve(a, psi, phi, {1.7, 3.5});
    EXPECT_LE((base.amplitudes() - scaled.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IdentityCheck, Examples) {
    EXPECT_LE(operator_identity_check(Projector::zero(2), {3.0}, kGrid), 1e-15);
    EXPECT_LE(operator_identity_check(Projector::identity(3), {3.0}, kGrid), 1e-9);
    auto a = make_projector_from_state(vt::plus_i_state());
    EXPECT_LE(operator_identity_check(a, {4.0}, kGrid), 1e-9);
}

TEST(IdentityCheck, NegativeControl) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.25;
    const double dev = operator_identity_deviation(m, {2.0}, kGrid);
    EXPECT_GT(dev, 1e-3);
}

TEST(InverseCheck, Examples) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    EXPECT_EQ(inverse_identity_check(a, {0.0}, kGrid), 0.0);
    EXPECT_LE(inverse_identity_check(a, {2.0}, kGrid), 1e-10);
    Rng rng(1);
    auto r = random_projector(2, 1, rng);
    EXPECT_LE(inverse_identity_check(r, {2.0}, kGrid, 99, 8), 1e-10);
}

TEST(InverseCheck, EigenstateRecovery) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    auto phi = gaussian_pointer(kGrid, 0.0, 1.0);
    for (std::size_t i : {0u, 1u}) {
        auto in = EntangledState::product(SystemState::basis(2, i), phi);
        auto back = apply_measurement_operator(a, apply_measurement_operator(a, in, {2.0}), {2.0}, true);
        EXPECT_LE((back.amplitudes() - in.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Propagator, RejectsNonSquareOperator) {
    EXPECT_EQ(code_of([] { CouplingPropagator(Matrix::Zero(2, 3), kGrid, {1.0}); }),
              ErrorCode::InvalidMatrix);
}
