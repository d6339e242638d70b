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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vnp/error.hpp"
#include "vnp/random.hpp"
#include "vnp/system.hpp"

using namespace vnp;
using vnp::testing::kInvSqrt2;
using vnp::testing::vec;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double max_entry(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(SystemState, RejectsUnnormalizedAndTooSmall) {
    EXPECT_EQ(code_of([] { SystemState::from_amplitudes(vec({1.0, 1.0})); }),
              ErrorCode::InvalidState);
    EXPECT_EQ(code_of([] { SystemState::from_amplitudes(vec({1.0})); }), ErrorCode::InvalidState);
    EXPECT_EQ(code_of([] { SystemState::normalized(vec({0.0, 0.0})); }), ErrorCode::InvalidState);
    auto s = SystemState::normalized(vec({3.0, Complex(0.0, 4.0)}));
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1) - Complex(0.0, 0.8)), 0.0, 1e-15);
}

TEST(Projector, FromBasisState) {
    auto p = make_projector_from_state(SystemState::basis(2, 0));
    EXPECT_EQ(max_entry(p.matrix() - mat2(1, 0, 0, 0)), 0.0);
}

TEST(Projector, FromPlusState) {
    auto p = make_projector_from_state(vnp::testing::plus_state());
    EXPECT_LT(max_entry(p.matrix() - mat2(0.5, 0.5, 0.5, 0.5)), 1e-15);
}

TEST(Projector, FromComplexState) {
    auto p = make_projector_from_state(vnp::testing::plus_i_state());
    const Complex i(0.0, 1.0);
    EXPECT_LT(max_entry(p.matrix() - mat2(0.5, -0.5 * i, 0.5 * i, 0.5)), 1e-15);
    auto v = validate_projector(p.matrix());
    EXPECT_TRUE(v.passed);
    EXPECT_LE(v.hermiticity_residual, 1e-12);
    EXPECT_LE(v.idempotency_residual, 1e-15);
}

TEST(Projector, ValidationExamples) {
    auto id = validate_projector(Matrix::Identity(3, 3));
    EXPECT_TRUE(id.passed);
    EXPECT_EQ(id.idempotency_residual, 0.0);

    EXPECT_TRUE(validate_projector(mat2(0.5, 0.5, 0.5, 0.5)).passed);

    auto bad = validate_projector(mat2(0.9, 0, 0, 0));
    EXPECT_FALSE(bad.passed);
    EXPECT_NEAR(bad.idempotency_residual, 0.09, 1e-15);
    EXPECT_NEAR(bad.spectrum_residual, 0.1, 1e-12);
}

TEST(Projector, ValidationCatchesNonHermitian) {
    auto v = validate_projector(mat2(1, 1, 0, 0));
    EXPECT_FALSE(v.passed);
    EXPECT_NEAR(v.hermiticity_residual, 1.0, 1e-15);
    EXPECT_EQ(v.idempotency_residual, 0.0);
}

TEST(Projector, ErrorPaths) {
    EXPECT_EQ(code_of([] { validate_projector(Matrix::Zero(2, 3)); }), ErrorCode::ShapeMismatch);
    EXPECT_EQ(code_of([] { Projector::from_matrix(mat2(0.9, 0, 0, 0)); }),
              ErrorCode::InvalidProjector);
    EXPECT_EQ(code_of([] { Projector::from_matrix(Matrix::Zero(2, 3)); }),
              ErrorCode::ShapeMismatch);
    auto p = Projector::identity(2);
    auto psi = SystemState::basis(3, 0);
    EXPECT_EQ(code_of([&] { expectation(p, psi); }), ErrorCode::ShapeMismatch);
}

TEST(Projector, SpanProjectorIsRank2) {
    std::vector<SystemState> span{vnp::testing::state({1.0, 1.0, 0.0, 0.0}),
                                  vnp::testing::state({0.0, 1.0, Complex(0, 1), 0.0})};
    auto p = make_projector_onto_span(span);
    auto v = validate_projector(p.matrix());
    EXPECT_TRUE(v.passed);
    EXPECT_NEAR(p.matrix().trace().real(), 2.0, 1e-12);
    for (const auto &s : span) {
        EXPECT_LT((p.matrix() * s.amplitudes() - s.amplitudes()).norm(), 1e-12);
    }
}

TEST(Projector, ComplementAddsToIdentity) {
    auto p = make_projector_from_state(vnp::testing::plus_i_state());
    EXPECT_LT(max_entry(p.matrix() + p.complement().matrix() - Matrix::Identity(2, 2)), 1e-15);
}

TEST(Expectation, Examples) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    EXPECT_EQ(expectation(a, SystemState::basis(2, 0)), 1.0);
    EXPECT_EQ(expectation(a, SystemState::basis(2, 1)), 0.0);
    EXPECT_NEAR(expectation(a, vnp::testing::plus_state()), 0.5, 1e-15);
}

TEST(WeakValue, EigenstateIdentical) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    auto w = weak_value(a, SystemState::basis(2, 0), SystemState::basis(2, 0));
    EXPECT_EQ(w, Complex(1.0, 0.0));
}

TEST(WeakValue, Anomalous) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    auto w = weak_value(a, vnp::testing::plus_state(), vnp::testing::anomalous_post());
    // <f|0><0|i> / <f|i> = cos(pi/8) / (cos(pi/8) - sin(pi/8)) = 1 / (1 - tan(pi/8))
    const double expected = 1.0 / (1.0 - std::tan(std::numbers::pi / 8.0));
    EXPECT_NEAR(expected, 1.0 + kInvSqrt2, 1e-14);
    EXPECT_NEAR(w.real(), expected, 1e-14);
    EXPECT_NEAR(w.imag(), 0.0, 1e-15);
    EXPECT_GT(w.real(), 1.0);
}

TEST(WeakValue, Complex) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    auto w = weak_value(a, vnp::testing::plus_state(), vnp::testing::plus_i_state());
    EXPECT_NEAR(std::abs(w - Complex(0.5, 0.5)), 0.0, 1e-15);
}

TEST(WeakValue, OrthogonalRejected) {
    auto a = make_projector_from_state(SystemState::basis(2, 0));
    EXPECT_EQ(code_of([&] {
                  weak_value(a, SystemState::basis(2, 0), SystemState::basis(2, 1));
              }),
              ErrorCode::OrthogonalPostselection);
    auto near = SystemState::normalized(vec({1e-11, 1.0}));
    EXPECT_EQ(code_of([&] { weak_value(a, SystemState::basis(2, 0), near); }),
              ErrorCode::OrthogonalPostselection);
    auto ok = SystemState::normalized(vec({1e-9, 1.0}));
    EXPECT_NO_THROW(weak_value(a, SystemState::basis(2, 0), ok));
}

TEST(Pancharatnam, Examples) {
    auto plus = vnp::testing::plus_state();
    EXPECT_EQ(pancharatnam_phase(plus, plus).chi, 0.0);

    auto ph = pancharatnam_phase(plus, vnp::testing::plus_i_state());
    EXPECT_NEAR(ph.chi, -std::numbers::pi / 4.0, 1e-15);
    EXPECT_NEAR(std::abs(ph.overlap - Complex(0.5, -0.5)), 0.0, 1e-15);

    // post = e^{0.3 i} pre: the bra conjugates the phase
    EXPECT_NEAR(pancharatnam_phase(plus, plus.with_global_phase(0.3)).chi, -0.3, 1e-15);
    EXPECT_EQ(code_of([] {
                  pancharatnam_phase(SystemState::basis(2, 0), SystemState::basis(2, 1));
              }),
              ErrorCode::OrthogonalPostselection);
}

TEST(Pancharatnam, PrincipalBranch) {
    EXPECT_EQ(wrap_phase(std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(wrap_phase(-std::numbers::pi), std::numbers::pi, 1e-15);
    EXPECT_NEAR(wrap_phase(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0, 1e-15);
    auto pre = SystemState::basis(2, 0);
    auto chi = pancharatnam_phase(pre, pre.with_global_phase(std::numbers::pi)).chi;
    EXPECT_NEAR(chi, std::numbers::pi, 1e-15);
}

TEST(Normalization, Examples) {
    EXPECT_EQ(normalization_constant(1.0, Complex(0.3, 0.2)), 1.0);
    EXPECT_EQ(normalization_constant(0.0, Complex(0.3, 0.2)), 1.0);
    const double aw = 1.0 + kInvSqrt2;
    const double expected = std::sqrt(0.5 + aw * aw);
    EXPECT_NEAR(expected, 1.84776, 1e-5);
    EXPECT_NEAR(normalization_constant(aw, 0.0), expected, 1e-15);
}

TEST(Normalization, ErrorPaths) {
    EXPECT_EQ(code_of([] { normalization_constant(0.5, 1.5); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { normalization_constant(0.5, Complex(-1.0 - 1e-9, 0.0)); }),
              ErrorCode::InvalidArgument);
    // radicand = |(1 - Aw) + Aw|^2 + 2 Aw (1 - Aw) (x - 1); Aw = 1e6 and x = 1 + 5e-11 gives -99
    EXPECT_EQ(code_of([] { normalization_constant(1e6, Complex(1.0 + 5e-11, 0.0)); }),
              ErrorCode::NumericalDegeneracy);
}

TEST(Normalization, TinyNegativeRadicandClamps) {
    // Aw = 0.5, x = -1 cancels exactly; a slightly larger |x| leaves -2.5e-11
    EXPECT_EQ(normalization_constant(0.5, Complex(-1.0, 0.0)), 0.0);
    EXPECT_EQ(normalization_constant(0.5, Complex(-1.0 - 5e-11, 0.0)), 0.0);
}

TEST(WeakValueReport, Invariants) {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const std::size_t d = 2 + t % 5;
        auto a = random_projector(d, 1 + t % (d - 1), rng);
        auto pre = random_state(d, rng);
        auto post = random_state(d, rng);
        const Complex so = std::polar(uniform(rng, 0.0, 1.0), uniform(rng, -3.0, 3.0));
        auto r = make_weak_value_report(a, pre, post, so);
        const Complex e = std::polar(1.0, r.phase_chi);
        EXPECT_NEAR(std::abs(e), 1.0, 1e-12);
        EXPECT_LT(std::abs(e - r.overlap / std::abs(r.overlap)), 1e-12);
        const Complex w = r.weak_value;
        const double n2 = std::norm(1.0 - w) + std::norm(w) + 2.0 * (w * (1.0 - std::conj(w)) * so).real();
        EXPECT_GE(r.normalization, 0.0);
        EXPECT_NEAR(r.normalization, std::sqrt(std::max(n2, 0.0)), 1e-12);
    }
}
