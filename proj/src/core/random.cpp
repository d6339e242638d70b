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

#include "vnp/random.hpp"

#include <vector>

namespace vnp {

namespace {

Complex gaussian_complex(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

SystemState random_state(std::size_t dim, Rng &rng) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        v(j) = gaussian_complex(rng);
    }
    return SystemState::normalized(std::move(v));
}

Projector random_projector(std::size_t dim, std::size_t rank, Rng &rng) {
    std::vector<SystemState> vectors;
    vectors.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        vectors.push_back(random_state(dim, rng));
    }
    return make_projector_onto_span(vectors);
}

Matrix random_hermitian(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = gaussian_complex(rng);
        }
    }
    return 0.5 * (m + m.adjoint());
}

double uniform(Rng &rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

} // namespace vnp
