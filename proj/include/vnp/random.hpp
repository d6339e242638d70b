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
#include <random>

#include "vnp/system.hpp"

namespace vnp {

using Rng = std::mt19937_64;

/// Haar-like random state: normalized vector of i.i.d. complex Gaussians.
SystemState random_state(std::size_t dim, Rng &rng);

/// Projector onto the span of `rank` random vectors.
Projector random_projector(std::size_t dim, std::size_t rank, Rng &rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries.
Matrix random_hermitian(std::size_t dim, Rng &rng);

double uniform(Rng &rng, double lo, double hi);

} // namespace vnp
