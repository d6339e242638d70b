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
#include <span>
#include <vector>

namespace vnp {

/// Unnormalized forward DFT, X_j = sum_k x_k exp(-2 pi i j k / n).
std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x);

/// Inverse DFT including the 1/n factor, so inverse_dft(forward_dft(x)) == x.
std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> x);

} // namespace vnp
