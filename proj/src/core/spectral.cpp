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

#include "vnp/spectral.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace vnp {

namespace {

// The FFTW planner is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) and kept for the
// lifetime of the process.
class PlanCache {
  public:
    ~PlanCache() {
        for (auto &[key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = plans_.try_emplace({n, sign}, nullptr);
        if (inserted) {
            auto *in = fftw_alloc_complex(static_cast<std::size_t>(n));
            auto *out = fftw_alloc_complex(static_cast<std::size_t>(n));
            it->second = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
            fftw_free(in);
            fftw_free(out);
        }
        return it->second;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache &plan_cache() {
    static PlanCache cache;
    return cache;
}

std::vector<std::complex<double>> execute(std::span<const std::complex<double>> x, int sign) {
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size());
    if (x.empty()) {
        return out;
    }
    fftw_plan plan = plan_cache().get(static_cast<int>(x.size()), sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(in.data()),
                     reinterpret_cast<fftw_complex *>(out.data()));
    return out;
}

} // namespace

std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x) {
    return execute(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> x) {
    auto out = execute(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto &v : out) {
        v *= scale;
    }
    return out;
}

} // namespace vnp
