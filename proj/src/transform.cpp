/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mixnum/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "mixnum/error.hpp"
#include "mixnum/numerology.hpp"

namespace mixnum {

namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex), "std::complex must alias fftw_complex");

/// Owns every in-place plan created by the process. FFTW's planner is not
/// re-entrant, so creation is serialized; fftw_execute_dft is thread-safe.
class PlanCache {
public:
    PlanCache() = default;
    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(const std::size_t length, const int sign) {
        const std::lock_guard lock(mutex_);
        const auto key = std::make_pair(length, sign);
        if (const auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        auto* scratch = fftw_alloc_complex(length);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length), scratch, scratch, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

Samples unitary_dft(const std::span<const Complex> input, const int sign) {
    const std::size_t length = input.size();
    if (!is_power_of_two(length)) {
        throw Error(ErrorKind::LengthMismatch,
                    "transform length " + std::to_string(length) + " is not a power of two");
    }
    Samples out(input.begin(), input.end());
    auto* data = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan_cache().get(length, sign), data, data);

    const double scale = 1.0 / std::sqrt(static_cast<double>(length));
    for (auto& value : out) {
        value *= scale;
    }
    return out;
}

} // namespace

Samples inverse_transform(const std::span<const Complex> spectrum) {
    return unitary_dft(spectrum, FFTW_BACKWARD);
}

Samples forward_transform(const std::span<const Complex> signal) {
    return unitary_dft(signal, FFTW_FORWARD);
}

} // namespace mixnum
