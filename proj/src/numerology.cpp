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

#include "mixnum/numerology.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "mixnum/error.hpp"

namespace mixnum {

namespace {

// NOLINTBEGIN(readability-magic-numbers)
constexpr std::array<NumerologyEntry, 5> kCatalog{{
        {0, 15, 4.76, std::nullopt, 1.0, 50, FrequencyRange::FR1},
        {1, 30, 2.38, std::nullopt, 0.5, 100, FrequencyRange::FR1},
        {2, 60, 1.19, 4.17, 0.25, 100, FrequencyRange::FR1},
        {2, 60, 1.19, 4.17, 0.25, 200, FrequencyRange::FR2},
        {3, 120, 0.60, std::nullopt, 0.125, 400, FrequencyRange::FR2},
}};
// NOLINTEND(readability-magic-numbers)

// Largest exponent that still leaves room for shifts on size_t.
constexpr int kMaxK = 20;

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorKind::InvalidScenario, what);
}

std::vector<std::size_t> bin_range(std::size_t first, std::size_t last_exclusive) {
    std::vector<std::size_t> bins(last_exclusive > first ? last_exclusive - first : 0);
    std::iota(bins.begin(), bins.end(), first);
    return bins;
}

} // namespace

const char* to_string(const FrequencyRange range) noexcept {
    return range == FrequencyRange::FR1 ? "FR-1" : "FR-2";
}

std::span<const NumerologyEntry> numerology_catalog() noexcept { return kCatalog; }

const NumerologyEntry& catalog_lookup(const int scs_khz, const FrequencyRange range) {
    for (const auto& entry : kCatalog) {
        if (entry.scs_khz == scs_khz && entry.freq_range == range) {
            return entry;
        }
    }
    throw Error(ErrorKind::UnknownNumerology, "no numerology with " + std::to_string(scs_khz) +
                                                      " kHz spacing in " + to_string(range));
}

GuardSplit guard_split(const int guard_khz, const int scs1_khz, const int scs2_khz) {
    if (scs1_khz <= 0 || scs2_khz <= scs1_khz || scs2_khz % scs1_khz != 0 ||
        !is_power_of_two(static_cast<std::size_t>(scs2_khz / scs1_khz))) {
        invalid("numerology-2 spacing must be 2^k times numerology-1 spacing with k >= 1");
    }
    if (guard_khz < 0 || guard_khz % scs1_khz != 0) {
        throw Error(ErrorKind::InvalidGuard,
                    "guard of " + std::to_string(guard_khz) +
                            " kHz is not a non-negative multiple of " + std::to_string(scs1_khz) +
                            " kHz");
    }
    GuardSplit split;
    split.g2 = static_cast<std::size_t>(guard_khz / (2 * scs2_khz));
    split.g1 = static_cast<std::size_t>((guard_khz - static_cast<int>(split.g2) * scs2_khz) /
                                        scs1_khz);
    return split;
}

MixedScenario MixedScenario::build(const ScenarioParams& params) {
    if (params.k < 1) {
        invalid("k >= 1 required (spacing scaling 2^k with positive integer k), got k=" +
                std::to_string(params.k));
    }
    if (params.k > kMaxK) {
        invalid("k=" + std::to_string(params.k) + " exceeds supported maximum " +
                std::to_string(kMaxK));
    }
    const std::size_t scaling = std::size_t{1} << params.k;
    if (!is_power_of_two(params.n_ref) || params.n_ref < 4 * scaling) {
        invalid("n_ref must be a power of two >= 2^(k+2) = " + std::to_string(4 * scaling) +
                ", got " + std::to_string(params.n_ref));
    }
    if (!(params.cp_ratio >= 0.0 && params.cp_ratio < 0.5)) {
        invalid("cp_ratio must lie in [0, 0.5), got " + std::to_string(params.cp_ratio));
    }
    if (params.base_scs_khz <= 0) {
        invalid("base subcarrier spacing must be positive");
    }
    if (params.trials < 1) {
        invalid("trials >= 1 required");
    }

    MixedScenario scenario;
    scenario.params_ = params;
    const int scs2 = params.base_scs_khz * static_cast<int>(scaling);
    scenario.guards_ = guard_split(params.guard_khz, params.base_scs_khz, scs2);
    const auto [g1, g2] = scenario.guards_;

    const std::size_t n_ref = params.n_ref;
    const std::size_t m = n_ref / scaling;
    if (g1 >= n_ref / 2) {
        invalid("guard of " + std::to_string(params.guard_khz) +
                " kHz leaves numerology 1 without active bins");
    }
    if (g2 >= m / 2) {
        invalid("guard of " + std::to_string(params.guard_khz) +
                " kHz leaves numerology 2 without active bins");
    }

    // CP is quantized on the short transform and scaled up so both branches
    // span exactly the same number of samples.
    const auto cp2 = static_cast<std::size_t>(std::lround(params.cp_ratio * static_cast<double>(m)));

    scenario.num2_.scs_khz = scs2;
    scenario.num2_.nfft = m;
    scenario.num2_.cp_len = cp2;
    scenario.num2_.active_bins = bin_range(m / 2 + g2, m);

    scenario.num1_.scs_khz = params.base_scs_khz;
    scenario.num1_.nfft = n_ref;
    scenario.num1_.cp_len = scaling * cp2;
    scenario.num1_.active_bins = bin_range(0, n_ref / 2 - g1);

    return scenario;
}

MixedScenario MixedScenario::silenced(const NumerologyId id) const {
    MixedScenario copy = *this;
    (id == NumerologyId::First ? copy.num1_ : copy.num2_).active_bins.clear();
    return copy;
}

MixedScenario MixedScenario::with_trials(const std::size_t trials) const {
    if (trials < 1) {
        invalid("trials >= 1 required");
    }
    MixedScenario copy = *this;
    copy.params_.trials = trials;
    return copy;
}

MixedScenario MixedScenario::with_seed(const std::uint64_t seed) const {
    MixedScenario copy = *this;
    copy.params_.seed = seed;
    return copy;
}

} // namespace mixnum
