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

#ifndef MIXNUM_NUMEROLOGY_HPP
#define MIXNUM_NUMEROLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mixnum {

/// NR base subcarrier spacing (kHz).
inline constexpr int kBaseScsKhz = 15;

/// Normal-CP overhead of the 15 kHz numerology: 4.76 us over a 66.67 us symbol.
inline constexpr double kDefaultCpRatio = 1.0 / 14.0;

inline constexpr std::size_t kDefaultRefFftSize = 256;
inline constexpr std::size_t kDefaultTrials = 500;

enum class FrequencyRange { FR1, FR2 };

[[nodiscard]] const char* to_string(FrequencyRange range) noexcept;

/**
 * One row of the NR numerology table: subcarrier spacing, CP duration,
 * slot duration and the maximum data-channel bandwidth for a frequency
 * range. The 60 kHz rows carry both the normal and extended CP.
 */
struct NumerologyEntry {
    int mu{};
    int scs_khz{};
    double cp_dur_us{};
    std::optional<double> extended_cp_dur_us;
    double slot_ms{};
    int max_bw_mhz{};
    FrequencyRange freq_range{FrequencyRange::FR1};
};

/// All rows of the table, FR1 first, ascending spacing.
[[nodiscard]] std::span<const NumerologyEntry> numerology_catalog() noexcept;

/// Throws Error(UnknownNumerology) for pairs that are not in the table.
[[nodiscard]] const NumerologyEntry& catalog_lookup(int scs_khz, FrequencyRange range);

/// Which of the two coexisting numerologies; numerology 1 has the narrow spacing.
enum class NumerologyId : int { First = 1, Second = 2 };

/// OFDM parameter set of one branch of the mixed scenario.
struct Numerology {
    int scs_khz{};
    std::size_t nfft{};
    std::size_t cp_len{};
    std::vector<std::size_t> active_bins; ///< ascending

    [[nodiscard]] std::size_t symbol_len() const noexcept { return nfft + cp_len; }
    [[nodiscard]] double abs_freq_khz(std::size_t bin) const noexcept {
        return static_cast<double>(bin) * scs_khz;
    }

    bool operator==(const Numerology&) const = default;
};

struct GuardSplit {
    std::size_t g1{}; ///< guard subcarriers taken from numerology 1
    std::size_t g2{}; ///< guard subcarriers taken from numerology 2

    bool operator==(const GuardSplit&) const = default;
};

/**
 * Splits a total guard between the two numerologies: half of the guard goes
 * to numerology 2, rounded down to whole wide subcarriers, and the remainder
 * to numerology 1. Always satisfies g1*scs1 + g2*scs2 == guard_khz.
 */
[[nodiscard]] GuardSplit guard_split(int guard_khz, int scs1_khz, int scs2_khz);

struct ScenarioParams {
    std::size_t n_ref{kDefaultRefFftSize};
    int k{1};
    double cp_ratio{kDefaultCpRatio};
    int guard_khz{0};
    int base_scs_khz{kBaseScsKhz};
    std::size_t trials{kDefaultTrials};
    std::uint64_t seed{0};
};

/**
 * A validated two-numerology experiment.
 *
 * Numerology 1 uses the reference spacing and an n_ref-point transform over
 * the lower half of its grid. Numerology 2 uses 2^k times the spacing, an
 * n_ref/2^k-point transform and the upper half of its grid. One numerology-1
 * symbol spans exactly 2^k numerology-2 symbols, CP included.
 *
 * Immutable once built; instances may be shared freely across threads.
 */
class MixedScenario {
public:
    /// Throws Error(InvalidScenario) or Error(InvalidGuard) naming the violated rule.
    [[nodiscard]] static MixedScenario build(const ScenarioParams& params);

    [[nodiscard]] const ScenarioParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t n_ref() const noexcept { return params_.n_ref; }
    [[nodiscard]] int k() const noexcept { return params_.k; }
    [[nodiscard]] std::size_t scaling() const noexcept { return std::size_t{1} << params_.k; }
    [[nodiscard]] double cp_ratio() const noexcept { return params_.cp_ratio; }
    [[nodiscard]] int guard_khz() const noexcept { return params_.guard_khz; }
    [[nodiscard]] int base_scs_khz() const noexcept { return params_.base_scs_khz; }
    [[nodiscard]] std::size_t trials() const noexcept { return params_.trials; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return params_.seed; }
    [[nodiscard]] const GuardSplit& guards() const noexcept { return guards_; }

    [[nodiscard]] const Numerology& num1() const noexcept { return num1_; }
    [[nodiscard]] const Numerology& num2() const noexcept { return num2_; }
    [[nodiscard]] const Numerology& numerology(NumerologyId id) const noexcept {
        return id == NumerologyId::First ? num1_ : num2_;
    }

    /// Samples in one composite frame: one numerology-1 symbol with its CP.
    [[nodiscard]] std::size_t frame_len() const noexcept { return num1_.symbol_len(); }
    [[nodiscard]] double sample_rate_hz() const noexcept {
        return static_cast<double>(params_.n_ref) * params_.base_scs_khz * 1000.0;
    }

    /// Copy with the given numerology's active-bin set emptied.
    [[nodiscard]] MixedScenario silenced(NumerologyId id) const;
    [[nodiscard]] MixedScenario with_trials(std::size_t trials) const;
    [[nodiscard]] MixedScenario with_seed(std::uint64_t seed) const;

    /// True when both scenarios produce identical transmit/receive layouts.
    [[nodiscard]] bool same_layout(const MixedScenario& other) const noexcept {
        return params_.n_ref == other.params_.n_ref && params_.k == other.params_.k &&
               num1_ == other.num1_ && num2_ == other.num2_;
    }

private:
    MixedScenario() = default;

    ScenarioParams params_;
    GuardSplit guards_;
    Numerology num1_;
    Numerology num2_;
};

[[nodiscard]] inline MixedScenario build_scenario(const ScenarioParams& params) {
    return MixedScenario::build(params);
}

[[nodiscard]] constexpr bool is_power_of_two(std::size_t value) noexcept {
    return value != 0 && (value & (value - 1)) == 0;
}

} // namespace mixnum

#endif // MIXNUM_NUMEROLOGY_HPP
