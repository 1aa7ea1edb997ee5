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

#ifndef MIXNUM_INI_ANALYSIS_HPP
#define MIXNUM_INI_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mixnum/numerology.hpp"
#include "mixnum/transform.hpp"
#include "mixnum/tx_chain.hpp"

namespace mixnum {

/// Mean powers below kFloorPower are reported as kFloorDb.
inline constexpr double kFloorPower = 1e-20;
inline constexpr double kFloorDb = -200.0;

[[nodiscard]] double power_to_db(double mean_power) noexcept;

/// One subcarrier of an INI curve.
struct IniEntry {
    NumerologyId numerology{NumerologyId::First};
    std::size_t bin_index{};
    double abs_freq_khz{};
    double mean_power{}; ///< mean |e|^2, relative to unit symbol power
    double ini_db{};
    bool at_floor{};
};

/**
 * Per-subcarrier mean INI power of both numerologies. Entries hold every
 * numerology-1 active bin in ascending order followed by every numerology-2
 * active bin in ascending order. Numerology-2 powers are averaged over the
 * 2^k symbol positions of the frame. trials is zero for analytic reports.
 */
struct IniReport {
    MixedScenario scenario;
    std::size_t trials{};
    std::vector<IniEntry> entries;

    [[nodiscard]] std::vector<IniEntry> entries_for(NumerologyId id) const;
};

/**
 * Deterministic per-trial bit source. The stream for trial t is a 64-bit
 * Mersenne Twister (std::mt19937_64) seeded through std::seed_seq with the
 * 32-bit words {seed_lo, seed_hi, t_lo, t_hi}; each engine output supplies
 * 64 bits, least significant first.
 */
class TrialBits {
public:
    TrialBits(std::uint64_t seed, std::uint64_t trial);

    [[nodiscard]] std::uint8_t next();

private:
    std::mt19937_64 engine_;
    std::uint64_t word_{0};
    int remaining_{0};
};

/**
 * Fills both grids with random BPSK for one trial: numerology-1 bins
 * ascending, then numerology-2 symbols q ascending with bins ascending.
 */
void draw_trial_symbols(std::uint64_t seed, std::uint64_t trial, SymbolGrid& grid1, SymbolGrid& grid2);

/// 0 selects std::thread::hardware_concurrency().
[[nodiscard]] std::size_t resolve_workers(std::size_t requested) noexcept;

/**
 * Monte Carlo INI estimate over scenario.trials() independent frames.
 * Per-trial powers are summed in ascending trial order, so the report is
 * bitwise identical for any worker count.
 */
[[nodiscard]] IniReport run_monte_carlo(const MixedScenario& scenario, std::size_t workers = 0);

/// Leakage gains from every slot of one numerology onto every slot of the other.
struct CouplingBlock {
    NumerologyId source{NumerologyId::First};
    NumerologyId victim{NumerologyId::Second};
    std::size_t source_symbols{};
    std::size_t source_bins{};
    std::size_t victim_symbols{};
    std::size_t victim_bins{};
    /// Row-major [source slot][victim slot]; slot = q * bins + bin position.
    std::vector<Complex> gains;

    [[nodiscard]] std::size_t num_sources() const noexcept { return source_symbols * source_bins; }
    [[nodiscard]] std::size_t num_victims() const noexcept { return victim_symbols * victim_bins; }
    [[nodiscard]] bool empty() const noexcept { return gains.empty(); }
    [[nodiscard]] Complex gain(std::size_t source_q, std::size_t source_pos, std::size_t victim_q,
                               std::size_t victim_pos) const {
        return gains.at((source_q * source_bins + source_pos) * num_victims() +
                        victim_q * victim_bins + victim_pos);
    }
};

/// Cross-numerology coupling only; same-numerology coupling is the identity.
struct CouplingMatrix {
    MixedScenario scenario;
    CouplingBlock into_num1; ///< numerology 2 -> numerology 1
    CouplingBlock into_num2; ///< numerology 1 -> numerology 2

    [[nodiscard]] bool empty() const noexcept { return into_num1.empty() && into_num2.empty(); }
    [[nodiscard]] double max_abs_gain() const noexcept;
};

/// Probes the chain with a lone +1 on each cross-numerology source slot.
[[nodiscard]] CouplingMatrix coupling_matrix(const MixedScenario& scenario, std::size_t workers = 1);

/**
 * Expected INI for independent, zero-mean, unit-power BPSK sources: the sum
 * of |gain|^2 over all interfering slots. Error(ScenarioMismatch) when the
 * matrix was built for a different layout.
 */
[[nodiscard]] IniReport expected_ini(const CouplingMatrix& matrix, const MixedScenario& scenario);

/// Per-numerology view of a report. Fields are NaN when the numerology is silent.
struct NumerologySummary {
    std::size_t active_bins{};
    double mean_ini_db{};   ///< arithmetic mean of the per-bin dB curve
    double mean_power_db{}; ///< dB of the mean linear power across bins
    std::size_t edge_bin{}; ///< active bin adjacent to the central boundary
    double edge_ini_db{};
    double inner_median_db{}; ///< median over active bins other than the edge bin
    /// Mean of ini_db per class of bin index mod 2^k (numerology 1 only).
    std::vector<double> residue_class_means;
};

struct IniSummary {
    NumerologySummary num1;
    NumerologySummary num2;
    double num2_minus_num1_db{}; ///< num2.mean_ini_db - num1.mean_ini_db
};

[[nodiscard]] IniSummary summarize(const IniReport& report, const MixedScenario& scenario);

enum class EstimateMode { MonteCarlo, Oracle };

/// One report per guard, in the order given.
[[nodiscard]] std::vector<IniReport> sweep_guards(const ScenarioParams& params,
                                                  std::span<const int> guards_khz,
                                                  EstimateMode mode, std::size_t workers = 0);

/// Largest per-bin ini_db across both numerologies.
[[nodiscard]] double worst_case_ini_db(const IniReport& report) noexcept;

/**
 * Smallest guard (a multiple of the base spacing, scanned upward from 0)
 * whose oracle worst-case INI is at or below target_db. The scan stops at
 * the half-band (n_ref/2 base subcarriers) or at the first guard that
 * empties a numerology, whichever comes first, and throws
 * TargetUnreachable carrying the best worst-case value otherwise.
 */
[[nodiscard]] int min_guard_search(const ScenarioParams& templ, double target_db,
                                   std::size_t workers = 0);

} // namespace mixnum

#endif // MIXNUM_INI_ANALYSIS_HPP
