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

#ifndef MIXNUM_TX_CHAIN_HPP
#define MIXNUM_TX_CHAIN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mixnum/numerology.hpp"
#include "mixnum/transform.hpp"

namespace mixnum {

/**
 * Data symbols of one numerology over a frame: one row per OFDM symbol
 * (symbol index q), one column per active bin in ascending bin order.
 */
class SymbolGrid {
public:
    SymbolGrid() = default;
    SymbolGrid(std::size_t num_symbols, std::size_t bins_per_symbol);

    /// Zero grid shaped for the given numerology of a scenario.
    [[nodiscard]] static SymbolGrid zeros_for(const MixedScenario& scenario, NumerologyId id);

    [[nodiscard]] std::size_t num_symbols() const noexcept { return num_symbols_; }
    [[nodiscard]] std::size_t bins_per_symbol() const noexcept { return bins_per_symbol_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

    [[nodiscard]] std::span<Complex> row(std::size_t q) noexcept {
        return {data_.data() + q * bins_per_symbol_, bins_per_symbol_};
    }
    [[nodiscard]] std::span<const Complex> row(std::size_t q) const noexcept {
        return {data_.data() + q * bins_per_symbol_, bins_per_symbol_};
    }
    [[nodiscard]] Complex& at(std::size_t q, std::size_t pos) { return data_.at(q * bins_per_symbol_ + pos); }
    [[nodiscard]] const Complex& at(std::size_t q, std::size_t pos) const {
        return data_.at(q * bins_per_symbol_ + pos);
    }

    /// Row-major view over all entries.
    [[nodiscard]] std::span<Complex> flat() noexcept { return data_; }
    [[nodiscard]] std::span<const Complex> flat() const noexcept { return data_; }

    bool operator==(const SymbolGrid&) const = default;

private:
    std::size_t num_symbols_{0};
    std::size_t bins_per_symbol_{0};
    std::vector<Complex> data_;
};

/// Composite baseband samples at n_ref * base_scs.
struct TimeSignal {
    Samples samples;
    double sample_rate_hz{};
};

/// Bit 0 maps to +1, bit 1 to -1 (real BPSK).
[[nodiscard]] std::vector<Complex> map_bpsk(std::span<const std::uint8_t> bits);

/// Places symbols on the numerology's active bins; every other bin is zero.
[[nodiscard]] Samples allocate_bins(std::span<const Complex> symbols, const Numerology& numerology);

/// Prepends the last cp_len samples. Requires cp_len < segment length.
[[nodiscard]] Samples add_cp(std::span<const Complex> segment, std::size_t cp_len);

/// Time-domain branch of numerology 1: one CP-prefixed n_ref-point symbol.
[[nodiscard]] Samples num1_branch(const MixedScenario& scenario, const SymbolGrid& grid1);

/// Time-domain branch of numerology 2: 2^k CP-prefixed symbols back to back.
[[nodiscard]] Samples num2_branch(const MixedScenario& scenario, const SymbolGrid& grid2);

/**
 * Composite frame: sample-wise sum of both branches. grid1 must hold one
 * symbol and grid2 2^k symbols, each sized to the active-bin count of its
 * numerology; Error(LengthMismatch) otherwise.
 */
[[nodiscard]] TimeSignal build_frame(const MixedScenario& scenario, const SymbolGrid& grid1,
                                     const SymbolGrid& grid2);

} // namespace mixnum

#endif // MIXNUM_TX_CHAIN_HPP
