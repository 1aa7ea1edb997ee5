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

#include "mixnum/tx_chain.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "mixnum/error.hpp"

namespace mixnum {

namespace {

void check_grid(const SymbolGrid& grid, const std::size_t symbols, const std::size_t bins,
                const char* name) {
    if (grid.num_symbols() != symbols || grid.bins_per_symbol() != bins) {
        throw Error(ErrorKind::LengthMismatch,
                    std::string(name) + " must be " + std::to_string(symbols) + "x" +
                            std::to_string(bins) + ", got " + std::to_string(grid.num_symbols()) +
                            "x" + std::to_string(grid.bins_per_symbol()));
    }
}

} // namespace

SymbolGrid::SymbolGrid(const std::size_t num_symbols, const std::size_t bins_per_symbol)
    : num_symbols_(num_symbols), bins_per_symbol_(bins_per_symbol),
      data_(num_symbols * bins_per_symbol) {}

SymbolGrid SymbolGrid::zeros_for(const MixedScenario& scenario, const NumerologyId id) {
    const std::size_t symbols = id == NumerologyId::First ? 1 : scenario.scaling();
    return {symbols, scenario.numerology(id).active_bins.size()};
}

std::vector<Complex> map_bpsk(const std::span<const std::uint8_t> bits) {
    std::vector<Complex> symbols;
    symbols.reserve(bits.size());
    for (const auto bit : bits) {
        symbols.emplace_back(bit == 0 ? 1.0 : -1.0, 0.0);
    }
    return symbols;
}

Samples allocate_bins(const std::span<const Complex> symbols, const Numerology& numerology) {
    if (symbols.size() != numerology.active_bins.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    std::to_string(symbols.size()) + " symbols for " +
                            std::to_string(numerology.active_bins.size()) + " active bins");
    }
    Samples spectrum(numerology.nfft);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        spectrum[numerology.active_bins[i]] = symbols[i];
    }
    return spectrum;
}

Samples add_cp(const std::span<const Complex> segment, const std::size_t cp_len) {
    if (cp_len >= segment.size() && !(cp_len == 0 && segment.empty())) {
        throw Error(ErrorKind::LengthMismatch, "CP length " + std::to_string(cp_len) +
                                                       " not shorter than segment of " +
                                                       std::to_string(segment.size()));
    }
    Samples out;
    out.reserve(segment.size() + cp_len);
    out.insert(out.end(), segment.end() - static_cast<std::ptrdiff_t>(cp_len), segment.end());
    out.insert(out.end(), segment.begin(), segment.end());
    return out;
}

Samples num1_branch(const MixedScenario& scenario, const SymbolGrid& grid1) {
    const auto& num1 = scenario.num1();
    check_grid(grid1, 1, num1.active_bins.size(), "numerology-1 grid");
    return add_cp(inverse_transform(allocate_bins(grid1.row(0), num1)), num1.cp_len);
}

Samples num2_branch(const MixedScenario& scenario, const SymbolGrid& grid2) {
    const auto& num2 = scenario.num2();
    check_grid(grid2, scenario.scaling(), num2.active_bins.size(), "numerology-2 grid");
    Samples out;
    out.reserve(scenario.frame_len());
    for (std::size_t q = 0; q < grid2.num_symbols(); ++q) {
        const auto symbol = add_cp(inverse_transform(allocate_bins(grid2.row(q), num2)), num2.cp_len);
        out.insert(out.end(), symbol.begin(), symbol.end());
    }
    return out;
}

TimeSignal build_frame(const MixedScenario& scenario, const SymbolGrid& grid1,
                       const SymbolGrid& grid2) {
    TimeSignal frame{num1_branch(scenario, grid1), scenario.sample_rate_hz()};
    const Samples branch2 = num2_branch(scenario, grid2);
    std::transform(frame.samples.begin(), frame.samples.end(), branch2.begin(),
                   frame.samples.begin(), std::plus<>{});
    return frame;
}

} // namespace mixnum
