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

#include "mixnum/rx_chain.hpp"

#include <algorithm>
#include <string>

#include "mixnum/error.hpp"

namespace mixnum {

namespace {

void check_frame(const std::span<const Complex> frame, const MixedScenario& scenario) {
    if (frame.size() != scenario.frame_len()) {
        throw Error(ErrorKind::LengthMismatch, "frame of " + std::to_string(frame.size()) +
                                                       " samples, scenario expects " +
                                                       std::to_string(scenario.frame_len()));
    }
}

} // namespace

std::vector<Complex> recv_num1(const std::span<const Complex> frame, const MixedScenario& scenario) {
    check_frame(frame, scenario);
    const auto& num1 = scenario.num1();
    const Samples spectrum = forward_transform(frame.subspan(num1.cp_len, num1.nfft));

    std::vector<Complex> symbols;
    symbols.reserve(num1.active_bins.size());
    for (const auto bin : num1.active_bins) {
        symbols.push_back(spectrum[bin]);
    }
    return symbols;
}

SymbolGrid recv_num2(const std::span<const Complex> frame, const MixedScenario& scenario) {
    check_frame(frame, scenario);
    const auto& num2 = scenario.num2();
    const std::size_t block = num2.symbol_len();

    SymbolGrid grid(scenario.scaling(), num2.active_bins.size());
    for (std::size_t q = 0; q < grid.num_symbols(); ++q) {
        const Samples spectrum = forward_transform(frame.subspan(q * block + num2.cp_len, num2.nfft));
        auto row = grid.row(q);
        for (std::size_t i = 0; i < row.size(); ++i) {
            row[i] = spectrum[num2.active_bins[i]];
        }
    }
    return grid;
}

std::vector<Complex> error_vector(const std::span<const Complex> received,
                                  const std::span<const Complex> transmitted) {
    if (received.size() != transmitted.size()) {
        throw Error(ErrorKind::ShapeMismatch, std::to_string(received.size()) +
                                                      " received vs " +
                                                      std::to_string(transmitted.size()) +
                                                      " transmitted symbols");
    }
    std::vector<Complex> error(received.size());
    for (std::size_t i = 0; i < error.size(); ++i) {
        error[i] = received[i] - transmitted[i];
    }
    return error;
}

SymbolGrid error_vector(const SymbolGrid& received, const SymbolGrid& transmitted) {
    if (received.num_symbols() != transmitted.num_symbols() ||
        received.bins_per_symbol() != transmitted.bins_per_symbol()) {
        throw Error(ErrorKind::ShapeMismatch, "symbol grids differ in shape");
    }
    SymbolGrid error(received.num_symbols(), received.bins_per_symbol());
    const auto diff = error_vector(received.flat(), transmitted.flat());
    std::copy(diff.begin(), diff.end(), error.flat().begin());
    return error;
}

} // namespace mixnum
