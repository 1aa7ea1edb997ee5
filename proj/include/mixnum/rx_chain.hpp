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

#ifndef MIXNUM_RX_CHAIN_HPP
#define MIXNUM_RX_CHAIN_HPP

#include <span>
#include <vector>

#include "mixnum/numerology.hpp"
#include "mixnum/transform.hpp"
#include "mixnum/tx_chain.hpp"

namespace mixnum {

/**
 * Numerology-1 receiver: drop the first cp1 samples of the frame, n_ref-point
 * unitary transform, return the active (lower-half) bins in ascending order.
 */
[[nodiscard]] std::vector<Complex> recv_num1(std::span<const Complex> frame,
                                             const MixedScenario& scenario);

/**
 * Numerology-2 receiver. The raw frame is cut into 2^k subblocks of
 * M + cp2 samples on numerology 2's own symbol grid; each subblock drops
 * its own cp2 samples and goes through an M-point unitary transform.
 * Row q of the result holds the upper-half active bins of subblock q.
 */
[[nodiscard]] SymbolGrid recv_num2(std::span<const Complex> frame, const MixedScenario& scenario);

[[nodiscard]] inline std::vector<Complex> recv_num1(const TimeSignal& frame,
                                                    const MixedScenario& scenario) {
    return recv_num1(frame.samples, scenario);
}
[[nodiscard]] inline SymbolGrid recv_num2(const TimeSignal& frame, const MixedScenario& scenario) {
    return recv_num2(frame.samples, scenario);
}

/// received - transmitted, element-wise. Error(ShapeMismatch) on unequal shapes.
[[nodiscard]] std::vector<Complex> error_vector(std::span<const Complex> received,
                                                std::span<const Complex> transmitted);
[[nodiscard]] SymbolGrid error_vector(const SymbolGrid& received, const SymbolGrid& transmitted);

} // namespace mixnum

#endif // MIXNUM_RX_CHAIN_HPP
