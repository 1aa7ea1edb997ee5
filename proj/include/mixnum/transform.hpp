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

#ifndef MIXNUM_TRANSFORM_HPP
#define MIXNUM_TRANSFORM_HPP

#include <complex>
#include <span>
#include <vector>

namespace mixnum {

using Complex = std::complex<double>;
using Samples = std::vector<Complex>;

/**
 * Unitary DFT pair, backed by FFTW.
 *
 *   inverse: x[n] = 1/sqrt(L) * sum_m X[m] exp(+2 pi i m n / L)
 *   forward: X[m] = 1/sqrt(L) * sum_n x[n] exp(-2 pi i m n / L)
 *
 * Lengths must be powers of two (Error(LengthMismatch) otherwise). Plans are
 * cached per length; both calls are safe from multiple threads.
 */
[[nodiscard]] Samples inverse_transform(std::span<const Complex> spectrum);
[[nodiscard]] Samples forward_transform(std::span<const Complex> signal);

} // namespace mixnum

#endif // MIXNUM_TRANSFORM_HPP
