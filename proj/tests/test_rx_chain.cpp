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

#include <doctest.h>

#include <cmath>

#include "mixnum/error.hpp"
#include "mixnum/rx_chain.hpp"
#include "mixnum/tx_chain.hpp"
#include "oracles/reference.hpp"

using namespace mixnum;

namespace {

MixedScenario scenario(std::size_t n, int k, double cp, int guard = 0) {
    ScenarioParams p;
    p.n_ref = n;
    p.k = k;
    p.cp_ratio = cp;
    p.guard_khz = guard;
    return build_scenario(p);
}

SymbolGrid random_bpsk(std::size_t symbols, std::size_t bins, unsigned seed) {
    std::mt19937 gen(seed);
    SymbolGrid grid(symbols, bins);
    for (auto& x : grid.flat()) {
        x = (gen() & 1U) ? -1.0 : 1.0;
    }
    return grid;
}

double max_abs(std::span<const Complex> x) {
    double worst = 0.0;
    for (const auto& v : x) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

} // namespace

TEST_CASE("self-transparency with one numerology silent") {
    for (int k = 1; k <= 3; ++k) {
        for (const double cp : {0.0, 1.0 / 14.0, 0.3}) {
            for (const int guard : {0, 90, 375}) {
                const auto s = scenario(256, k, cp, guard);
                const auto g1 = random_bpsk(1, s.num1().active_bins.size(), 1);
                const auto g2 = random_bpsk(s.scaling(), s.num2().active_bins.size(), 2);
                const auto z1 = SymbolGrid::zeros_for(s, NumerologyId::First);
                const auto z2 = SymbolGrid::zeros_for(s, NumerologyId::Second);
                CAPTURE(k);
                CAPTURE(cp);
                CAPTURE(guard);

                const auto r1 = recv_num1(build_frame(s, g1, z2), s);
                CHECK(max_abs(error_vector(r1, g1.row(0))) <= 1e-10);
                const auto r2 = recv_num2(build_frame(s, z1, g2), s);
                CHECK(max_abs(error_vector(r2, g2).flat()) <= 1e-10);
            }
        }
    }
}

TEST_CASE("all-zero frame receives zeros") {
    const auto s = scenario(64, 2, 1.0 / 14.0);
    const Samples frame(s.frame_len());
    CHECK(max_abs(recv_num1(frame, s)) == 0.0);
    const auto r2 = recv_num2(frame, s);
    CHECK(r2.num_symbols() == 4);
    CHECK(r2.bins_per_symbol() == s.num2().active_bins.size());
    CHECK(max_abs(r2.flat()) == 0.0);
}

TEST_CASE("wrong frame length") {
    const auto s = scenario(64, 1, 1.0 / 14.0);
    CHECK_THROWS_AS((void)recv_num1(Samples(64), s), Error);
    CHECK_THROWS_AS((void)recv_num2(Samples(s.frame_len() + 1), s), Error);
}

TEST_CASE("CP-free numerology 2 leaves aligned numerology-1 bins untouched") {
    for (int k = 1; k <= 3; ++k) {
        const auto s = scenario(64, k, 0.0);
        const auto g2 = random_bpsk(s.scaling(), s.num2().active_bins.size(), 7);
        const auto r1 = recv_num1(build_frame(s, SymbolGrid::zeros_for(s, NumerologyId::First), g2), s);

        // Brute force: sum the closed-form leakage of every numerology-2 slot.
        for (std::size_t l = 0; l < r1.size(); ++l) {
            Complex expected{};
            for (std::size_t q = 0; q < s.scaling(); ++q) {
                for (std::size_t p = 0; p < s.num2().active_bins.size(); ++p) {
                    expected += g2.at(q, p) *
                                oracle::gain_num2_to_num1(64, s.scaling(), q, s.num2().active_bins[p], l);
                }
            }
            CAPTURE(k);
            CAPTURE(l);
            CHECK(std::abs(r1[l] - expected) <= 1e-10);
            if (l % s.scaling() == 0) {
                CHECK(std::abs(r1[l]) <= 1e-10);
            }
        }
    }
}

TEST_CASE("odd numerology-1 tone leaks into numerology 2") {
    const auto s = scenario(64, 1, 0.0);
    auto g1 = SymbolGrid::zeros_for(s, NumerologyId::First);
    g1.at(0, 1) = 1.0;
    const auto r2 = recv_num2(build_frame(s, g1, SymbolGrid::zeros_for(s, NumerologyId::Second)), s);
    CHECK(max_abs(r2.flat()) > 1e-3);
}

TEST_CASE("error_vector") {
    const std::vector<Complex> a{{1, 0}, {-1, 0}, {1, 0}};
    CHECK(max_abs(error_vector(a, a)) == 0.0);

    auto b = a;
    b[1] += Complex(0.25, -0.5);
    const auto e = error_vector(b, a);
    CHECK(e[0] == Complex{});
    CHECK(e[1] == Complex(0.25, -0.5));
    CHECK(e[2] == Complex{});

    CHECK_THROWS_AS((void)error_vector(a, std::vector<Complex>(2)), Error);
    CHECK_THROWS_AS((void)error_vector(SymbolGrid(2, 3), SymbolGrid(3, 2)), Error);
}

TEST_CASE("receive maps are linear") {
    const auto s = scenario(128, 2, 1.0 / 14.0, 45);
    const auto f = oracle::random_complex(s.frame_len(), 1);
    const auto g = oracle::random_complex(s.frame_len(), 2);
    const Complex a{1.5, 0.2}, b{-0.3, 2.0};
    Samples mix(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mix[i] = a * f[i] + b * g[i];
    }

    const auto r1 = recv_num1(mix, s), r1f = recv_num1(f, s), r1g = recv_num1(g, s);
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(std::abs(r1[i] - (a * r1f[i] + b * r1g[i])) <= 1e-12);
    }
    const auto r2 = recv_num2(mix, s), r2f = recv_num2(f, s), r2g = recv_num2(g, s);
    for (std::size_t i = 0; i < r2.size(); ++i) {
        CHECK(std::abs(r2.flat()[i] - (a * r2f.flat()[i] + b * r2g.flat()[i])) <= 1e-12);
    }
}

TEST_CASE("subblocks tile the frame") {
    for (int k = 1; k <= 4; ++k) {
        for (const double cp : {0.0, 1.0 / 14.0, 0.2}) {
            const auto s = scenario(512, k, cp);
            CHECK(s.scaling() * s.num2().symbol_len() == s.frame_len());
        }
    }
}
