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
#include <cstdint>
#include <random>

#include "mixnum/error.hpp"
#include "mixnum/numerology.hpp"
#include "mixnum/transform.hpp"
#include "mixnum/tx_chain.hpp"
#include "oracles/reference.hpp"

using namespace mixnum;

namespace {

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double energy(std::span<const Complex> x) {
    double e = 0.0;
    for (const auto& v : x) {
        e += std::norm(v);
    }
    return e;
}

MixedScenario scenario(std::size_t n, int k, double cp, int guard = 0) {
    ScenarioParams p;
    p.n_ref = n;
    p.k = k;
    p.cp_ratio = cp;
    p.guard_khz = guard;
    return build_scenario(p);
}

SymbolGrid random_grid(std::size_t symbols, std::size_t bins, unsigned seed) {
    SymbolGrid grid(symbols, bins);
    const auto values = oracle::random_complex(grid.size(), seed);
    std::copy(values.begin(), values.end(), grid.flat().begin());
    return grid;
}

} // namespace

TEST_CASE("map_bpsk") {
    CHECK(map_bpsk({}).empty());
    const std::vector<std::uint8_t> one{0};
    CHECK(map_bpsk(one) == std::vector<Complex>{{1.0, 0.0}});
    const std::vector<std::uint8_t> three{1, 0, 1};
    CHECK(map_bpsk(three) == std::vector<Complex>{{-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}});
}

TEST_CASE("unitary transforms") {
    Samples unit(4);
    unit[0] = 1.0;
    for (const auto& x : inverse_transform(unit)) {
        CHECK(x.real() == doctest::Approx(0.5));
        CHECK(x.imag() == doctest::Approx(0.0));
    }
    for (const auto& x : inverse_transform(Samples(16))) {
        CHECK(x == Complex{});
    }

    const auto spectrum = oracle::random_complex(64, 3);
    const auto signal = inverse_transform(spectrum);
    CHECK(std::abs(energy(signal) - energy(spectrum)) <= 1e-12 * energy(spectrum));
    CHECK(max_abs_diff(forward_transform(signal), spectrum) <= 1e-12);

    CHECK_THROWS_AS((void)inverse_transform(Samples(12)), Error);
}

TEST_CASE("transforms agree with the direct DFT sum") {
    for (const std::size_t n : {1U, 2U, 8U, 32U, 128U}) {
        const auto x = oracle::random_complex(n, static_cast<unsigned>(n));
        CAPTURE(n);
        CHECK(max_abs_diff(inverse_transform(x), oracle::naive_dft(x, +1)) <= 1e-12);
        CHECK(max_abs_diff(forward_transform(x), oracle::naive_dft(x, -1)) <= 1e-12);
    }
}

TEST_CASE("allocate_bins") {
    const Complex s0{1, 0}, s1{2, 0}, s2{3, 0}, s3{4, 0};

    // Toy grid n_ref = 8, k = 1: numerology 1 holds bins 0..3.
    const auto toy = scenario(8, 1, 0.0);
    const std::vector<Complex> four{s0, s1, s2, s3};
    CHECK(allocate_bins(four, toy.num1()) == Samples{s0, s1, s2, s3, 0, 0, 0, 0});

    // M = 8 with one guard bin taken from numerology 2.
    Numerology wide{30, 8, 0, {5, 6, 7}};
    const std::vector<Complex> three{s0, s1, s2};
    CHECK(allocate_bins(three, wide) == Samples{0, 0, 0, 0, 0, s0, s1, s2});

    const auto s = scenario(16, 1, 0.0);
    CHECK(allocate_bins(std::vector<Complex>(8), s.num1()) == Samples(16));

    CHECK_THROWS_AS((void)allocate_bins(three, toy.num1()), Error);
}

TEST_CASE("add_cp") {
    const Samples seg{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    CHECK(add_cp(seg, 1) == Samples{{4, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    CHECK(add_cp(seg, 0) == seg);
    CHECK_THROWS_AS((void)add_cp(seg, 4), Error);

    const auto x = oracle::random_complex(32, 11);
    for (std::size_t cp = 0; cp < 32; cp += 5) {
        const auto y = add_cp(x, cp);
        REQUIRE(y.size() == 32 + cp);
        for (std::size_t i = 0; i < cp; ++i) {
            CHECK(y[i] == y[32 + i]);
        }
    }
}

TEST_CASE("build_frame: either branch alone") {
    const auto s = scenario(64, 2, 1.0 / 14.0, 45);
    const auto g1 = random_grid(1, s.num1().active_bins.size(), 1);
    const auto g2 = random_grid(4, s.num2().active_bins.size(), 2);
    const auto z1 = SymbolGrid::zeros_for(s, NumerologyId::First);
    const auto z2 = SymbolGrid::zeros_for(s, NumerologyId::Second);

    const auto only1 = build_frame(s, g1, z2);
    CHECK(only1.samples == num1_branch(s, g1));
    const auto only2 = build_frame(s, z1, g2);
    CHECK(only2.samples == num2_branch(s, g2));
    CHECK(only1.samples.size() == s.frame_len());
    CHECK(only1.sample_rate_hz == doctest::Approx(64 * 15e3));
}

TEST_CASE("build_frame: toy chain gives a flat sequence") {
    const auto s = scenario(8, 1, 0.0);
    auto g1 = SymbolGrid::zeros_for(s, NumerologyId::First);
    g1.at(0, 0) = 1.0;
    const auto frame = build_frame(s, g1, SymbolGrid::zeros_for(s, NumerologyId::Second));
    REQUIRE(frame.samples.size() == 8);
    for (const auto& x : frame.samples) {
        CHECK(std::abs(x - Complex(1.0 / std::sqrt(8.0), 0.0)) <= 1e-15);
    }
}

TEST_CASE("build_frame: malformed grids") {
    const auto s = scenario(32, 1, 0.0);
    CHECK_THROWS_AS((void)build_frame(s, SymbolGrid(2, 16), SymbolGrid::zeros_for(s, NumerologyId::Second)),
                    Error);
    CHECK_THROWS_AS((void)build_frame(s, SymbolGrid::zeros_for(s, NumerologyId::First), SymbolGrid(1, 8)),
                    Error);
}

TEST_CASE("build_frame is linear in each grid") {
    for (int k = 1; k <= 3; ++k) {
        const auto s = scenario(128, k, 1.0 / 14.0, 60);
        const std::size_t n1 = s.num1().active_bins.size();
        const std::size_t n2 = s.num2().active_bins.size();
        const std::size_t sym2 = s.scaling();
        const Complex a{0.7, -1.3}, b{-2.1, 0.4};

        const auto g1 = random_grid(1, n1, 10 + k), h1 = random_grid(1, n1, 20 + k);
        const auto g2 = random_grid(sym2, n2, 30 + k), h2 = random_grid(sym2, n2, 40 + k);
        SymbolGrid c1(1, n1), c2(sym2, n2);
        for (std::size_t i = 0; i < c1.size(); ++i) {
            c1.flat()[i] = a * g1.flat()[i] + b * h1.flat()[i];
        }
        for (std::size_t i = 0; i < c2.size(); ++i) {
            c2.flat()[i] = a * g2.flat()[i] + b * h2.flat()[i];
        }
        const auto z1 = SymbolGrid::zeros_for(s, NumerologyId::First);
        const auto z2 = SymbolGrid::zeros_for(s, NumerologyId::Second);

        const auto lhs1 = build_frame(s, c1, z2).samples;
        const auto fg1 = build_frame(s, g1, z2).samples, fh1 = build_frame(s, h1, z2).samples;
        const auto lhs2 = build_frame(s, z1, c2).samples;
        const auto fg2 = build_frame(s, z1, g2).samples, fh2 = build_frame(s, z1, h2).samples;
        Samples rhs1(lhs1.size()), rhs2(lhs2.size());
        for (std::size_t i = 0; i < rhs1.size(); ++i) {
            rhs1[i] = a * fg1[i] + b * fh1[i];
            rhs2[i] = a * fg2[i] + b * fh2[i];
        }
        CAPTURE(k);
        CHECK(max_abs_diff(lhs1, rhs1) <= 1e-12);
        CHECK(max_abs_diff(lhs2, rhs2) <= 1e-12);
    }
}

TEST_CASE("frame energy decomposes into branches and cross term") {
    const auto s = scenario(256, 1, 1.0 / 14.0, 180);
    const auto g1 = random_grid(1, s.num1().active_bins.size(), 5);
    const auto g2 = random_grid(2, s.num2().active_bins.size(), 6);
    const auto b1 = num1_branch(s, g1);
    const auto b2 = num2_branch(s, g2);
    const auto frame = build_frame(s, g1, g2).samples;

    double cross = 0.0;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        cross += (b1[i] * std::conj(b2[i])).real();
    }
    const double expected = energy(b1) + energy(b2) + 2.0 * cross;
    CHECK(std::abs(energy(frame) - expected) <= 1e-10 * expected);

    const auto z2 = SymbolGrid::zeros_for(s, NumerologyId::Second);
    CHECK(std::abs(energy(build_frame(s, g1, z2).samples) - energy(b1)) <= 1e-10 * energy(b1));
}

TEST_CASE("every active bin carries unit power") {
    for (int k = 1; k <= 2; ++k) {
        const auto s = scenario(64, k, 0.0, 30);
        for (std::size_t pos = 0; pos < s.num1().active_bins.size(); ++pos) {
            auto g1 = SymbolGrid::zeros_for(s, NumerologyId::First);
            g1.at(0, pos) = 1.0;
            CHECK(energy(num1_branch(s, g1)) == doctest::Approx(1.0).epsilon(1e-12));
        }
        for (std::size_t pos = 0; pos < s.num2().active_bins.size(); ++pos) {
            auto g2 = SymbolGrid::zeros_for(s, NumerologyId::Second);
            g2.at(s.scaling() - 1, pos) = 1.0;
            CHECK(energy(num2_branch(s, g2)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
