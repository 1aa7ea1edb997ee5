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

#include "mixnum/ini_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iterator>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "mixnum/error.hpp"
#include "mixnum/rx_chain.hpp"

namespace mixnum {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// owned by exactly one thread; the first exception is rethrown.
template <typename Fn>
void parallel_for(const std::size_t count, const std::size_t workers, Fn&& fn) {
    const std::size_t threads = std::min(workers, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += threads) {
                        fn(i);
                    }
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

IniReport make_report(const MixedScenario& scenario, const std::size_t trials,
                      const std::vector<double>& powers1, const std::vector<double>& powers2) {
    IniReport report{scenario, trials, {}};
    report.entries.reserve(powers1.size() + powers2.size());
    const auto append = [&](const NumerologyId id, const std::vector<double>& powers) {
        const auto& numerology = scenario.numerology(id);
        for (std::size_t i = 0; i < powers.size(); ++i) {
            const std::size_t bin = numerology.active_bins[i];
            const double db = power_to_db(powers[i]);
            report.entries.push_back(
                    {id, bin, numerology.abs_freq_khz(bin), powers[i], db, db == kFloorDb});
        }
    };
    append(NumerologyId::First, powers1);
    append(NumerologyId::Second, powers2);
    return report;
}

/// |e|^2 of one trial, numerology-1 bins then numerology-2 (q, bin) slots.
void trial_powers(const MixedScenario& scenario, const std::uint64_t trial, std::span<double> out) {
    auto grid1 = SymbolGrid::zeros_for(scenario, NumerologyId::First);
    auto grid2 = SymbolGrid::zeros_for(scenario, NumerologyId::Second);
    draw_trial_symbols(scenario.seed(), trial, grid1, grid2);

    const TimeSignal frame = build_frame(scenario, grid1, grid2);
    const auto e1 = error_vector(recv_num1(frame, scenario), grid1.row(0));
    const auto e2 = error_vector(recv_num2(frame, scenario), grid2);

    std::size_t slot = 0;
    for (const auto& e : e1) {
        out[slot++] = std::norm(e);
    }
    for (const auto& e : e2.flat()) {
        out[slot++] = std::norm(e);
    }
}

/// Collapses per-(q, bin) numerology-2 totals to per-bin means over q.
std::vector<double> average_over_symbols(std::span<const double> totals, const std::size_t symbols,
                                         const std::size_t bins, const double divisor) {
    std::vector<double> powers(bins, 0.0);
    for (std::size_t q = 0; q < symbols; ++q) {
        for (std::size_t p = 0; p < bins; ++p) {
            powers[p] += totals[q * bins + p];
        }
    }
    for (auto& p : powers) {
        p /= divisor * static_cast<double>(symbols);
    }
    return powers;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return kNaN;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double mean(const std::vector<double>& values) {
    if (values.empty()) {
        return kNaN;
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

NumerologySummary summarize_one(const std::vector<IniEntry>& entries, const bool edge_is_highest,
                                const std::size_t residue_classes) {
    NumerologySummary summary;
    summary.active_bins = entries.size();
    if (entries.empty()) {
        summary.mean_ini_db = summary.mean_power_db = summary.edge_ini_db = kNaN;
        summary.inner_median_db = kNaN;
        summary.residue_class_means.assign(residue_classes, kNaN);
        return summary;
    }

    std::vector<double> db;
    std::vector<double> power;
    for (const auto& e : entries) {
        db.push_back(e.ini_db);
        power.push_back(e.mean_power);
    }
    summary.mean_ini_db = mean(db);
    summary.mean_power_db = power_to_db(mean(power));

    const std::size_t edge = edge_is_highest ? entries.size() - 1 : 0;
    summary.edge_bin = entries[edge].bin_index;
    summary.edge_ini_db = entries[edge].ini_db;
    std::vector<double> inner = db;
    inner.erase(inner.begin() + static_cast<std::ptrdiff_t>(edge));
    summary.inner_median_db = median(std::move(inner));

    std::vector<std::vector<double>> classes(residue_classes);
    for (const auto& e : entries) {
        classes[e.bin_index % residue_classes].push_back(e.ini_db);
    }
    for (const auto& members : classes) {
        summary.residue_class_means.push_back(mean(members));
    }
    return summary;
}

} // namespace

double power_to_db(const double mean_power) noexcept {
    if (!(mean_power >= kFloorPower)) {
        return kFloorDb;
    }
    return 10.0 * std::log10(mean_power);
}

std::vector<IniEntry> IniReport::entries_for(const NumerologyId id) const {
    std::vector<IniEntry> selected;
    std::copy_if(entries.begin(), entries.end(), std::back_inserter(selected),
                 [id](const IniEntry& e) { return e.numerology == id; });
    return selected;
}

TrialBits::TrialBits(const std::uint64_t seed, const std::uint64_t trial) {
    constexpr std::uint64_t kLow = 0xffffffffULL;
    std::seed_seq seq{static_cast<std::uint32_t>(seed & kLow), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial & kLow),
                      static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
}

std::uint8_t TrialBits::next() {
    if (remaining_ == 0) {
        word_ = engine_();
        remaining_ = 64;
    }
    const auto bit = static_cast<std::uint8_t>(word_ & 1U);
    word_ >>= 1;
    --remaining_;
    return bit;
}

void draw_trial_symbols(const std::uint64_t seed, const std::uint64_t trial, SymbolGrid& grid1,
                        SymbolGrid& grid2) {
    TrialBits bits(seed, trial);
    for (auto* grid : {&grid1, &grid2}) {
        for (auto& symbol : grid->flat()) {
            symbol = Complex(bits.next() == 0 ? 1.0 : -1.0, 0.0);
        }
    }
}

std::size_t resolve_workers(const std::size_t requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

IniReport run_monte_carlo(const MixedScenario& scenario, const std::size_t workers) {
    const std::size_t n1 = scenario.num1().active_bins.size();
    const std::size_t n2 = scenario.num2().active_bins.size();
    const std::size_t symbols2 = scenario.scaling();
    const std::size_t slots = n1 + symbols2 * n2;
    const std::size_t trials = scenario.trials();
    const std::size_t threads = resolve_workers(workers);

    // Trials run in batches; each batch is merged in ascending trial order.
    const std::size_t batch = std::max<std::size_t>(64, 16 * threads);
    std::vector<double> per_trial(batch * slots);
    std::vector<double> totals(slots, 0.0);

    for (std::size_t first = 0; first < trials; first += batch) {
        const std::size_t count = std::min(batch, trials - first);
        parallel_for(count, threads, [&](const std::size_t i) {
            trial_powers(scenario, first + i, std::span(per_trial).subspan(i * slots, slots));
        });
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t s = 0; s < slots; ++s) {
                totals[s] += per_trial[i * slots + s];
            }
        }
    }

    const auto trial_count = static_cast<double>(trials);
    std::vector<double> powers1(totals.begin(), totals.begin() + static_cast<std::ptrdiff_t>(n1));
    for (auto& p : powers1) {
        p /= trial_count;
    }
    const auto powers2 =
            average_over_symbols(std::span(totals).subspan(n1), symbols2, n2, trial_count);
    return make_report(scenario, trials, powers1, powers2);
}

double CouplingMatrix::max_abs_gain() const noexcept {
    double peak = 0.0;
    for (const auto* block : {&into_num1, &into_num2}) {
        for (const auto& g : block->gains) {
            peak = std::max(peak, std::abs(g));
        }
    }
    return peak;
}

CouplingMatrix coupling_matrix(const MixedScenario& scenario, const std::size_t workers) {
    const std::size_t n1 = scenario.num1().active_bins.size();
    const std::size_t n2 = scenario.num2().active_bins.size();
    const std::size_t symbols2 = scenario.scaling();
    const std::size_t threads = resolve_workers(workers);

    CouplingMatrix matrix{scenario, {}, {}};

    auto& into1 = matrix.into_num1;
    into1 = {NumerologyId::Second, NumerologyId::First, symbols2, n2, 1, n1, {}};
    if (into1.num_sources() > 0 && into1.num_victims() > 0) {
        into1.gains.resize(into1.num_sources() * into1.num_victims());
        parallel_for(into1.num_sources(), threads, [&](const std::size_t source) {
            auto grid1 = SymbolGrid::zeros_for(scenario, NumerologyId::First);
            auto grid2 = SymbolGrid::zeros_for(scenario, NumerologyId::Second);
            grid2.flat()[source] = 1.0;
            const auto leak = recv_num1(build_frame(scenario, grid1, grid2), scenario);
            std::copy(leak.begin(), leak.end(),
                      into1.gains.begin() + static_cast<std::ptrdiff_t>(source * n1));
        });
    }

    auto& into2 = matrix.into_num2;
    into2 = {NumerologyId::First, NumerologyId::Second, 1, n1, symbols2, n2, {}};
    if (into2.num_sources() > 0 && into2.num_victims() > 0) {
        into2.gains.resize(into2.num_sources() * into2.num_victims());
        parallel_for(into2.num_sources(), threads, [&](const std::size_t source) {
            auto grid1 = SymbolGrid::zeros_for(scenario, NumerologyId::First);
            auto grid2 = SymbolGrid::zeros_for(scenario, NumerologyId::Second);
            grid1.flat()[source] = 1.0;
            const auto leak = recv_num2(build_frame(scenario, grid1, grid2), scenario);
            std::copy(leak.flat().begin(), leak.flat().end(),
                      into2.gains.begin() +
                              static_cast<std::ptrdiff_t>(source * into2.num_victims()));
        });
    }
    return matrix;
}

IniReport expected_ini(const CouplingMatrix& matrix, const MixedScenario& scenario) {
    if (!matrix.scenario.same_layout(scenario)) {
        throw Error(ErrorKind::ScenarioMismatch,
                    "coupling matrix was built for a different scenario layout");
    }
    const auto column_power = [](const CouplingBlock& block) {
        std::vector<double> totals(block.num_victims(), 0.0);
        for (std::size_t s = 0; s < block.num_sources(); ++s) {
            for (std::size_t v = 0; v < block.num_victims(); ++v) {
                totals[v] += std::norm(block.gains[s * block.num_victims() + v]);
            }
        }
        return totals;
    };

    const std::size_t n1 = scenario.num1().active_bins.size();
    const std::size_t n2 = scenario.num2().active_bins.size();
    std::vector<double> powers1 = matrix.into_num1.empty() ? std::vector<double>(n1, 0.0)
                                                           : column_power(matrix.into_num1);
    std::vector<double> powers2(n2, 0.0);
    if (!matrix.into_num2.empty()) {
        powers2 = average_over_symbols(column_power(matrix.into_num2), scenario.scaling(), n2, 1.0);
    }
    return make_report(scenario, 0, powers1, powers2);
}

IniSummary summarize(const IniReport& report, const MixedScenario& scenario) {
    IniSummary summary;
    summary.num1 = summarize_one(report.entries_for(NumerologyId::First), true, scenario.scaling());
    summary.num2 = summarize_one(report.entries_for(NumerologyId::Second), false, 1);
    summary.num2.residue_class_means.clear();
    summary.num2_minus_num1_db = summary.num2.mean_ini_db - summary.num1.mean_ini_db;
    return summary;
}

std::vector<IniReport> sweep_guards(const ScenarioParams& params, const std::span<const int> guards_khz,
                                    const EstimateMode mode, const std::size_t workers) {
    std::vector<IniReport> reports;
    reports.reserve(guards_khz.size());
    for (const int guard : guards_khz) {
        ScenarioParams p = params;
        p.guard_khz = guard;
        const auto scenario = build_scenario(p);
        if (mode == EstimateMode::Oracle) {
            reports.push_back(expected_ini(coupling_matrix(scenario, workers), scenario));
        } else {
            reports.push_back(run_monte_carlo(scenario, workers));
        }
    }
    return reports;
}

double worst_case_ini_db(const IniReport& report) noexcept {
    double worst = kFloorDb;
    for (const auto& e : report.entries) {
        worst = std::max(worst, e.ini_db);
    }
    return worst;
}

int min_guard_search(const ScenarioParams& templ, const double target_db, const std::size_t workers) {
    double best = std::numeric_limits<double>::infinity();
    const auto half_band = static_cast<long long>(templ.n_ref / 2) * templ.base_scs_khz;
    for (int guard = 0; guard <= half_band; guard += templ.base_scs_khz) {
        ScenarioParams p = templ;
        p.guard_khz = guard;
        std::optional<MixedScenario> scenario;
        try {
            scenario.emplace(build_scenario(p));
        } catch (const Error& e) {
            // Past the last guard that leaves both numerologies populated.
            if (guard == 0 || e.kind() != ErrorKind::InvalidScenario) {
                throw;
            }
            break;
        }
        const double worst = worst_case_ini_db(expected_ini(coupling_matrix(*scenario, workers), *scenario));
        best = std::min(best, worst);
        if (worst <= target_db) {
            return guard;
        }
    }
    char text[64];
    std::snprintf(text, sizeof text, "%.3f", best);
    throw TargetUnreachable(best, "no guard reaches " + std::to_string(target_db) +
                                          " dB; best worst-case INI is " + text + " dB");
}

} // namespace mixnum
