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

#ifndef MIXNUM_CLI_HPP
#define MIXNUM_CLI_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixnum/ini_analysis.hpp"
#include "mixnum/numerology.hpp"

namespace mixnum::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUnreachable = 1,
    kExitBadFlags = 2,
    kExitInvalidScenario = 3,
    kExitIoError = 4,
};

/// Exact header of every INI curve CSV.
inline constexpr std::string_view kCsvHeader =
        "case_id,guard_khz,numerology,bin_index,abs_freq_khz,ini_db,trials";

/// Preset experiment: scaling exponent plus three guards.
struct CasePreset {
    int id;
    int k;
    std::array<int, 3> guards_khz;
};

inline constexpr std::array<CasePreset, 4> kCasePresets{{
        {1, 1, {0, 180, 360}},
        {2, 1, {15, 195, 375}},
        {3, 2, {0, 180, 360}},
        {4, 2, {45, 225, 405}},
}};

/// Parses "1/14", "0.0714" and similar. Returns nullopt on malformed input.
[[nodiscard]] std::optional<double> parse_ratio(std::string_view text);

/// Parses a comma-separated list of integer guards in kHz.
[[nodiscard]] std::optional<std::vector<int>> parse_guard_list(std::string_view text);

/// ini_db with six significant digits, trailing zeros kept (floor -> -200.000).
[[nodiscard]] std::string format_db(double value);

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, int case_id, const IniReport& report);

/// Guard-indexed results of one case, as produced by sweep_guards.
struct CaseResult {
    int case_id{};
    ScenarioParams params;
    std::vector<int> guards_khz;
    std::vector<IniReport> reports;
};

/// Serializes per-(case, guard) summaries as indented JSON.
[[nodiscard]] std::string summary_json(const std::vector<CaseResult>& cases, EstimateMode mode);

struct RunOptions {
    ScenarioParams params;
    std::vector<int> guards_khz{0};
    bool oracle{false};
    std::size_t workers{0};
    std::string out_path;     ///< empty: CSV to standard output
    std::string summary_path; ///< empty: no summary
};

struct CasesOptions {
    std::size_t n_ref{kDefaultRefFftSize};
    double cp_ratio{kDefaultCpRatio};
    std::size_t trials{kDefaultTrials};
    std::uint64_t seed{0};
    std::size_t workers{0};
    bool oracle{false};
    std::string out_dir{"."};
    std::string summary_path;
};

struct MinGuardOptions {
    ScenarioParams params;
    double target_db{};
    std::size_t workers{0};
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_cases(const CasesOptions& options, std::ostream& out, std::ostream& err);
int cmd_min_guard(const MinGuardOptions& options, std::ostream& out, std::ostream& err);
int cmd_catalog(std::ostream& out);

/// Full command line (argv[0] included) to exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mixnum::cli

#endif // MIXNUM_CLI_HPP
