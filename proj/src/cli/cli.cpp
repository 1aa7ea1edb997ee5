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

#include "mixnum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mixnum/error.hpp"

namespace mixnum::cli {

namespace {

constexpr int kExitInternal = 5;

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    return text;
}

std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    // std::from_chars for double is not available on every supported toolchain.
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

bool is_scenario_error(const Error& e) {
    return e.kind() == ErrorKind::InvalidScenario || e.kind() == ErrorKind::InvalidGuard ||
           e.kind() == ErrorKind::UnknownNumerology;
}

/// Builds every scenario of a sweep up front so bad guards fail before any work.
void validate_guards(const ScenarioParams& params, const std::vector<int>& guards) {
    for (const int guard : guards) {
        ScenarioParams p = params;
        p.guard_khz = guard;
        static_cast<void>(build_scenario(p));
    }
}

nlohmann::json numerology_json(const NumerologySummary& s, const bool with_residues) {
    nlohmann::json j;
    j["active_bins"] = s.active_bins;
    j["mean_ini_db"] = s.mean_ini_db;
    j["mean_power_db"] = s.mean_power_db;
    j["edge_bin"] = s.edge_bin;
    j["edge_ini_db"] = s.edge_ini_db;
    j["inner_median_ini_db"] = s.inner_median_db;
    if (with_residues) {
        j["residue_class_means"] = s.residue_class_means;
    }
    return j;
}

bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    file << contents;
    file.flush();
    if (!file) {
        err << "error: failed writing " << path << "\n";
        return false;
    }
    return true;
}

std::string curves_csv(const std::vector<CaseResult>& cases) {
    std::ostringstream csv;
    write_csv_header(csv);
    for (const auto& c : cases) {
        for (const auto& report : c.reports) {
            write_csv_rows(csv, c.case_id, report);
        }
    }
    return csv.str();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_scenario_error(e) ? kExitInvalidScenario : kExitInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace

std::optional<double> parse_ratio(std::string_view text) {
    text = trim(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_double(text.substr(0, slash));
        const auto den = parse_double(text.substr(slash + 1));
        if (!num || !den || *den == 0.0) {
            return std::nullopt;
        }
        return *num / *den;
    }
    return parse_double(text);
}

std::optional<std::vector<int>> parse_guard_list(std::string_view text) {
    std::vector<int> guards;
    while (true) {
        const auto comma = text.find(',');
        const auto field = trim(text.substr(0, comma));
        int value = 0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
            return std::nullopt;
        }
        guards.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return guards;
}

std::string format_db(const double value) {
    char text[32];
    std::snprintf(text, sizeof text, "%#.6g", value);
    return text;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_rows(std::ostream& out, const int case_id, const IniReport& report) {
    char freq[32];
    for (const auto& e : report.entries) {
        std::snprintf(freq, sizeof freq, "%.10g", e.abs_freq_khz);
        out << case_id << ',' << report.scenario.guard_khz() << ','
            << static_cast<int>(e.numerology) << ',' << e.bin_index << ',' << freq << ','
            << format_db(e.ini_db) << ',' << report.trials << '\n';
    }
}

std::string summary_json(const std::vector<CaseResult>& cases, const EstimateMode mode) {
    nlohmann::json root;
    root["mode"] = mode == EstimateMode::Oracle ? "oracle" : "monte_carlo";
    root["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json jc;
        jc["case_id"] = c.case_id;
        jc["n_ref"] = c.params.n_ref;
        jc["k"] = c.params.k;
        jc["cp_ratio"] = c.params.cp_ratio;
        jc["trials"] = c.params.trials;
        jc["seed"] = c.params.seed;
        jc["guards"] = nlohmann::json::array();
        for (const auto& report : c.reports) {
            const auto summary = summarize(report, report.scenario);
            nlohmann::json jg;
            jg["guard_khz"] = report.scenario.guard_khz();
            jg["g1"] = report.scenario.guards().g1;
            jg["g2"] = report.scenario.guards().g2;
            jg["numerology1"] = numerology_json(summary.num1, true);
            jg["numerology2"] = numerology_json(summary.num2, false);
            jg["num2_minus_num1_db"] = summary.num2_minus_num1_db;
            jc["guards"].push_back(std::move(jg));
        }
        root["cases"].push_back(std::move(jc));
    }
    return root.dump(2) + "\n";
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate_guards(options.params, options.guards_khz);
        const auto mode = options.oracle ? EstimateMode::Oracle : EstimateMode::MonteCarlo;

        CaseResult result{0, options.params, options.guards_khz,
                          sweep_guards(options.params, options.guards_khz, mode, options.workers)};
        const std::vector<CaseResult> cases{std::move(result)};

        const std::string csv = curves_csv(cases);
        if (options.out_path.empty()) {
            out << csv;
        } else if (!write_file(options.out_path, csv, err)) {
            return static_cast<int>(kExitIoError);
        }
        if (!options.summary_path.empty() &&
            !write_file(options.summary_path, summary_json(cases, mode), err)) {
            return static_cast<int>(kExitIoError);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_cases(const CasesOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto mode = options.oracle ? EstimateMode::Oracle : EstimateMode::MonteCarlo;
        std::vector<CaseResult> cases;
        for (const auto& preset : kCasePresets) {
            ScenarioParams params;
            params.n_ref = options.n_ref;
            params.k = preset.k;
            params.cp_ratio = options.cp_ratio;
            params.trials = options.trials;
            params.seed = options.seed;
            const std::vector<int> guards(preset.guards_khz.begin(), preset.guards_khz.end());
            validate_guards(params, guards);
            cases.push_back({preset.id, params, guards, {}});
        }

        std::error_code ec;
        std::filesystem::create_directories(options.out_dir, ec);
        if (ec) {
            err << "error: cannot create " << options.out_dir << ": " << ec.message() << "\n";
            return static_cast<int>(kExitIoError);
        }

        for (auto& c : cases) {
            c.reports = sweep_guards(c.params, c.guards_khz, mode, options.workers);
            const auto path =
                    (std::filesystem::path(options.out_dir) / ("case" + std::to_string(c.case_id) + ".csv"))
                            .string();
            if (!write_file(path, curves_csv({c}), err)) {
                return static_cast<int>(kExitIoError);
            }
            out << "wrote " << path << "\n";
        }
        if (!options.summary_path.empty() &&
            !write_file(options.summary_path, summary_json(cases, mode), err)) {
            return static_cast<int>(kExitIoError);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_min_guard(const MinGuardOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        try {
            const int guard = min_guard_search(options.params, options.target_db, options.workers);
            out << "guard_khz=" << guard << "\n";
            return static_cast<int>(kExitOk);
        } catch (const TargetUnreachable& e) {
            char best[32];
            std::snprintf(best, sizeof best, "%.3f", e.best_db());
            out << "unreachable best=" << best << "\n";
            return static_cast<int>(kExitUnreachable);
        }
    });
}

int cmd_catalog(std::ostream& out) {
    out << "freq_range,scs_khz,cp_dur_us,slot_ms,max_bw_mhz\n";
    char cp[32];
    char slot[32];
    for (const auto& row : numerology_catalog()) {
        if (row.extended_cp_dur_us) {
            std::snprintf(cp, sizeof cp, "%.2f|%.2f", row.cp_dur_us, *row.extended_cp_dur_us);
        } else {
            std::snprintf(cp, sizeof cp, "%.2f", row.cp_dur_us);
        }
        std::snprintf(slot, sizeof slot, "%g", row.slot_ms);
        out << to_string(row.freq_range) << ',' << row.scs_khz << ',' << cp << ',' << slot << ','
            << row.max_bw_mhz << '\n';
    }
    return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixed-numerology CP-OFDM inter-numerology interference simulator", "mixnum"};
    app.require_subcommand(1);

    std::string cp_text = "1/14";
    std::size_t n_ref = kDefaultRefFftSize;
    std::size_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    bool oracle = false;
    std::string summary_path;
    int k = 1;

    auto* run = app.add_subcommand("run", "Guard sweep for one scaling exponent");
    std::string guards_text = "0";
    std::string out_path;
    run->add_option("--n", n_ref, "Reference transform size (power of two)");
    run->add_option("--k", k, "Spacing scaling exponent (2^k)")->required();
    run->add_option("--cp-ratio", cp_text, "CP ratio, decimal or fraction such as 1/14");
    run->add_option("--guards", guards_text, "Comma-separated guards in kHz");
    run->add_option("--trials", trials, "Monte Carlo trials");
    run->add_option("--seed", seed, "Random seed");
    run->add_option("--out", out_path, "CSV output path (default: standard output)");
    run->add_option("--summary", summary_path, "Summary JSON path");
    run->add_flag("--oracle", oracle, "Use the coupling-matrix expectation instead of Monte Carlo");
    run->add_option("--workers", workers, "Worker threads (0: all cores)");

    auto* cases = app.add_subcommand("cases", "Run the four preset guard cases");
    std::string out_dir = ".";
    cases->add_option("--out-dir", out_dir, "Directory for case1.csv..case4.csv");
    cases->add_option("--trials", trials, "Monte Carlo trials");
    cases->add_option("--seed", seed, "Random seed");
    cases->add_option("--n", n_ref, "Reference transform size (power of two)");
    cases->add_option("--cp-ratio", cp_text, "CP ratio, decimal or fraction");
    cases->add_option("--summary", summary_path, "Summary JSON path");
    cases->add_flag("--oracle", oracle, "Use the coupling-matrix expectation");
    cases->add_option("--workers", workers, "Worker threads (0: all cores)");

    auto* min_guard = app.add_subcommand("min-guard", "Smallest guard meeting a worst-case INI target");
    double target_db = 0.0;
    min_guard->add_option("--k", k, "Spacing scaling exponent (2^k)");
    min_guard->add_option("--cp-ratio", cp_text, "CP ratio, decimal or fraction");
    min_guard->add_option("--target-db", target_db, "Worst-case INI target in dB")->required();
    min_guard->add_option("--n", n_ref, "Reference transform size (power of two)");
    min_guard->add_option("--workers", workers, "Worker threads (0: all cores)");

    auto* catalog = app.add_subcommand("catalog", "Print the NR numerology table");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitBadFlags);
    }

    const auto cp_ratio = parse_ratio(cp_text);
    if (!cp_ratio) {
        err << "error: --cp-ratio: cannot parse '" << cp_text << "'\n";
        return kExitBadFlags;
    }

    if (run->parsed()) {
        const auto guards = parse_guard_list(guards_text);
        if (!guards) {
            err << "error: --guards: expected comma-separated integers in kHz, got '" << guards_text
                << "'\n";
            return kExitBadFlags;
        }
        RunOptions options;
        options.params = {n_ref, k, *cp_ratio, 0, kBaseScsKhz, trials, seed};
        options.guards_khz = *guards;
        options.oracle = oracle;
        options.workers = workers;
        options.out_path = out_path;
        options.summary_path = summary_path;
        return cmd_run(options, out, err);
    }
    if (cases->parsed()) {
        CasesOptions options;
        options.n_ref = n_ref;
        options.cp_ratio = *cp_ratio;
        options.trials = trials;
        options.seed = seed;
        options.workers = workers;
        options.oracle = oracle;
        options.out_dir = out_dir;
        options.summary_path = summary_path;
        return cmd_cases(options, out, err);
    }
    if (min_guard->parsed()) {
        MinGuardOptions options;
        options.params = {n_ref, k, *cp_ratio, 0, kBaseScsKhz, 1, 0};
        options.target_db = target_db;
        options.workers = workers;
        return cmd_min_guard(options, out, err);
    }
    if (catalog->parsed()) {
        return cmd_catalog(out);
    }
    return kExitBadFlags;
}

} // namespace mixnum::cli
