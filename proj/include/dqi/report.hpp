// Experiment records: solver runs as JSON and CSV rows, config-echoed
// reports with atomic persistence, and leaderboard assembly from result
// CSVs.
//
// Reproducibility contract: for a fixed seed every emitted value is
// byte-identical across runs (floats go through format_float, 12 significant
// digits). The only informational exceptions are wall-clock milliseconds and
// the report creation timestamp, which never participate in value identity.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqi/baselines.hpp"

namespace dqi {

// One measurement row: an algorithm or predictor, the instance it ran on,
// and a named metric with optional uncertainty (0 when exact).
struct ReportRow {
    std::string label;
    std::string instance_id;
    std::string metric;
    double value = 0.0;
    double uncertainty = 0.0;
};

struct ExperimentReport {
    std::string experiment_id;
    std::string config_echo; // canonical JSON of every parameter and seed
    std::vector<ReportRow> rows;
    std::string format_version = "1";
    std::string created_utc; // informational only
};

std::string run_result_to_json_string(const RunResult& r);

inline constexpr const char* kRunCsvHeader =
    "algorithm,instance-id,seed,sweeps,phi,wallclock_ms";

// Appends one run row, creating the file with its header when absent.
void append_run_csv(const std::string& path, const std::string& instance_id,
                    const RunResult& r);
// Field-level variant for predictor rows that have no RunResult.
void append_run_csv_row(const std::string& path, const std::string& algorithm,
                        const std::string& instance_id, uint64_t seed, size_t sweeps,
                        double phi, double wallclock_ms);

std::string report_to_json_string(const ExperimentReport& rep);
ExperimentReport report_from_json_string(const std::string& text);
void save_report(const ExperimentReport& rep, const std::string& path); // atomic
ExperimentReport load_report(const std::string& path);

// Replay identity: everything except the creation timestamp must coincide.
bool reports_value_identical(const ExperimentReport& a, const ExperimentReport& b);

// Merge run CSVs (texts, not paths), keep the best satisfied fraction per
// (algorithm, instance) pair, and render a two-column table sorted by
// fraction descending (label ascending on ties). Labels carry the instance
// id only when more than one instance appears.
std::string leaderboard_table(const std::vector<std::string>& csv_texts);

} // namespace dqi
