// SPDX-License-Identifier: MIT
#pragma once

#include "edetect/bounds.hpp"
#include "edetect/calibration.hpp"
#include "edetect/detector.hpp"
#include "edetect/simulate.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace edetect {

// Calibrations and reports persist in a line-oriented "key = value" text
// format (arrays are space-separated on one line). Reals carry 17
// significant digits, so a load reproduces the doubles bit-exactly.

void write_calibration(const std::filesystem::path& path, const MixtureCalibration& cal);
void write_calibration(const std::filesystem::path& path, const AdaptiveCalibration& cal);

struct LoadedCalibration {
    std::optional<MixtureCalibration> finite;
    std::optional<AdaptiveCalibration> adaptive;
};
LoadedCalibration read_calibration(const std::filesystem::path& path);

// Tabular run record: step, log_m_sr, log_m_cs, threshold, stopped.
void write_run_path_csv(const std::filesystem::path& path, const RunResult& result,
                        double log_threshold);

// Reads one numeric column; 0-based column index. Rows failing to parse name
// the file line; values outside the normalization range abort with the line.
std::vector<double> ingest_csv(const std::filesystem::path& path, int column,
                               bool has_header,
                               std::optional<std::pair<double, double>> normalize);

void write_report(const std::filesystem::path& path, const MonteCarloReport& report,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});
void write_report(const std::filesystem::path& path, const DelayBoundReport& report,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});

// Appends one summary row (creates the file with a header when absent).
void append_report_csv_row(const std::filesystem::path& path, const std::string& label,
                           const MonteCarloReport& report);

} // namespace edetect
