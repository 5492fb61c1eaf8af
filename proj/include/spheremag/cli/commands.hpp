#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spheremag/cli/config.hpp"

namespace spheremag::cli {

/// Runs one command, writing result.json and field_*.csv into out_dir.
/// Returns the result document. Throws ConfigError or IoError.
Json run_command(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Full CLI entry point; returns the process exit code
/// (0 success, 1 validation failure, 2 I/O failure).
int main_entry(int argc, char** argv);

/// CSV with header lon_deg,lat_deg,value, LF line endings, %.17g numbers.
void write_field_csv(const std::filesystem::path& path, std::span<const double> lon_deg,
                     std::span<const double> lat_deg, std::span<const double> values);

}  // namespace spheremag::cli
