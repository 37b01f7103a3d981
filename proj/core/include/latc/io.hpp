#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latc/solver.hpp"
#include "latc/tensor.hpp"

namespace latc {

/// Where and how to read a dataset: rows are sensors, columns are time
/// points. Cells equal to missing_token (case-insensitive) or empty are
/// unobserved.
struct DatasetDescriptor {
    std::string path;
    Index season_length = 1;
    char delimiter = ',';
    std::string missing_token = "nan";
};

TimeSeriesMatrix load_csv(const DatasetDescriptor& desc);

/// Write with 15 significant digits; unobserved cells become empty fields.
void write_csv(const Matrix& m, const std::string& path, char delimiter = ',');
void write_csv(const TimeSeriesMatrix& y, const std::string& path, char delimiter = ',');

/// Mask files hold 0/1 cells, same shape as the data they describe.
Mask load_mask_csv(const std::string& path, char delimiter = ',');
void write_mask_csv(const Mask& mask, const std::string& path, char delimiter = ',');

/// Drop the oldest columns until the count divides the season length; the
/// trailing block is preserved unchanged.
TimeSeriesMatrix trim_to_seasons(const TimeSeriesMatrix& y, Index season_length);

/// Apply one key=value setting. Keys: alpha1 alpha2 alpha3 rho0 rho_max c0
/// theta epsilon max_iters seed lags lambda_tracks_rho; lags is a comma
/// list of positive integers. Unknown keys or malformed values throw
/// ConfigError.
void set_config_key(SolverConfig& config, const std::string& key, const std::string& value);

/// Read key=value lines; blank lines and lines starting with '#' are
/// skipped.
void load_config_file(SolverConfig& config, const std::string& path);

/// Fully resolved configuration as (key, value) pairs, one per accepted
/// key, with lags and rho_max resolved to their effective values for the
/// given season length.
std::vector<std::pair<std::string, std::string>> config_report_entries(const SolverConfig& config,
                                                                       Index season_length);

/// Format a double with 15 significant digits (CSV cells, report values).
std::string format_value(double v);

}  // namespace latc
