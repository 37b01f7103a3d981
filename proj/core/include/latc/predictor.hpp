#pragma once

#include <vector>

#include "latc/solver.hpp"

namespace latc {

/// Rolling forecast layout. Window s (1-based) covers source columns
/// [t + s*tau - I*J, t + s*tau), its last tau columns are treated as
/// unobserved, and the recovered values of those columns form output block
/// s. t is the number of columns preceding the first predicted column.
struct PredictionTask {
    Index t = 0;
    Index windows = 0;           // S
    Index horizon = 0;           // tau
    Index points_per_season = 0; // I
    Index seasons_per_window = 0;  // J

    Index window_cols() const { return points_per_season * seasons_per_window; }

    void validate(Index total_cols) const {
        if (horizon < 1) throw ConfigError("PredictionTask: horizon must be >= 1");
        if (windows < 1) throw ConfigError("PredictionTask: windows must be >= 1");
        if (points_per_season < 1 || seasons_per_window < 1)
            throw ConfigError("PredictionTask: tensor dims must be >= 1");
        if (t + horizon < window_cols())
            throw ConfigError("PredictionTask: first window starts before the data");
        if (t + windows * horizon > total_cols)
            throw ConfigError("PredictionTask: last window ends past the data");
    }
};

/// Slice window s out of y and mask its final horizon columns. Entries
/// already missing in the history stay missing.
TimeSeriesMatrix make_window(const TimeSeriesMatrix& y, const PredictionTask& task, Index s);

struct PredictResult {
    Matrix predictions;  // sensors x (windows * horizon)
    std::vector<ConvergenceReport> window_reports;
};

/// Impute every window and harvest the recovered tails. Each window reads
/// history from the raw y only, so predictions never feed later windows.
PredictResult predict(const TimeSeriesMatrix& y, const PredictionTask& task,
                      const SolverConfig& config);

}  // namespace latc
