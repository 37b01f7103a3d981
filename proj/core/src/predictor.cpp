#include "latc/predictor.hpp"

namespace latc {

TimeSeriesMatrix make_window(const TimeSeriesMatrix& y, const PredictionTask& task, Index s) {
    task.validate(y.time_points());
    if (s < 1 || s > task.windows)
        throw ConfigError("make_window: window index out of range");
    const Index cols = task.window_cols();
    const Index end = task.t + s * task.horizon;
    const Index begin = end - cols;

    TimeSeriesMatrix window;
    window.values = y.values.middleCols(begin, cols);
    window.mask = y.mask.middleCols(begin, cols);
    window.mask.rightCols(task.horizon).setConstant(false);
    return window;
}

PredictResult predict(const TimeSeriesMatrix& y, const PredictionTask& task,
                      const SolverConfig& config) {
    task.validate(y.time_points());
    const Index cols = task.window_cols();

    PredictResult result;
    result.predictions.resize(y.sensors(), task.windows * task.horizon);
    result.window_reports.reserve(static_cast<std::size_t>(task.windows));

    for (Index s = 1; s <= task.windows; ++s) {
        TimeSeriesMatrix window = make_window(y, task, s);
        ImputeResult solved = impute(window, task.points_per_season, config);
        result.predictions.middleCols((s - 1) * task.horizon, task.horizon) =
            solved.recovered.middleCols(cols - task.horizon, task.horizon);
        result.window_reports.push_back(solved.report);
    }
    return result;
}

}  // namespace latc
