#include "latc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "latc/io.hpp"
#include "latc/metrics.hpp"
#include "latc/predictor.hpp"
#include "latc/scenarios.hpp"
#include "latc/solver.hpp"

namespace latc {

namespace {

// LATC_LOG: 0 quiet, 1 summaries (default), 2 adds per-iteration progress
int log_level() {
    const char* v = std::getenv("LATC_LOG");
    if (!v || !*v) return 1;
    int level = std::atoi(v);
    return std::clamp(level, 0, 2);
}

using ReportEntries = std::vector<std::pair<std::string, std::string>>;

void emit_report(const ReportEntries& entries, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (const auto& [key, value] : entries) out << key << ": " << value << '\n';
    if (!out) throw ParseError("write to '" + path + "' failed");
}

char single_delimiter(const std::string& s) {
    if (s.size() != 1) throw ConfigError("--delimiter must be a single character");
    return s[0];
}

/// Solver settings gathered from the command line; flags override config
/// file values, which override defaults.
struct SolverArgs {
    std::optional<std::string> config_path;
    std::optional<double> alpha1, alpha2, alpha3, rho0, rho_max, c0, epsilon;
    std::optional<int> theta, max_iters;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> lags;
    std::optional<int> lambda_tracks_rho;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file of key=value lines");
        cmd->add_option("--alpha1", alpha1, "mode-1 weight");
        cmd->add_option("--alpha2", alpha2, "mode-2 weight");
        cmd->add_option("--alpha3", alpha3, "mode-3 weight");
        cmd->add_option("--rho0", rho0, "initial penalty rho");
        cmd->add_option("--rho-max", rho_max, "penalty cap (default 1e5*rho0)");
        cmd->add_option("--c0", c0, "lambda = c0 * rho");
        cmd->add_option("--theta", theta, "singular values left unshrunk (0 = plain shrinkage)");
        cmd->add_option("--epsilon", epsilon, "convergence tolerance");
        cmd->add_option("--max-iters", max_iters, "iteration cap");
        cmd->add_option("--seed", seed, "seed for coefficient initialization");
        cmd->add_option("--lags", lags, "comma list of lags (default derived from --I)");
        cmd->add_option("--lambda-tracks-rho", lambda_tracks_rho,
                        "1: lambda follows rho growth (default), 0: lambda stays c0*rho0");
    }

    SolverConfig resolve() const {
        SolverConfig config;
        if (config_path) load_config_file(config, *config_path);
        if (alpha1) config.alpha[0] = *alpha1;
        if (alpha2) config.alpha[1] = *alpha2;
        if (alpha3) config.alpha[2] = *alpha3;
        if (rho0) config.rho0 = *rho0;
        if (rho_max) config.rho_max = *rho_max;
        if (c0) config.c0 = *c0;
        if (theta) config.theta = *theta;
        if (epsilon) config.epsilon = *epsilon;
        if (max_iters) config.max_iters = *max_iters;
        if (seed) config.seed = *seed;
        if (lags) set_config_key(config, "lags", *lags);
        if (lambda_tracks_rho) config.lambda_tracks_rho = *lambda_tracks_rho != 0;
        return config;
    }
};

/// Drop leading columns when the count does not divide the season length.
TimeSeriesMatrix maybe_trim(const TimeSeriesMatrix& y, Index season_length, Index& trimmed) {
    trimmed = y.time_points() % season_length;
    if (trimmed == 0) return y;
    if (log_level() >= 1)
        std::cerr << "note: dropping " << trimmed
                  << " leading column(s) so the length divides the season length\n";
    return trim_to_seasons(y, season_length);
}

IterationObserver progress_observer() {
    if (log_level() < 2) return {};
    return [](const IterationSnapshot& snap) {
        std::fprintf(stderr, "iter %d residual %.6e rho %.6e\n", snap.iteration, snap.residual,
                     snap.rho);
    };
}

void append_convergence(ReportEntries& entries, const ConvergenceReport& report) {
    entries.emplace_back("iterations", std::to_string(report.iterations));
    entries.emplace_back("final_residual", format_value(report.final_residual));
    entries.emplace_back("final_rho", format_value(report.final_rho));
    entries.emplace_back("wall_seconds", format_value(report.wall_seconds));
    entries.emplace_back("converged", report.converged ? "true" : "false");
}

std::string plot_path_for(const std::string& out_path) {
    const std::size_t slash = out_path.find_last_of('/');
    const std::size_t dot = out_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out_path + ".plot.csv";
    return out_path.substr(0, dot) + ".plot.csv";
}

int run_mask(const std::string& in, Index season_length, const std::string& kind, double rate,
             std::uint64_t seed, const std::string& nm_axis, const std::string& out,
             const std::string& truth_mask_path, char delimiter,
             const std::string& missing_token) {
    DatasetDescriptor desc{in, season_length, delimiter, missing_token};
    TimeSeriesMatrix y = load_csv(desc);
    Index trimmed = 0;
    y = maybe_trim(y, season_length, trimmed);

    MissingScenario scenario;
    scenario.kind = kind == "rm" ? MissingKind::random : MissingKind::non_random;
    scenario.rate = rate;
    scenario.seed = seed;
    scenario.nm_axis = nm_axis == "day" ? NmFiberAxis::day : NmFiberAxis::time_of_day;

    MaskResult result = apply_mask(y, scenario, season_length);
    write_csv(result.masked, out, delimiter);
    write_mask_csv(result.hidden, truth_mask_path, delimiter);

    if (log_level() >= 1) {
        const Index hidden = result.hidden.count();
        const Index observed = y.observed_count();
        std::fprintf(stdout, "hidden %lld of %lld observed entries (%.4f)\n",
                     static_cast<long long>(hidden), static_cast<long long>(observed),
                     observed == 0 ? 0.0
                                   : static_cast<double>(hidden) / static_cast<double>(observed));
    }
    return 0;
}

int run_impute(const std::string& in, Index season_length, const SolverArgs& args,
               const std::string& out, const std::string& report_path, char delimiter,
               const std::string& missing_token) {
    DatasetDescriptor desc{in, season_length, delimiter, missing_token};
    TimeSeriesMatrix y = load_csv(desc);
    Index trimmed = 0;
    y = maybe_trim(y, season_length, trimmed);

    SolverConfig config = args.resolve();
    config.validate();
    ImputeResult result = impute(y, season_length, config, progress_observer());
    write_csv(result.recovered, out, delimiter);

    ReportEntries entries;
    entries.emplace_back("command", "impute");
    entries.emplace_back("input", in);
    entries.emplace_back("sensors", std::to_string(y.sensors()));
    entries.emplace_back("time_points", std::to_string(y.time_points()));
    entries.emplace_back("trimmed_columns", std::to_string(trimmed));
    entries.emplace_back("season_length", std::to_string(season_length));
    entries.emplace_back("seasons", std::to_string(y.time_points() / season_length));
    for (auto& e : config_report_entries(config, season_length)) entries.push_back(std::move(e));
    append_convergence(entries, result.report);
    if (!report_path.empty()) emit_report(entries, report_path);

    if (log_level() >= 1) {
        if (result.report.converged)
            std::fprintf(stdout, "converged after %d iteration(s), residual %.6e\n",
                         result.report.iterations, result.report.final_residual);
        else
            std::fprintf(stdout, "did not converge within %d iteration(s), residual %.6e\n",
                         result.report.iterations, result.report.final_residual);
    }
    return 0;
}

int run_predict(const std::string& in, Index season_length, Index t, Index windows, Index horizon,
                Index seasons_per_window, const SolverArgs& args, const std::string& out,
                const std::string& report_path, const std::string& truth_out,
                const std::string& eval_mask_out, char delimiter,
                const std::string& missing_token) {
    DatasetDescriptor desc{in, season_length, delimiter, missing_token};
    TimeSeriesMatrix y = load_csv(desc);

    PredictionTask task;
    task.t = t;
    task.windows = windows;
    task.horizon = horizon;
    task.points_per_season = season_length;
    task.seasons_per_window =
        seasons_per_window > 0 ? seasons_per_window : (t + horizon) / season_length;
    if (task.seasons_per_window < 1)
        throw ConfigError("predict: not enough history for one season per window; check --t");

    SolverConfig config = args.resolve();
    config.validate();
    task.validate(y.time_points());

    PredictResult result = predict(y, task, config);
    write_csv(result.predictions, out, delimiter);

    const Index span = task.windows * task.horizon;
    TimeSeriesMatrix truth_block;
    truth_block.values = y.values.middleCols(task.t, span);
    truth_block.mask = y.mask.middleCols(task.t, span);

    {
        std::ofstream plot(plot_path_for(out));
        if (!plot) throw ParseError("cannot open '" + plot_path_for(out) + "' for writing");
        plot << "sensor,t,truth,estimate\n";
        for (Index m = 0; m < y.sensors(); ++m)
            for (Index c = 0; c < span; ++c) {
                plot << m << ',' << (task.t + c) << ',';
                if (truth_block.mask(m, c)) plot << format_value(truth_block.values(m, c));
                plot << ',' << format_value(result.predictions(m, c)) << '\n';
            }
    }

    if (!truth_out.empty()) write_csv(truth_block, truth_out, delimiter);
    if (!eval_mask_out.empty()) write_mask_csv(truth_block.mask, eval_mask_out, delimiter);

    int windows_converged = 0;
    int iterations_total = 0;
    double wall_total = 0.0;
    for (const auto& r : result.window_reports) {
        windows_converged += r.converged ? 1 : 0;
        iterations_total += r.iterations;
        wall_total += r.wall_seconds;
    }

    ReportEntries entries;
    entries.emplace_back("command", "predict");
    entries.emplace_back("input", in);
    entries.emplace_back("sensors", std::to_string(y.sensors()));
    entries.emplace_back("time_points", std::to_string(y.time_points()));
    entries.emplace_back("season_length", std::to_string(season_length));
    entries.emplace_back("t", std::to_string(task.t));
    entries.emplace_back("windows", std::to_string(task.windows));
    entries.emplace_back("horizon", std::to_string(task.horizon));
    entries.emplace_back("seasons_per_window", std::to_string(task.seasons_per_window));
    for (auto& e : config_report_entries(config, season_length)) entries.push_back(std::move(e));
    entries.emplace_back("windows_converged", std::to_string(windows_converged) + "/" +
                                                  std::to_string(task.windows));
    entries.emplace_back("iterations_total", std::to_string(iterations_total));
    entries.emplace_back("wall_seconds", format_value(wall_total));
    entries.emplace_back("converged",
                         windows_converged == static_cast<int>(task.windows) ? "true" : "false");
    if (!report_path.empty()) emit_report(entries, report_path);

    if (log_level() >= 1)
        std::fprintf(stdout, "predicted %lld column(s); %d/%lld window(s) converged\n",
                     static_cast<long long>(span), windows_converged,
                     static_cast<long long>(task.windows));
    return 0;
}

int run_eval(const std::string& truth_path, const std::string& est_path,
             const std::string& mask_path, const std::string& metrics_path, char delimiter,
             const std::string& missing_token) {
    DatasetDescriptor truth_desc{truth_path, 1, delimiter, missing_token};
    DatasetDescriptor est_desc{est_path, 1, delimiter, missing_token};
    TimeSeriesMatrix truth = load_csv(truth_desc);
    TimeSeriesMatrix est = load_csv(est_desc);
    Mask scored_mask = load_mask_csv(mask_path, delimiter);

    if (truth.values.rows() != est.values.rows() || truth.values.cols() != est.values.cols() ||
        truth.values.rows() != scored_mask.rows() || truth.values.cols() != scored_mask.cols())
        throw DimensionError(
            "eval: truth, estimate and mask shapes differ (if an earlier step dropped leading "
            "columns to fit whole seasons, trim the truth file the same way)");

    const Index excluded_missing_truth = (scored_mask && !truth.mask).count();
    Mask scored = scored_mask && truth.mask;
    for (Index c = 0; c < est.values.cols(); ++c)
        for (Index r = 0; r < est.values.rows(); ++r)
            if (scored(r, c) && !est.mask(r, c))
                throw std::invalid_argument("eval: estimate is missing a scored entry");

    Vector truth_v, est_v;
    gather_scored(truth.values, est.values, scored, truth_v, est_v);
    if (truth_v.size() == 0) throw std::invalid_argument("eval: no scored entries");

    Index excluded_zero = 0;
    const double mape_value = mape(truth_v, est_v, &excluded_zero);
    const double rmse_value = rmse(truth_v, est_v);

    ReportEntries entries;
    entries.emplace_back("scored_entries", std::to_string(truth_v.size()));
    entries.emplace_back("excluded_zero_truth", std::to_string(excluded_zero));
    entries.emplace_back("excluded_missing_truth", std::to_string(excluded_missing_truth));
    entries.emplace_back("mape", format_value(mape_value));
    entries.emplace_back("rmse", format_value(rmse_value));
    if (!metrics_path.empty()) emit_report(entries, metrics_path);
    for (const auto& [key, value] : entries) std::cout << key << ": " << value << '\n';
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"low-rank tensor completion for multivariate time series"};
    app.name("latc");
    app.require_subcommand(1);

    std::string in, out, report_path, delimiter = ",", missing_token = "nan";
    Index season_length = 0;

    CLI::App* mask_cmd = app.add_subcommand("mask", "hide observed entries to build a test set");
    std::string kind, nm_axis = "day", truth_mask_path;
    double rate = 0.0;
    std::uint64_t mask_seed = 42;
    mask_cmd->add_option("--in", in, "input CSV")->required();
    mask_cmd->add_option("--I", season_length, "points per season")->required()->check(CLI::PositiveNumber);
    mask_cmd->add_option("--kind", kind, "rm: entries, nm: whole fibers")
        ->required()
        ->check(CLI::IsMember({"rm", "nm"}));
    mask_cmd->add_option("--rate", rate, "fraction to hide, in (0,1)")->required();
    mask_cmd->add_option("--seed", mask_seed, "mask RNG seed");
    mask_cmd->add_option("--nm-axis", nm_axis, "nm fiber axis: day hides whole days, tod hides a time of day across days")
        ->check(CLI::IsMember({"day", "tod"}));
    mask_cmd->add_option("--out", out, "masked CSV")->required();
    mask_cmd->add_option("--truth-mask", truth_mask_path, "0/1 CSV marking hidden entries")->required();

    CLI::App* impute_cmd = app.add_subcommand("impute", "fill missing entries");
    SolverArgs impute_args;
    impute_cmd->add_option("--in", in, "input CSV with missing cells")->required();
    impute_cmd->add_option("--I", season_length, "points per season")->required()->check(CLI::PositiveNumber);
    impute_args.add_options(impute_cmd);
    impute_cmd->add_option("--out", out, "recovered CSV")->required();
    impute_cmd->add_option("--report", report_path, "run report (key: value lines)");

    CLI::App* predict_cmd = app.add_subcommand("predict", "rolling multi-step forecast");
    SolverArgs predict_args;
    Index t = 0, windows = 0, horizon = 0, seasons_per_window = 0;
    std::string truth_out, eval_mask_out;
    predict_cmd->add_option("--in", in, "input CSV")->required();
    predict_cmd->add_option("--I", season_length, "points per season")->required()->check(CLI::PositiveNumber);
    predict_cmd->add_option("--t", t, "columns before the first predicted column")->required();
    predict_cmd->add_option("--S", windows, "number of rolling windows")->required();
    predict_cmd->add_option("--tau", horizon, "columns predicted per window")->required();
    predict_cmd->add_option("--J", seasons_per_window, "seasons per window (default floor((t+tau)/I))");
    predict_args.add_options(predict_cmd);
    predict_cmd->add_option("--out", out, "predictions CSV (a .plot.csv is written alongside)")->required();
    predict_cmd->add_option("--report", report_path, "run report (key: value lines)");
    predict_cmd->add_option("--truth-out", truth_out, "truth over the predicted region, for eval");
    predict_cmd->add_option("--eval-mask-out", eval_mask_out, "scoring mask over the predicted region");

    CLI::App* eval_cmd = app.add_subcommand("eval", "score an estimate on masked entries");
    std::string truth_path, est_path, mask_path, metrics_path;
    eval_cmd->add_option("--truth", truth_path, "ground truth CSV")->required();
    eval_cmd->add_option("--est", est_path, "estimate CSV")->required();
    eval_cmd->add_option("--mask", mask_path, "0/1 CSV of entries to score")->required();
    eval_cmd->add_option("--metrics", metrics_path, "metrics output file");

    for (CLI::App* cmd : {mask_cmd, impute_cmd, predict_cmd, eval_cmd}) {
        cmd->add_option("--delimiter", delimiter, "CSV delimiter (single character)");
        cmd->add_option("--missing-token", missing_token, "cell text treated as unobserved");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        const char delim = single_delimiter(delimiter);
        if (mask_cmd->parsed())
            return run_mask(in, season_length, kind, rate, mask_seed, nm_axis, out,
                            truth_mask_path, delim, missing_token);
        if (impute_cmd->parsed())
            return run_impute(in, season_length, impute_args, out, report_path, delim,
                              missing_token);
        if (predict_cmd->parsed())
            return run_predict(in, season_length, t, windows, horizon, seasons_per_window,
                               predict_args, out, report_path, truth_out, eval_mask_out, delim,
                               missing_token);
        if (eval_cmd->parsed())
            return run_eval(truth_path, est_path, mask_path, metrics_path, delim, missing_token);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace latc
